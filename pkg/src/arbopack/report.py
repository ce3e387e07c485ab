"""Seeded agreement experiments written out as CSV tables and PNG figures.

Outputs depend only on the seed and the counts, never on wall-clock time, so
two runs with the same arguments produce byte-identical files.
"""
from __future__ import annotations

import csv
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .augment import lemma_adjust, min_gamma  # noqa: E402
from .conditions import Certificate, recheck  # noqa: E402
from .generate import PROBLEM_SHAPES, random_lemma_instance, random_problem  # noqa: E402
from .oracles import min_augment_bf  # noqa: E402
from .problems import GAMMA_KINDS, augment_mode, check, oracle, requirements  # noqa: E402

SMALL_KINDS = ("aug-mixed", "aug-mixed-gamma")
PNG_META = {"Software": None}


@dataclass(frozen=True)
class KindRow:
    kind: str
    instances: int
    feasible: int
    agree: int
    certs_exact: int

    @property
    def infeasible(self) -> int:
        return self.instances - self.feasible


def _size(kind: str) -> int:
    return 3 if kind in SMALL_KINDS else 4


def agreement(seed: int, count: int, kinds=None) -> list[KindRow]:
    rows = []
    for j, kind in enumerate(kinds or PROBLEM_SHAPES):
        rng = random.Random(seed * 1009 + j)
        feas = agree = exact = 0
        for _ in range(count):
            H, prob = random_problem(rng, kind, n=_size(kind))
            v = check(H, prob)
            W = oracle(H, prob)
            feas += v.feasible
            agree += v.feasible == (W is not None)
            if not v.feasible:
                exact += _exact(prob, H, v.certificate)
        rows.append(KindRow(kind, count, feas, agree, exact))
    return rows


def _exact(prob, H, cert: Certificate) -> bool:
    lhs, rhs = recheck(prob, H, cert)
    return (lhs, rhs) == (cert.lhs, cert.rhs) and lhs < rhs


def brute_gamma(H, prob, gamma_max: int) -> int | None:
    if prob.kind == "aug-mixed-gamma":
        # the added-arc budget is part of the requirements; scan it directly
        return next((t for t in range(gamma_max + 1)
                     if oracle(H, prob.with_gamma(t)) is not None), None)
    res = min_augment_bf(H, requirements(H, prob), augment_mode(prob), gamma_max,
                         lex_least=False)
    return None if res is None else res.gamma


def gamma_rows(seed: int, count: int, gamma_max: int = 3) -> list[tuple[str, int, object, object]]:
    out = []
    for j, kind in enumerate(GAMMA_KINDS):
        rng = random.Random(seed * 2003 + j)
        for i in range(count):
            H, prob = random_problem(rng, kind, n=_size(kind))
            out.append((kind, i, min_gamma(H, prob, gamma_max), brute_gamma(H, prob, gamma_max)))
    return out


def lemma_rows(seed: int, count: int) -> list[tuple[int, int, int, str, str, int, int, int]]:
    rng = random.Random(seed * 3001)
    out = []
    for i in range(count):
        inst = random_lemma_instance(rng)
        d = lemma_adjust(inst, "descent")
        s = lemma_adjust(inst, "search")
        if isinstance(d, Certificate):
            cases = Counter()
            dv = "infeasible:" + d.condition
        else:
            cases = Counter(t.case for t in d.trace)
            dv = "feasible"
        sv = "infeasible" if isinstance(s, Certificate) else "feasible"
        out.append((i, inst.k, inst.gamma, dv, sv, cases["I"], cases["II"], cases["slack"]))
    return out


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _fmt(x) -> str:
    return "none" if x is None else str(x)


def _plot_agreement(rows: list[KindRow], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(9, 4.5))
    xs = range(len(rows))
    ax.bar(xs, [r.feasible for r in rows], color="#4c72b0", label="feasible")
    ax.bar(xs, [r.infeasible for r in rows], bottom=[r.feasible for r in rows],
           color="#dd8452", label="infeasible")
    for x, r in zip(xs, rows):
        ax.text(x, r.instances + 0.5, f"{100 * r.agree // r.instances}%", ha="center",
                va="bottom", fontsize=7)
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r.kind for r in rows], rotation=60, ha="right", fontsize=8)
    ax.set_ylim(0, max(r.instances for r in rows) * 1.25)
    ax.set_ylabel("instances")
    ax.set_title("checker verdicts (labels: agreement with brute force)")
    ax.legend(frameon=False, ncol=2, loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=PNG_META)
    plt.close(fig)


def _plot_gamma(rows, path: Path, gamma_max: int) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    labels = [str(g) for g in range(gamma_max + 1)] + ["none"]
    width = 0.8 / len(GAMMA_KINDS)
    for j, kind in enumerate(GAMMA_KINDS):
        c = Counter(_fmt(g) for k, _, g, _ in rows if k == kind)
        ax.bar([x + j * width for x in range(len(labels))], [c[lab] for lab in labels],
               width=width, label=kind)
    ax.set_xticks([x + 0.4 - width / 2 for x in range(len(labels))])
    ax.set_xticklabels(labels)
    ax.set_xlabel("least gamma")
    ax.set_ylabel("instances")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=PNG_META)
    plt.close(fig)


def _plot_lemma(rows, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    gammas = sorted({r[2] for r in rows})
    bottom = [0] * len(gammas)
    for col, name, color in ((5, "Case I", "#4c72b0"), (6, "Case II", "#55a868"),
                             (7, "slack", "#c44e52")):
        vals = [sum(r[col] for r in rows if r[2] == g) for g in gammas]
        ax.bar(gammas, vals, bottom=bottom, label=name, color=color)
        bottom = [a + b for a, b in zip(bottom, vals)]
    ax.set_xlabel("gamma")
    ax.set_ylabel("descent rounds")
    ax.set_xticks(gammas)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=PNG_META)
    plt.close(fig)


def write_report(out: Path, seed: int = 0, count: int = 40, lemma_count: int = 200,
                 gamma_max: int = 3) -> dict:
    """Run the experiments and write CSV and PNG files into ``out``; returns a summary."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    agree = agreement(seed, count)
    _write_csv(out / "agreement.csv", ("kind", "instances", "feasible", "agree", "certs_exact"),
               [(r.kind, r.instances, r.feasible, r.agree, r.certs_exact) for r in agree])
    _plot_agreement(agree, out / "agreement.png")

    gam = gamma_rows(seed, count, gamma_max)
    _write_csv(out / "min_gamma.csv", ("kind", "instance", "min_gamma", "brute_force"),
               [(k, i, _fmt(g), _fmt(b)) for k, i, g, b in gam])
    _plot_gamma(gam, out / "min_gamma.png", gamma_max)

    lem = lemma_rows(seed, lemma_count)
    _write_csv(out / "lemma.csv", ("instance", "k", "gamma", "descent", "search", "case_I",
                                   "case_II", "slack"), lem)
    _plot_lemma([r for r in lem if r[3] == "feasible"], out / "lemma.png")

    def same(a, b):
        return a.startswith("feasible") == b.startswith("feasible")

    return {
        "seed": seed,
        "packing_agree": sum(r.agree for r in agree),
        "packing_total": sum(r.instances for r in agree),
        "certs_exact": sum(r.certs_exact for r in agree),
        "certs_total": sum(r.infeasible for r in agree),
        "gamma_agree": sum(g == b for _, _, g, b in gam),
        "gamma_total": len(gam),
        "lemma_agree": sum(same(r[3], r[4]) for r in lem),
        "lemma_total": len(lem),
        "files": sorted(p.name for p in out.iterdir()
                        if p.name.endswith((".csv", ".png"))),
    }
