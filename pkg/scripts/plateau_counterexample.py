"""Overlap functions whose theta has a flat piece: still overlap functions,
never distortions of a positive continuous t-norm.

Scans plateaus [lo, hi] of varying width and reports, for each, the probed
plateau, the representability verdict and the failing axiom of T_sub.
"""
import argparse
from dataclasses import dataclass

from overlapkit import analysis as an
from overlapkit import axioms as ax
from overlapkit import constructors as C


@dataclass
class Config:
    a: float = 1.0
    centre: float = 0.5
    widths: tuple = (0.05, 0.1, 0.2, 0.4)


def plateau_pair(a, lo, hi):
    xs, gs = C.plateau_knots(lo, hi)
    return C.GeneratorPair(C.theta_piecewise(a, xs, gs), C.vartheta_exp(a), a, label=f"plateau[{lo:g},{hi:g}]")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=Config.a)
    cfg = Config(a=ap.parse_args().a)
    print(f"{'plateau':16s} {'overlap':>7s} {'probed':>22s} {'verdict':>32s} {'inner':>10s} {'T4 defect':>10s}")
    for w in cfg.widths:
        lo, hi = cfg.centre - w / 2, cfg.centre + w / 2
        p = plateau_pair(cfg.a, lo, hi)
        ov = ax.check_overlap_axioms(C.build(p)).passed
        rv = an.representability_verdict(p)
        res = an.decompose_distortion(p)
        t4 = res.inner_report["T4"]
        probed = f"[{rv.witness[0]:.4f}, {rv.witness[1]:.4f}]" if rv.witness else "-"
        print(f"[{lo:.3f}, {hi:.3f}]   {str(ov):>7s} {probed:>22s} {rv.verdict:>32s} {res.inner_class:>10s} {t4.witness.defect:10.4f}")


if __name__ == "__main__":
    main()
