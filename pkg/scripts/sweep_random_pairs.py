"""Sweep seeded random generator pairs and tabulate every verdict.

    python3 scripts/sweep_random_pairs.py --count 50 --seed 0 --out results/sweep.json
"""
import argparse
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from overlapkit import analysis as an
from overlapkit import axioms as ax
from overlapkit import constructors as C


@dataclass
class SweepConfig:
    seed: int = 0
    count: int = 50
    grid_n: int = 101
    tol: float = 1e-7
    plateau_every: int = 5  # every k-th pair gets a flat piece in theta


def run(cfg: SweepConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    grid = ax.Grid.uniform(cfg.grid_n)
    rows = []
    for i in range(cfg.count):
        plateau = cfg.plateau_every > 0 and i % cfg.plateau_every == cfg.plateau_every - 1
        p = C.random_pair(rng, plateau=plateau)
        O = C.build(p)
        eq = an.tnorm_equivalence_report(p, O, grid, cfg.tol)
        dec = an.decompose_distortion(p, grid)
        rows.append(
            {
                "pair": p.label,
                "overlap": ax.check_overlap_axioms(O, grid, cfg.tol).passed,
                "necessary": ax.check_necessary_conditions(p, O, grid, cfg.tol).passed,
                "tnorm": eq.verdicts["is_tnorm"],
                "consistent": eq.mutual_consistency,
                "inner": dec.inner_class,
                "reconstruction_error": dec.reconstruction_error,
                "representability": an.representability_verdict(p).verdict,
            }
        )
    return {"config": asdict(cfg), "rows": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--count", type=int, default=SweepConfig.count)
    ap.add_argument("--grid-n", type=int, default=SweepConfig.grid_n)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    t0 = time.perf_counter()
    res = run(SweepConfig(seed=a.seed, count=a.count, grid_n=a.grid_n))
    rows = res["rows"]
    print(f"{'pair':34s} {'ovl':>4s} {'nec':>4s} {'tnorm':>6s} {'cons':>5s} {'inner':>14s} {'err':>9s}  representability")
    for r in rows:
        print(
            f"{r['pair']:34s} {str(r['overlap'])[0]:>4s} {str(r['necessary'])[0]:>4s} {r['tnorm']:>6s} "
            f"{str(r['consistent'])[0]:>5s} {r['inner']:>14s} {r['reconstruction_error']:9.2e}  {r['representability']}"
        )
    bad = [r for r in rows if not (r["overlap"] and r["necessary"] and r["consistent"])]
    print(f"\n{len(rows)} pairs, {len(bad)} violations, {time.perf_counter() - t0:.1f} s")
    if a.out:
        a.out.parent.mkdir(parents=True, exist_ok=True)
        a.out.write_text(ax.dumps(res) + "\n")


if __name__ == "__main__":
    main()
