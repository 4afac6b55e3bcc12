"""Command-line entry point.

Exit codes: 0 all pass, 1 an axiom or property failed, 2 unknown catalog
entry, 3 malformed input, 4 hypothesis of the requested analysis unmet.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis as an
from . import axioms as ax
from . import constructors as C
from .extmath import probe_strictness
from .specfile import SpecError, load

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_MALFORMED, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4

VERIFY_MODES = ("overlap", "grouping", "tnorm", "tconorm", "pair", "necessary")


class _Malformed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which here means "unknown entry"
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_MALFORMED)


def _common(p: argparse.ArgumentParser, output: str = "json"):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", metavar="NAME", help="catalog entry (see `overlapkit list`)")
    src.add_argument("--spec", metavar="FILE", help="JSON spec file")
    p.add_argument("--a", type=float, default=0.0, help="boundary parameter a (default 0)")
    p.add_argument("--grid-n", type=int, default=ax.PAIR_GRID_N)
    p.add_argument("--tol", type=float, default=ax.DEFAULT_TOL)
    p.add_argument("--output", choices=("json", "human", "csv"), default=output)
    p.add_argument("--dual", action="store_true", help="use the grouping dual of the selected pair")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="overlapkit",
        description="Overlap and grouping functions from additive generator pairs.",
        epilog="catalog entries:\n" + C.catalog_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate the operator at points")
    _common(e, output="human")
    e.add_argument("--x", type=float)
    e.add_argument("--y", type=float)
    e.add_argument("--points", metavar="FILE", help="file of `x,y` lines")

    v = sub.add_parser("verify", help="run an axiom suite")
    _common(v)
    v.add_argument("--as", dest="mode", choices=VERIFY_MODES)

    c = sub.add_parser("classify", help="equivalence, strictness, Archimedean and representability report")
    _common(c)

    d = sub.add_parser("decompose", help="distortion decomposition O = F(T)")
    _common(d)
    d.add_argument("--csv-dir", metavar="DIR", help="write F, phi, H and T_sub samples here")
    d.add_argument("--samples", type=int, default=101)

    g = sub.add_parser("export-grid", help="write x,y,value CSV on a uniform grid")
    _common(g, output="csv")
    g.add_argument("--out", metavar="FILE", help="output file (default stdout)")

    s = sub.add_parser("sweep", help="property sweep over seeded random pairs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--grid-n", type=int, default=ax.PAIR_GRID_N)
    s.add_argument("--tol", type=float, default=ax.DEFAULT_TOL)
    s.add_argument("--output", choices=("json", "human"), default="json")

    sub.add_parser("list", help="list catalog entries")
    return p


def resolve(args):
    """Catalog name or spec file to a pair, dual pair or operator."""
    if args.spec:
        obj = load(args.spec, args.a)
    else:
        try:
            obj = C.catalog(args.catalog, args.a)
        except C.UnknownCatalogEntry:
            raise
        except ValueError as e:
            raise _Malformed(str(e)) from e
    if args.dual:
        if not isinstance(obj, C.GeneratorPair):
            raise _Malformed("--dual needs an overlap pair")
        obj = C.dual_pair(obj)
    return obj


def _check_config(args):
    if getattr(args, "grid_n", 3) < 3:
        raise _Malformed("--grid-n must be at least 3")
    if getattr(args, "tol", 1.0) <= 0:
        raise _Malformed("--tol must be positive")


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report_out(rep: ax.VerificationReport, fmt: str):
    if fmt == "json":
        _emit(rep.to_json())
    elif fmt == "human":
        _emit(ax.human(rep))
    else:
        rows = ["id,verdict,x,y,z,defect"]
        for r in rep.axioms:
            w = r.witness
            vals = ["" if w is None or v is None else f"{v:.17g}" for v in ((w.x, w.y, w.z, w.defect) if w else (None,) * 4)]
            rows.append(",".join([r.id, r.verdict] + vals))
        _emit("\n".join(rows))


# -- commands ---------------------------------------------------------------------


def cmd_eval(args) -> int:
    op = C.build(resolve(args))
    if args.points:
        try:
            pts = np.loadtxt(args.points, delimiter=",", ndmin=2, dtype=float)
        except (OSError, ValueError) as e:
            raise _Malformed(f"cannot read points: {e}") from e
        if pts.shape[1] != 2:
            raise _Malformed("points file needs two columns")
        xs, ys = pts[:, 0], pts[:, 1]
    elif args.x is not None and args.y is not None:
        xs, ys = np.array([args.x]), np.array([args.y])
    else:
        raise _Malformed("eval needs --x and --y, or --points")
    try:
        vals = op(xs, ys)
    except ValueError as e:
        raise _Malformed(str(e)) from e
    if args.output == "json":
        _emit(ax.dumps([{"x": x, "y": y, "value": v} for x, y, v in zip(xs, ys, vals)]))
    elif args.output == "csv":
        _emit("x,y,value\n" + "\n".join(f"{x:.17g},{y:.17g},{v:.17g}" for x, y, v in zip(xs, ys, vals)))
    else:
        _emit("\n".join(repr(float(v)) for v in vals))
    return EXIT_OK


def _verify_report(obj, mode, grid, tol) -> ax.VerificationReport:
    if mode in ("pair", "necessary"):
        if isinstance(obj, C.DualGeneratorPair):
            obj = C.overlap_pair(obj)
        if not isinstance(obj, C.GeneratorPair):
            raise _Malformed(f"--as {mode} needs an additive pair")
        if mode == "pair":
            return ax.check_pair_conditions(obj)
        return ax.check_necessary_conditions(obj, C.build(obj), grid, tol)
    op = C.build(obj)
    fn = {
        "overlap": ax.check_overlap_axioms,
        "grouping": ax.check_grouping_axioms,
        "tnorm": ax.check_tnorm,
        "tconorm": ax.check_tconorm,
    }[mode]
    return fn(op, grid, tol)


def cmd_verify(args) -> int:
    obj = resolve(args)
    mode = args.mode or ("grouping" if isinstance(obj, C.DualGeneratorPair) else "overlap")
    rep = _verify_report(obj, mode, ax.Grid.uniform(args.grid_n), args.tol)
    _report_out(rep, args.output)
    return EXIT_OK if rep.passed else EXIT_FAIL


def classify(obj, grid_n: int = ax.PAIR_GRID_N, tol: float = ax.DEFAULT_TOL) -> dict:
    """The classification bundle as a plain dict, plus a consistency flag."""
    grid = ax.Grid.uniform(grid_n)
    if isinstance(obj, C.DualGeneratorPair):
        suite = an.dual_grouping_suite(obj, grid, tol)
        d = suite.to_dict()
        d["consistent"] = suite.equivalence.mutual_consistency if suite.equivalence else None
        return d
    if isinstance(obj, C.GeneratorPair):
        O = C.build(obj)
        d = {"subject": obj.label, "a": obj.a}
        try:
            eq = an.tnorm_equivalence_report(obj, O, grid, tol)
            d["equivalence"] = eq.to_dict()
            d["consistent"] = eq.mutual_consistency
        except an.HypothesisUnmet as e:
            d["equivalence"] = {"error": f"HypothesisUnmet: {e}"}
            d["consistent"] = None
        d["strictness"] = probe_strictness(obj.theta).to_dict()
        d["archimedean"] = ax.check_archimedean_diagonal(O).to_dict()
        d["representability"] = an.representability_verdict(obj).to_dict()
        return d
    d = {
        "subject": obj.label,
        "tnorm": ax.check_tnorm(obj, grid, tol).to_dict(),
        "tconorm": ax.check_tconorm(obj, grid, tol).to_dict(),
        "archimedean": ax.check_archimedean_diagonal(obj).to_dict(),
    }
    return d


def _human_dict(d, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_human_dict(v, indent + 1))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}:")
            for item in v:
                if isinstance(item, dict):
                    lines.append(f"{pad}  -")
                    lines.append(_human_dict(item, indent + 2))
                else:
                    lines.append(f"{pad}  - {item}")
        elif isinstance(v, float):
            lines.append(f"{pad}{k}: {v:.6g}")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _dict_out(d: dict, fmt: str):
    if fmt == "human":
        _emit(_human_dict(ax.jsonable(d)))
    else:
        _emit(ax.dumps(d))


def cmd_classify(args) -> int:
    d = classify(resolve(args), args.grid_n, args.tol)
    _dict_out(d, args.output)
    return EXIT_FAIL if d.get("consistent") is False else EXIT_OK


def cmd_decompose(args) -> int:
    obj = resolve(args)
    grid = ax.Grid.uniform(args.grid_n)
    if isinstance(obj, C.DualGeneratorPair):
        res = an.mirror_decomposition(an.decompose_distortion(C.overlap_pair(obj), grid), C.build(obj), grid)
    elif isinstance(obj, C.GeneratorPair):
        res = an.decompose_distortion(obj, grid)
    else:
        raise _Malformed("decompose needs an additive pair")
    if args.csv_dir:
        out = Path(args.csv_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "F.csv").write_text(an.sample_csv(res.F, args.samples), encoding="utf-8")
        (out / "T_sub.csv").write_text(an.grid_csv(res.inner, min(args.samples, 101)), encoding="utf-8")
        if res.phi is not None:
            (out / "phi.csv").write_text(an.sample_csv(res.phi, args.samples), encoding="utf-8")
            (out / "H.csv").write_text(an.sample_csv(res.H, args.samples), encoding="utf-8")
    _dict_out(res.to_dict(), args.output)
    return EXIT_OK


def cmd_export_grid(args) -> int:
    text = an.grid_csv(C.build(resolve(args)), args.grid_n)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def sweep(seed: int, count: int, grid_n: int = ax.PAIR_GRID_N, tol: float = ax.DEFAULT_TOL) -> dict:
    """Random valid pairs: overlap axioms, necessary conditions, equivalence agreement."""
    rng = np.random.default_rng(seed)
    grid = ax.Grid.uniform(grid_n)
    rows, ok = [], True
    for _ in range(count):
        pair = C.random_pair(rng)
        O = C.build(pair)
        ov = ax.check_overlap_axioms(O, grid, tol)
        nec = ax.check_necessary_conditions(pair, O, grid, tol)
        eq = an.tnorm_equivalence_report(pair, O, grid, tol)
        row = {
            "subject": pair.label,
            "overlap": ov.passed,
            "necessary": nec.passed,
            "equivalence": eq.verdicts,
            "consistent": eq.mutual_consistency,
        }
        ok &= ov.passed and nec.passed and eq.mutual_consistency
        rows.append(row)
    return {"seed": seed, "count": count, "all_ok": ok, "pairs": rows}


def cmd_sweep(args) -> int:
    if args.count < 0:
        raise _Malformed("--count must be non-negative")
    d = sweep(args.seed, args.count, args.grid_n, args.tol)
    _dict_out(d, args.output)
    return EXIT_OK if d["all_ok"] else EXIT_FAIL


def cmd_list(args) -> int:
    _emit(C.catalog_help())
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "export-grid": cmd_export_grid,
    "sweep": cmd_sweep,
    "list": cmd_list,
}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        _check_config(args)
        return COMMANDS[args.command](args)
    except C.UnknownCatalogEntry as e:
        print(f"unknown catalog entry: {e.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (SpecError, _Malformed) as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except an.HypothesisUnmet as e:
        print(f"HypothesisUnmet: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except an.ReconstructionFailed as e:
        print(f"ReconstructionFailed: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
