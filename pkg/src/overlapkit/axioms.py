"""Grid-based verification of overlap, grouping, t-norm and t-conorm axioms.

Every check returns verdicts rather than raising.  A ``fail`` always
carries a witness that reproduces the violation when re-evaluated; ties
between equally bad witnesses are broken lexicographically on the grid
coordinates so that reports are deterministic.
"""
from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np

from .constructors import OP_SLACK, BivariateOp, GeneratorPair
from .extmath import TAU_MONO, TAU_PLATEAU, INF, decompactify

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

DEFAULT_TOL = 1e-7
PAIR_GRID_N = 101
TRIPLE_GRID_N = 51
ZOOM_STEPS = 20
ZOOM_CELLS = 8


# -- plumbing -----------------------------------------------------------------


def n_workers() -> int:
    """Thread cap from ``OVERLAPKIT_THREADS`` (0 or unset means automatic)."""
    try:
        n = int(os.environ.get("OVERLAPKIT_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else min(8, os.cpu_count() or 1)


def _chunked(fn, n: int):
    """Apply ``fn(slice)`` over ``range(n)`` in chunks; results stay in order."""
    w = min(n_workers(), n)
    bounds = np.linspace(0, n, w + 1).astype(int)
    slices = [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    if len(slices) == 1:
        return [fn(slices[0])]
    with ThreadPoolExecutor(max_workers=len(slices)) as pool:
        return list(pool.map(fn, slices))


def jsonable(v):
    """Floats stay floats (shortest round-trip); non-finite become strings."""
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False)


@dataclass(frozen=True, eq=False)
class Grid:
    """Sorted sample of ``[0, 1]`` containing both endpoints."""

    points: np.ndarray
    refinement_depth: int = 0

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 1 or p.size < 3:
            raise ValueError("a grid needs at least 3 points")
        if p[0] != 0.0 or p[-1] != 1.0 or np.any(np.diff(p) <= 0):
            raise ValueError("grid points must increase strictly from 0 to 1")
        object.__setattr__(self, "points", p)

    @classmethod
    def uniform(cls, n: int = PAIR_GRID_N) -> "Grid":
        if n < 3:
            raise ValueError("grid n must be >= 3")
        return cls(np.linspace(0.0, 1.0, n))

    @property
    def n(self) -> int:
        return int(self.points.size)

    @property
    def step(self) -> float:
        return float(np.max(np.diff(self.points)))

    def refined(self) -> "Grid":
        p = self.points
        mids = 0.5 * (p[:-1] + p[1:])
        out = np.empty(2 * p.size - 1)
        out[0::2], out[1::2] = p, mids
        return Grid(out, self.refinement_depth + 1)

    def coarsened(self, n: int) -> "Grid":
        return self if self.n <= n else Grid.uniform(n)

    def mesh(self):
        return np.meshgrid(self.points, self.points, indexing="ij")


def _grid(grid) -> Grid:
    if grid is None:
        return Grid.uniform()
    if isinstance(grid, int):
        return Grid.uniform(grid)
    return grid


@dataclass(frozen=True)
class Witness:
    x: float
    lhs: float
    rhs: float
    defect: float
    y: Optional[float] = None
    z: Optional[float] = None

    def to_dict(self) -> dict:
        d = {"x": self.x}
        if self.y is not None:
            d["y"] = self.y
        if self.z is not None:
            d["z"] = self.z
        d.update(lhs=self.lhs, rhs=self.rhs, defect=self.defect)
        return d


@dataclass(frozen=True)
class AxiomResult:
    id: str
    verdict: str
    tol: float
    witness: Optional[Witness] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_dict(self) -> dict:
        d = {"id": self.id, "verdict": self.verdict}
        d["witness"] = self.witness.to_dict() if self.witness else None
        d["tol"] = self.tol
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    subject: str
    axioms: List[AxiomResult]
    grid_n: Optional[int] = None
    wall_time: float = 0.0
    vacuous: bool = False

    def __getitem__(self, axiom_id: str) -> AxiomResult:
        for r in self.axioms:
            if r.id == axiom_id:
                return r
        raise KeyError(axiom_id)

    def verdict(self, axiom_id: str) -> str:
        return self[axiom_id].verdict

    @property
    def ids(self) -> List[str]:
        return [r.id for r in self.axioms]

    @property
    def passed(self) -> bool:
        """No axiom failed (inconclusive counts as not failed)."""
        return not self.vacuous and not any(r.failed for r in self.axioms)

    @property
    def all_pass(self) -> bool:
        return not self.vacuous and all(r.passed for r in self.axioms)

    def failures(self) -> List[AxiomResult]:
        return [r for r in self.axioms if r.failed]

    def to_dict(self) -> dict:
        # wall time is deliberately left out: serialised reports must be reproducible
        d = {"subject": self.subject, "grid": {"n": self.grid_n}, "axioms": [r.to_dict() for r in self.axioms]}
        if self.vacuous:
            d["vacuous"] = True
        return d

    def to_json(self) -> str:
        return dumps(self.to_dict())


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# -- witness selection --------------------------------------------------------


def _pick(mask: np.ndarray, score: np.ndarray):
    """Index of the highest ``score`` inside ``mask``; first in C order on ties."""
    s = np.where(mask, score, -np.inf)
    return np.unravel_index(int(np.argmax(s)), s.shape)


def _w2(X, Y, idx, lhs, rhs, defect=None) -> Witness:
    lhs, rhs = float(lhs), float(rhs)
    return Witness(
        x=float(X[idx]),
        y=float(Y[idx]),
        lhs=lhs,
        rhs=rhs,
        defect=float(abs(lhs - rhs) if defect is None else defect),
    )


# -- individual axioms ----------------------------------------------------------


def _commutativity(aid, V, X, Y, tol) -> AxiomResult:
    D = np.abs(V - V.T)
    idx = _pick(np.ones_like(D, dtype=bool), D)
    w = _w2(X, Y, idx, V[idx], V.T[idx])
    return AxiomResult(aid, PASS if D[idx] <= tol else FAIL, tol, w)


def _monotonicity(aid, V, X, Y, tol) -> AxiomResult:
    dx = V[1:, :] - V[:-1, :]
    dy = V[:, 1:] - V[:, :-1]
    ix = _pick(np.ones_like(dx, dtype=bool), -dx)
    iy = _pick(np.ones_like(dy, dtype=bool), -dy)
    if -dx[ix] >= -dy[iy]:
        w = _w2(X, Y, ix, V[ix], V[ix[0] + 1, ix[1]], -dx[ix])
        note, worst = "next point along x", -dx[ix]
    else:
        w = _w2(X, Y, iy, V[iy], V[iy[0], iy[1] + 1], -dy[iy])
        note, worst = "next point along y", -dy[iy]
    worst = float(worst)
    if worst <= 0:
        w = replace(w, defect=0.0)
    return AxiomResult(aid, PASS if worst <= tol else FAIL, tol, w, note if worst > tol else "")


def _axis_set(aid, op, grid, V, X, Y, target, tol) -> AxiomResult:
    """``op = target`` exactly when some argument is at the ``target`` edge.

    ``target = 0`` is the overlap zero set (axes), ``target = 1`` the
    grouping one set (top/right edges).  Interior hits are hard failures;
    near-hits beside the edges trigger one refinement of that band.
    """
    CX, CY = (X, Y) if target == 0 else (1.0 - X, 1.0 - Y)
    D = np.abs(V - target)
    edge = (CX == 0) | (CY == 0)
    if np.any(D[edge] > OP_SLACK):
        idx = _pick(edge, D)
        return AxiomResult(aid, FAIL, tol, _w2(X, Y, idx, V[idx], target), "edge value differs from target")
    inner = ~edge
    hits = inner & (D == 0)
    if np.any(hits):
        dist = np.minimum(CX, CY)
        idx = _pick(hits, dist)
        return AxiomResult(aid, FAIL, tol, _w2(X, Y, idx, V[idx], target, dist[idx]), "target attained off the edges")
    h = grid.step
    near = inner & (D < tol) & (np.minimum(CX, CY) <= h)
    if np.any(near):
        fine = grid.refined()
        FX, FY = fine.mesh()
        FCX, FCY = (FX, FY) if target == 0 else (1.0 - FX, 1.0 - FY)
        band = (np.minimum(FCX, FCY) <= h) & (FCX > 0) & (FCY > 0)
        FV = op(FX[band], FY[band])
        fhits = np.abs(FV - target) == 0
        if np.any(fhits):
            dist = np.minimum(FCX[band], FCY[band])
            k = _pick(fhits, dist)
            w = Witness(x=float(FX[band][k]), y=float(FY[band][k]), lhs=float(FV[k]), rhs=float(target), defect=float(dist[k]))
            return AxiomResult(aid, FAIL, tol, w, "target attained off the edges after refinement")
        return AxiomResult(aid, PASS, tol, note="near-edge values stayed off target under refinement")
    return AxiomResult(aid, PASS, tol)


def _corner_set(aid, V, X, Y, target, h, tol) -> AxiomResult:
    """``op = target`` only at the corner ``(target, target)``.

    Exact hits anywhere else fail.  Values within ``tol`` of the target fail
    too, except in the one-cell band around the corner where continuity
    forces them.
    """
    CX, CY = (1.0 - X, 1.0 - Y) if target == 1 else (X, Y)
    D = np.abs(V - target)
    corner = (CX == 0) & (CY == 0)
    cidx = np.unravel_index(int(np.argmax(corner)), corner.shape)
    if D[cidx] > tol:
        return AxiomResult(aid, FAIL, tol, _w2(X, Y, cidx, V[cidx], target), "corner value differs from target")
    band = (CX <= h) & (CY <= h)
    bad = (~corner & (D == 0)) | (~band & (D <= tol))
    if np.any(bad):
        dist = np.maximum(CX, CY)
        idx = _pick(bad, dist)
        return AxiomResult(aid, FAIL, tol, _w2(X, Y, idx, V[idx], target, dist[idx]), "target attained away from the corner")
    return AxiomResult(aid, PASS, tol)


def _zoom(op, x0, x1, y0, y1, steps=ZOOM_STEPS):
    """Follow the larger half of a cell's increment ``steps`` times."""
    v0, v1 = float(op(x0, y0)), float(op(x1, y1))
    for _ in range(steps):
        xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        vm = float(op(xm, ym))
        if abs(vm - v0) >= abs(v1 - vm):
            x1, y1, v1 = xm, ym, vm
        else:
            x0, y0, v0 = xm, ym, vm
    return abs(v1 - v0), x0, y0


def _continuity(aid, op, V, X, Y, tol) -> AxiomResult:
    """Heuristic: the worst cell increments must at least halve when zoomed in.

    A jump discontinuity keeps its size under zooming; a continuous function
    (even one with a logarithmic modulus) does not.  Never a ``fail``.
    """
    jx = np.abs(V[1:, :] - V[:-1, :])
    jy = np.abs(V[:, 1:] - V[:, :-1])
    cells = [(float(jx[i, j]), 0, i, j) for i, j in zip(*np.nonzero(jx >= 0))]
    cells += [(float(jy[i, j]), 1, i, j) for i, j in zip(*np.nonzero(jy >= 0))]
    cells.sort(key=lambda c: (-c[0], c[1], c[2], c[3]))
    worst = None
    for jump, axis, i, j in cells[:ZOOM_CELLS]:
        if jump <= tol:
            break
        if axis == 0:
            end, x0, y0 = _zoom(op, X[i, j], X[i + 1, j], Y[i, j], Y[i, j])
        else:
            end, x0, y0 = _zoom(op, X[i, j], X[i, j], Y[i, j], Y[i, j + 1])
        if end > max(0.5 * jump, tol):
            w = Witness(x=float(x0), y=float(y0), lhs=jump, rhs=end, defect=end)
            if worst is None or end > worst.defect:
                worst = w
    if worst is not None:
        return AxiomResult(aid, INCONCLUSIVE, tol, worst, "cell increment did not shrink under zooming")
    return AxiomResult(aid, PASS, tol, note="heuristic")


def _evaluate(op: BivariateOp, grid: Grid):
    X, Y = grid.mesh()
    return X, Y, np.asarray(op(X, Y), dtype=float)


# -- public checks --------------------------------------------------------------


def check_overlap_axioms(O: BivariateOp, grid=None, tol: float = DEFAULT_TOL, mono_tol: float = TAU_MONO) -> VerificationReport:
    """Verdicts for O1 (commutative), O2 (zero set = axes), O3 (one set =
    {(1,1)}), O4 (increasing) and O5 (continuity heuristic)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = _grid(grid)
    with _Timer() as t:
        X, Y, V = _evaluate(O, grid)
        results = [
            _commutativity("O1", V, X, Y, tol),
            _axis_set("O2", O, grid, V, X, Y, 0.0, tol),
            _corner_set("O3", V, X, Y, 1.0, grid.step, tol),
            _monotonicity("O4", V, X, Y, mono_tol),
            _continuity("O5", O, V, X, Y, tol),
        ]
    return VerificationReport(O.label, results, grid.n, t.elapsed)


def check_grouping_axioms(G: BivariateOp, grid=None, tol: float = DEFAULT_TOL, mono_tol: float = TAU_MONO) -> VerificationReport:
    """Verdicts for G1..G5; G2 and G3 are the dual zero and one sets."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = _grid(grid)
    with _Timer() as t:
        X, Y, V = _evaluate(G, grid)
        results = [
            _commutativity("G1", V, X, Y, tol),
            _corner_set("G2", V, X, Y, 0.0, grid.step, tol),
            _axis_set("G3", G, grid, V, X, Y, 1.0, tol),
            _monotonicity("G4", V, X, Y, mono_tol),
            _continuity("G5", G, V, X, Y, tol),
        ]
    return VerificationReport(G.label, results, grid.n, t.elapsed)


def _triple_defect(B: BivariateOp, pts: np.ndarray):
    n = pts.size

    def chunk(sl):
        X, Y, Z = np.meshgrid(pts[sl], pts, pts, indexing="ij")
        left = B(B(X, Y), Z)
        right = B(X, B(Y, Z))
        return left, right

    parts = _chunked(chunk, n)
    left = np.concatenate([p[0] for p in parts], axis=0)
    right = np.concatenate([p[1] for p in parts], axis=0)
    return left, right


def check_associativity(B: BivariateOp, grid=None, tol: float = DEFAULT_TOL, aid: str = "associativity") -> AxiomResult:
    """Largest ``|B(B(x,y),z) - B(x,B(y,z))|`` over all grid triples."""
    grid = _grid(grid if grid is not None else TRIPLE_GRID_N)
    p = grid.points
    left, right = _triple_defect(B, p)
    D = np.abs(left - right)
    i, j, k = np.unravel_index(int(np.argmax(D)), D.shape)
    w = Witness(
        x=float(p[i]), y=float(p[j]), z=float(p[k]), lhs=float(left[i, j, k]), rhs=float(right[i, j, k]), defect=float(D[i, j, k])
    )
    return AxiomResult(aid, PASS if D[i, j, k] <= tol else FAIL, tol, w)


def check_neutral(B: BivariateOp, e: float, grid=None, tol: float = DEFAULT_TOL, aid: Optional[str] = None) -> AxiomResult:
    """Largest ``|B(x,e) - x|`` (and ``|B(e,x) - x|``) over grid ``x``."""
    grid = _grid(grid)
    x = grid.points
    ev = np.full_like(x, float(e))
    right, left = B(x, ev), B(ev, x)
    dr, dl = np.abs(right - x), np.abs(left - x)
    D = np.maximum(dr, dl)
    i = int(np.argmax(D))
    lhs = right[i] if dr[i] >= dl[i] else left[i]
    w = Witness(x=float(x[i]), y=float(e), lhs=float(lhs), rhs=float(x[i]), defect=float(D[i]))
    return AxiomResult(aid or f"neutral-{e:g}", PASS if D[i] <= tol else FAIL, tol, w)


def _no_zero_divisors(aid, V, X, Y, target, tol):
    CX, CY = (X, Y) if target == 0 else (1.0 - X, 1.0 - Y)
    hits = (CX > 0) & (CY > 0) & (np.abs(V - target) == 0)
    if np.any(hits):
        dist = np.minimum(CX, CY)
        idx = _pick(hits, dist)
        return AxiomResult(aid, FAIL, tol, _w2(X, Y, idx, V[idx], target, dist[idx]))
    return AxiomResult(aid, PASS, tol)


def _bound(aid, V, X, Y, upper: bool, tol):
    B = np.minimum(X, Y) if upper else np.maximum(X, Y)
    excess = V - B if upper else B - V
    idx = _pick(np.ones_like(V, dtype=bool), excess)
    return AxiomResult(aid, PASS if excess[idx] <= tol else FAIL, tol, _w2(X, Y, idx, V[idx], B[idx], max(0.0, excess[idx])))


def _norm_report(B, grid, tol, mono_tol, conorm: bool) -> VerificationReport:
    grid = _grid(grid)
    p = "S" if conorm else "T"
    e = 0.0 if conorm else 1.0
    with _Timer() as t:
        X, Y, V = _evaluate(B, grid)
        results = [
            _commutativity(f"{p}1", V, X, Y, tol),
            check_associativity(B, grid.coarsened(TRIPLE_GRID_N), tol, aid=f"{p}2"),
            _monotonicity(f"{p}3", V, X, Y, mono_tol),
            check_neutral(B, e, grid, tol, aid=f"{p}4"),
            _no_zero_divisors("positivity", V, X, Y, 1.0 if conorm else 0.0, tol),
            _bound("superconorm-bound" if conorm else "subnorm-bound", V, X, Y, not conorm, tol),
        ]
    return VerificationReport(B.label, results, grid.n, t.elapsed)


NORM_AXIOMS = ("T1", "T2", "T3", "T4")
CONORM_AXIOMS = ("S1", "S2", "S3", "S4")


def check_tnorm(T: BivariateOp, grid=None, tol: float = DEFAULT_TOL, mono_tol: float = TAU_MONO) -> VerificationReport:
    """T1..T4, positivity (no zero divisors) and the t-subnorm bound ``T <= min``.

    Associativity is scanned on at most a 51-point grid (cubic cost).
    """
    return _norm_report(T, grid, tol, mono_tol, conorm=False)


def check_tconorm(S: BivariateOp, grid=None, tol: float = DEFAULT_TOL, mono_tol: float = TAU_MONO) -> VerificationReport:
    """S1..S4 (neutral element 0), positivity and the bound ``S >= max``."""
    return _norm_report(S, grid, tol, mono_tol, conorm=True)


def is_tnorm(report: VerificationReport) -> bool:
    return all(report[a].passed for a in NORM_AXIOMS)


def is_tconorm(report: VerificationReport) -> bool:
    return all(report[a].passed for a in CONORM_AXIOMS)


def check_archimedean_diagonal(T: BivariateOp, x: float = 0.5, n_max: int = 200, eps: float = 1e-6) -> AxiomResult:
    """Iterate ``x_{k+1} = T(x_k, x)``; pass once some ``x_k < eps``."""
    if not 0 < x < 1:
        raise ValueError("x must lie strictly between 0 and 1")
    xk = float(x)
    for k in range(1, n_max + 1):
        if xk < eps:
            return AxiomResult("archimedean-diagonal", PASS, eps, Witness(x=x, lhs=xk, rhs=eps, defect=0.0), f"n={k}")
        if k < n_max:
            xk = float(T(xk, x))
    return AxiomResult(
        "archimedean-diagonal", FAIL, eps, Witness(x=x, lhs=xk, rhs=eps, defect=xk - eps), f"stagnates at {xk!r} after n={n_max}"
    )


# -- generator pair conditions --------------------------------------------------


def u_grid(a: float, n: int = PAIR_GRID_N) -> np.ndarray:
    """Sample of ``[0, inf]``: ``[0, a]``, ``(a, 2a]`` and a compactified tail."""
    parts = [np.array([0.0])]
    if a > 0:
        parts += [np.linspace(0.0, a, n), a * (1.0 + np.linspace(0.0, 1.0, n)[1:])]
    tail = np.linspace(0.0, 1.0, n)[1:]
    parts += [a + decompactify(tail)]
    return np.unique(np.concatenate(parts))


def theta_conditions(theta, a: float, n: int = PAIR_GRID_N, tol: float = 1e-9, tau: float = TAU_PLATEAU) -> List[AxiomResult]:
    """Conditions (1) ``theta(x) = inf iff x = 0`` and (2) ``theta(x) = a/2 iff x = 1``."""
    x = np.linspace(0.0, 1.0, n)
    v = np.asarray(theta(x), dtype=float)
    out = []
    if not math.isinf(v[0]):
        out.append(AxiomResult("cond-1", FAIL, tol, Witness(x=0.0, lhs=float(v[0]), rhs=INF, defect=INF), "theta(0) finite"))
    elif np.any(np.isinf(v[1:])):
        i = 1 + int(np.argmax(np.isinf(v[1:])))
        out.append(AxiomResult("cond-1", FAIL, tol, Witness(x=float(x[i]), lhs=INF, rhs=INF, defect=float(x[i])), "theta infinite off 0"))
    else:
        out.append(AxiomResult("cond-1", PASS, tol))
    half = a / 2
    if abs(v[-1] - half) > tol:
        w = Witness(x=1.0, lhs=float(v[-1]), rhs=half, defect=float(abs(v[-1] - half)))
        out.append(AxiomResult("cond-2", FAIL, tol, w, "theta(1) != a/2"))
    else:
        low = v[:-1] <= half + tau
        if np.any(low):
            i = int(np.argmax(low))
            w = Witness(x=float(x[i]), lhs=float(v[i]), rhs=half, defect=float(1.0 - x[i]))
            out.append(AxiomResult("cond-2", FAIL, tol, w, "theta reaches a/2 before x = 1"))
        else:
            out.append(AxiomResult("cond-2", PASS, tol))
    return out


def vartheta_conditions(vartheta, a: float, n: int = PAIR_GRID_N, tol: float = 1e-9, tau: float = TAU_PLATEAU) -> List[AxiomResult]:
    """Conditions (3) ``vartheta = 1 iff u in [0, a]`` and (4) ``vartheta = 0 iff u = inf``."""
    u = u_grid(a, n)
    v = np.asarray(vartheta(u), dtype=float)
    out = []
    inside = u <= a
    short = inside & (v < 1 - tol)
    if np.any(short):
        i = int(np.argmax(np.where(short, 1 - v, -1)))
        w = Witness(x=float(u[i]), lhs=float(v[i]), rhs=1.0, defect=float(1 - v[i]))
        out.append(AxiomResult("cond-3", FAIL, tol, w, "vartheta < 1 inside [0, a]"))
    else:
        ones = ~inside & (v >= 1 - tau)
        if np.any(ones):
            i = int(np.flatnonzero(ones)[-1])
            w = Witness(x=float(u[i]), lhs=float(v[i]), rhs=1.0, defect=float(u[i] - a))
            out.append(AxiomResult("cond-3", FAIL, tol, w, "vartheta = 1 beyond a"))
        else:
            out.append(AxiomResult("cond-3", PASS, tol))
    if v[-1] != 0.0:
        out.append(AxiomResult("cond-4", FAIL, tol, Witness(x=INF, lhs=float(v[-1]), rhs=0.0, defect=float(v[-1])), "vartheta(inf) != 0"))
    else:
        zero = v[:-1] == 0.0
        if np.any(zero):
            i = int(np.argmax(zero))
            out.append(AxiomResult("cond-4", FAIL, tol, Witness(x=float(u[i]), lhs=0.0, rhs=0.0, defect=float(1.0 / (1.0 + u[i]))), "vartheta = 0 at finite u"))
        else:
            out.append(AxiomResult("cond-4", PASS, tol))
    return out


def check_pair_conditions(pair: GeneratorPair, n: int = PAIR_GRID_N, tol: float = 1e-9) -> VerificationReport:
    """The four sufficient conditions on ``(theta, vartheta)`` for parameter ``a``,
    each checked in both directions on grids."""
    with _Timer() as t:
        results = theta_conditions(pair.theta, pair.a, n, tol) + vartheta_conditions(pair.vartheta, pair.a, n, tol)
    return VerificationReport(pair.label, results, n, t.elapsed)


def check_necessary_conditions(pair: GeneratorPair, O: BivariateOp, grid=None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``theta(x) = inf iff x = 0`` and ``vartheta(u) = 0 iff u = inf``.

    These must hold for every pair generating an overlap function, so the
    report is only meaningful when ``O`` passes the overlap axioms;
    otherwise it is marked vacuous.
    """
    grid = _grid(grid)
    with _Timer() as t:
        gate = check_overlap_axioms(O, grid, tol)
        if not gate.passed:
            results = [
                AxiomResult("necessary-i", INCONCLUSIVE, tol, note="operator is not an overlap function"),
                AxiomResult("necessary-ii", INCONCLUSIVE, tol, note="operator is not an overlap function"),
            ]
            return VerificationReport(pair.label, results, grid.n, 0.0, vacuous=True)
        c1 = theta_conditions(pair.theta, pair.a, grid.n)[0]
        c4 = vartheta_conditions(pair.vartheta, pair.a, grid.n)[1]
        results = [
            AxiomResult("necessary-i", c1.verdict, c1.tol, c1.witness, c1.note),
            AxiomResult("necessary-ii", c4.verdict, c4.tol, c4.witness, c4.note),
        ]
    return VerificationReport(pair.label, results, grid.n, t.elapsed)


def human(report: VerificationReport) -> str:
    """Plain-text rendering with witnesses at 6 significant digits."""
    lines = [f"{report.subject}  (grid n={report.grid_n})" + ("  [vacuous]" if report.vacuous else "")]
    for r in report.axioms:
        line = f"  {r.id:18s} {r.verdict}"
        if r.witness is not None and not r.passed:
            w = r.witness
            coords = ", ".join(f"{k}={v:.6g}" for k, v in (("x", w.x), ("y", w.y), ("z", w.z)) if v is not None)
            line += f"  at {coords}: lhs={w.lhs:.6g} rhs={w.rhs:.6g} defect={w.defect:.6g}"
        if r.note and not r.passed:
            line += f"  ({r.note})"
        lines.append(line)
    return "\n".join(lines)
