"""Extended non-negative reals, monotone unary functions and pseudo-inverses.

Values of ``[0, inf]`` are plain floats; ``math.inf`` is the point at
infinity.  Every evaluator works elementwise on numpy arrays so that grid
sweeps stay vectorised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Literal, Optional, Tuple

import numpy as np

INF = math.inf

TAU_MONO = 1e-9
TAU_PLATEAU = 1e-9
DEFAULT_PINV_TOL = 1e-12
MAX_BISECTIONS = 200
# rounding slack tolerated when an evaluator lands just outside its codomain
EVAL_SLACK = 1e-12

Direction = Literal["increasing", "decreasing"]


class NonMonotoneDetected(ValueError):
    """A function declared monotone was found to violate its direction."""


def ext_value(x) -> float:
    """Validate ``x`` as a member of ``[0, inf]`` and return it as a float."""
    v = float(x)
    if math.isnan(v) or v < 0:
        raise ValueError(f"not an extended non-negative real: {x!r}")
    return v


def ext_add(x, y):
    """Total addition on ``[0, inf]``: anything plus ``inf`` is ``inf``.

    Accepts scalars or arrays.  IEEE addition already absorbs into ``inf``
    and never produces NaN for non-negative operands, so the work here is
    rejecting inputs outside the set.
    """
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return ext_value(x) + ext_value(y)
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any(np.isnan(xa)) or np.any(np.isnan(ya)) or np.any(xa < 0) or np.any(ya < 0):
        raise ValueError("ext_add operands must lie in [0, inf]")
    return xa + ya


def compactify(u):
    """Map ``[0, inf]`` onto ``[0, 1]`` with ``u/(1+u)`` and ``inf -> 1``."""
    u = np.asarray(u, dtype=float)
    with np.errstate(invalid="ignore"):
        s = u / (1.0 + u)
    return np.where(np.isinf(u), 1.0, s)


def decompactify(s):
    """Inverse of :func:`compactify`."""
    s = np.asarray(s, dtype=float)
    with np.errstate(divide="ignore"):
        u = s / (1.0 - s)
    return np.where(s >= 1.0, INF, u)


def _to_coord(x, domain):
    return compactify(x) if math.isinf(domain[1]) else np.asarray(x, dtype=float)


def _from_coord(s, domain):
    return decompactify(s) if math.isinf(domain[1]) else np.asarray(s, dtype=float)


@dataclass(frozen=True)
class UnaryMonotone:
    """A continuous monotone map between closed intervals of ``[0, inf]``.

    ``fn`` must accept a float array and return an array of the same shape.
    Evaluation clamps results lying within ``EVAL_SLACK`` of the codomain
    and raises on anything further out.
    """

    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    direction: Direction
    domain: Tuple[float, float] = (0.0, 1.0)
    codomain: Tuple[float, float] = (0.0, 1.0)
    label: str = ""

    def __post_init__(self):
        if self.direction not in ("increasing", "decreasing"):
            raise ValueError(f"bad direction {self.direction!r}")
        for lo, hi in (self.domain, self.codomain):
            if not (0.0 <= lo < hi):
                raise ValueError(f"bad interval ({lo}, {hi})")

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if np.any(np.isnan(xa)) or np.any(xa < lo) or np.any(xa > hi):
            raise ValueError(f"{self.label or 'function'}: argument outside domain {self.domain}")
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            v = np.asarray(self.fn(xa), dtype=float)
        v = np.broadcast_to(v, xa.shape)
        clo, chi = self.codomain
        if np.any(np.isnan(v)) or np.any(v < clo - EVAL_SLACK) or np.any(v > chi + EVAL_SLACK):
            bad = np.asarray(xa)[np.isnan(v) | (v < clo - EVAL_SLACK) | (v > chi + EVAL_SLACK)]
            raise ValueError(
                f"{self.label or 'function'}: value outside codomain {self.codomain} at x={bad.ravel()[:3]}"
            )
        v = np.clip(v, clo, chi)
        return float(v) if np.ndim(x) == 0 else v

    @property
    def increasing(self) -> bool:
        return self.direction == "increasing"

    def shifted(self, c: float, label: Optional[str] = None) -> "UnaryMonotone":
        """``x -> f(x) + c`` (only for codomains inside ``[0, inf]``)."""
        fn = self.fn
        c = ext_value(c)
        lo, hi = self.codomain
        return replace(
            self,
            fn=lambda x: fn(x) + c,
            codomain=(lo + c, hi + c),
            label=label or f"{self.label}+{c:g}",
        )

    def coord_grid(self, n: int) -> np.ndarray:
        """``n`` domain points, uniform in the bisection coordinate."""
        s0, s1 = (float(v) for v in _to_coord(np.array(self.domain), self.domain))
        return _from_coord(np.linspace(s0, s1, n), self.domain)


def check_monotone(f: UnaryMonotone, n: int = 257, tol: float = TAU_MONO) -> None:
    """Probe ``f`` on ``n`` points and raise :class:`NonMonotoneDetected`."""
    xs = f.coord_grid(n)
    ys = f(xs)
    with np.errstate(invalid="ignore"):
        d = np.diff(ys)
    d = np.where(np.isnan(d), 0.0, d)  # inf - inf: equal values
    if not f.increasing:
        d = -d
    if np.any(d < -tol):
        i = int(np.argmin(d))
        raise NonMonotoneDetected(
            f"{f.label or 'function'} not {f.direction}: f({xs[i]!r})={ys[i]!r}, f({xs[i + 1]!r})={ys[i + 1]!r}"
        )


def pseudo_inverse(f: UnaryMonotone, y, tol: float = DEFAULT_PINV_TOL, check: bool = True):
    """Sup-based pseudo-inverse of a monotone function.

    For increasing ``f`` this is ``sup{x | f(x) < y}``, for decreasing
    ``f`` it is ``sup{x | f(x) > y}``.  Either set is an initial segment of
    the domain, so bisection on membership finds the supremum.  The sup of
    the empty set is the left end of the domain.  The result is an upper
    bound of the set within ``tol`` of the sup in the bisection coordinate
    (``x`` itself on bounded domains, ``u/(1+u)`` on ``[0, inf]``).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if check:
        check_monotone(f)
    ya = np.asarray(y, dtype=float)
    if np.any(np.isnan(ya)):
        raise ValueError("pseudo_inverse of NaN")

    def member(s):
        v = f(_from_coord(s, f.domain))
        return v < ya if f.increasing else v > ya

    s0, s1 = (float(v) for v in _to_coord(np.array(f.domain), f.domain))
    lo = np.full(ya.shape, s0)
    hi = np.full(ya.shape, s1)
    in_lo = member(lo)
    in_hi = member(hi)
    # every bracket has the same width, so the iteration count is fixed
    n_iter = min(MAX_BISECTIONS, max(0, math.ceil(math.log2((s1 - s0) / tol))))
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        m = member(mid)
        lo = np.where(m, mid, lo)
        hi = np.where(m, hi, mid)
    # hi is the least known upper bound of the set: exact whenever the sup is
    # the right end of the domain, which matters where the inverse jumps
    s = np.where(~in_lo, s0, np.where(in_hi, s1, hi))
    out = _from_coord(s, f.domain)
    return float(out) if np.ndim(y) == 0 else out


def pseudo_inverse_function(
    f: UnaryMonotone, tol: float = DEFAULT_PINV_TOL, label: str = "", domain: Optional[Tuple[float, float]] = None
) -> UnaryMonotone:
    """Wrap ``pseudo_inverse(f, .)`` as a monotone function.

    Its domain defaults to ``f``'s codomain; pass a wider ``domain`` when
    arguments may fall outside the range (the sup definition covers them).
    """
    check_monotone(f)
    return UnaryMonotone(
        fn=lambda y: pseudo_inverse(f, y, tol, check=False),
        direction=f.direction,
        domain=domain or f.codomain,
        codomain=f.domain,
        label=label or f"({f.label})^(-1)",
    )


@dataclass(frozen=True)
class Strictness:
    """Outcome of :func:`probe_strictness`; ``plateau`` is ``(u, v)`` or None."""

    plateau: Optional[Tuple[float, float]] = None

    @property
    def strict(self) -> bool:
        return self.plateau is None

    @property
    def kind(self) -> str:
        return "strict" if self.strict else "plateau"

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.plateau is not None:
            d["witness"] = {"u": self.plateau[0], "v": self.plateau[1]}
        return d


def _flat(a, b, tau):
    with np.errstate(invalid="ignore"):
        d = np.abs(a - b)
    return np.where(np.isinf(a) & np.isinf(b), True, d <= tau)


def _refine_edge(f, inside, outside, level, tau, steps=60):
    # bisect between a plateau point and a non-plateau point
    for _ in range(steps):
        mid = 0.5 * (inside + outside)
        if bool(_flat(np.float64(f(mid)), np.float64(level), tau)):
            inside = mid
        else:
            outside = mid
    return inside


def probe_strictness(f: UnaryMonotone, grid_n: int = 1001, tau: float = TAU_PLATEAU) -> Strictness:
    """Look for an interval on which ``f`` is constant.

    Adjacent grid samples closer than ``tau`` form flat cells; the longest
    run of flat cells is the plateau witness, with its ends sharpened by
    bisection.
    """
    if grid_n < 3:
        raise ValueError("grid_n must be at least 3")
    xs = f.coord_grid(grid_n)
    ys = f(xs)
    flat = _flat(ys[:-1], ys[1:], tau)
    if not np.any(flat):
        return Strictness()
    best_len, best_start, run_start = 0, 0, None
    for i, fl in enumerate(list(flat) + [False]):
        if fl and run_start is None:
            run_start = i
        elif not fl and run_start is not None:
            if i - run_start > best_len:
                best_len, best_start = i - run_start, run_start
            run_start = None
    i0, i1 = best_start, best_start + best_len
    u, v = float(xs[i0]), float(xs[i1])
    if math.isinf(ys[i0]) and math.isinf(ys[i1]):
        return Strictness(plateau=(u, v))
    level = ys[i0]
    if i0 > 0:
        u = float(_refine_edge(f, xs[i0], xs[i0 - 1], level, tau))
    if i1 < grid_n - 1 and not math.isinf(xs[i1 + 1]):
        v = float(_refine_edge(f, xs[i1], xs[i1 + 1], level, tau))
    return Strictness(plateau=(u, v))
