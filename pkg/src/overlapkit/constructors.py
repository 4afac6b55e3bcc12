"""Generator pairs, the operators they build, and a catalog of named examples."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .extmath import INF, UnaryMonotone, ext_add, pseudo_inverse_function

OP_SLACK = 1e-14

PROVENANCES = ("additive-pair", "dual-pair", "multiplicative-pair", "distortion", "builtin", "external")


class UnknownCatalogEntry(KeyError):
    pass


@dataclass(frozen=True)
class BivariateOp:
    """A binary operation on ``[0, 1]`` evaluated elementwise on arrays."""

    fn: Callable[[np.ndarray, np.ndarray], np.ndarray] = field(repr=False)
    label: str = ""
    provenance: str = "external"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __call__(self, x, y):
        xa, ya = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        if np.any(~((xa >= 0) & (xa <= 1))) or np.any(~((ya >= 0) & (ya <= 1))):
            raise ValueError(f"{self.label}: arguments must lie in [0, 1]")
        with np.errstate(divide="ignore", over="ignore", invalid="ignore", under="ignore"):
            v = np.broadcast_to(np.asarray(self.fn(xa, ya), dtype=float), xa.shape)
        if np.any(np.isnan(v)) or np.any(v < -OP_SLACK) or np.any(v > 1 + OP_SLACK):
            raise ValueError(f"{self.label}: value outside [0, 1]")
        v = np.clip(v, 0.0, 1.0)
        return float(v) if xa.ndim == 0 else v


def _check_direction(f: UnaryMonotone, want: str, name: str):
    if f.direction != want:
        raise ValueError(f"{name} must be {want}, got {f.direction}")


def _check_a(a) -> float:
    a = float(a)
    if not (math.isfinite(a) and a >= 0):
        raise ValueError(f"a must be finite and non-negative, got {a!r}")
    return a


@dataclass(frozen=True)
class GeneratorPair:
    """``(theta, vartheta, a)`` with both functions decreasing."""

    theta: UnaryMonotone
    vartheta: UnaryMonotone
    a: float
    label: str = ""
    kind: str = "overlap-additive"

    def __post_init__(self):
        _check_direction(self.theta, "decreasing", "theta")
        _check_direction(self.vartheta, "decreasing", "vartheta")
        object.__setattr__(self, "a", _check_a(self.a))


@dataclass(frozen=True)
class DualGeneratorPair:
    """``(t, s, a)`` with both functions increasing; builds grouping functions."""

    t: UnaryMonotone
    s: UnaryMonotone
    a: float
    label: str = ""
    kind: str = "grouping-additive"
    # the overlap pair this was mirrored from; 1 - (1 - v) loses tiny values
    origin: Optional["GeneratorPair"] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        _check_direction(self.t, "increasing", "t")
        _check_direction(self.s, "increasing", "s")
        object.__setattr__(self, "a", _check_a(self.a))


def build_overlap_additive(pair: GeneratorPair) -> BivariateOp:
    theta, vartheta = pair.theta, pair.vartheta
    return BivariateOp(
        fn=lambda x, y: vartheta(ext_add(theta(x), theta(y))),
        label=f"O[{pair.label}]",
        provenance="additive-pair",
    )


def build_grouping_additive(pair: DualGeneratorPair) -> BivariateOp:
    t, s = pair.t, pair.s
    return BivariateOp(
        fn=lambda x, y: s(ext_add(t(x), t(y))),
        label=f"G[{pair.label}]",
        provenance="dual-pair",
    )


def build_overlap_multiplicative(g: UnaryMonotone, h: UnaryMonotone) -> BivariateOp:
    _check_direction(g, "increasing", "g")
    _check_direction(h, "increasing", "h")
    return BivariateOp(
        fn=lambda x, y: g(h(x) * h(y)),
        label=f"O[{g.label},{h.label}]",
        provenance="multiplicative-pair",
    )


def build_distortion(F: UnaryMonotone, T: BivariateOp) -> BivariateOp:
    _check_direction(F, "increasing", "F")
    return BivariateOp(fn=lambda x, y: F(T(x, y)), label=f"{F.label}o{T.label}", provenance="distortion")


def build(obj) -> BivariateOp:
    """The operator generated by a pair, or ``obj`` itself if already one."""
    if isinstance(obj, GeneratorPair):
        return build_overlap_additive(obj)
    if isinstance(obj, DualGeneratorPair):
        return build_grouping_additive(obj)
    if isinstance(obj, BivariateOp):
        return obj
    raise TypeError(f"cannot build an operator from {type(obj).__name__}")


# -- conversions under the standard negation ---------------------------------


def dual_pair(pair: GeneratorPair) -> DualGeneratorPair:
    """``t(x) = theta(1-x)``, ``s(u) = 1 - vartheta(u)``."""
    theta, vt = pair.theta, pair.vartheta
    t = UnaryMonotone(lambda x: theta(1.0 - x), "increasing", (0.0, 1.0), theta.codomain, f"t[{theta.label}]")
    s = UnaryMonotone(lambda u: 1.0 - vt(u), "increasing", vt.domain, (0.0, 1.0), f"s[{vt.label}]")
    return DualGeneratorPair(t, s, pair.a, label=f"{pair.label}-dual", origin=pair)


def overlap_pair(pair: DualGeneratorPair) -> GeneratorPair:
    """Inverse of :func:`dual_pair`: ``theta(x) = t(1-x)``, ``vartheta = 1 - s``."""
    if pair.origin is not None:
        return pair.origin
    t, s = pair.t, pair.s
    theta = UnaryMonotone(lambda x: t(1.0 - x), "decreasing", (0.0, 1.0), t.codomain, f"theta[{t.label}]")
    vt = UnaryMonotone(lambda u: 1.0 - s(u), "decreasing", s.domain, (0.0, 1.0), f"vartheta[{s.label}]")
    label = pair.label[:-5] if pair.label.endswith("-dual") else f"{pair.label}-mirror"
    return GeneratorPair(theta, vt, pair.a, label=label)


# -- function families --------------------------------------------------------


def _neg_log(x):
    with np.errstate(divide="ignore"):
        return -np.log(x)


def theta_log(a: float, offset: Optional[float] = None, scale: float = 1.0) -> UnaryMonotone:
    """``offset - scale*ln x`` with ``theta(0) = inf``; offset defaults to a/2."""
    c = a / 2 if offset is None else offset
    return UnaryMonotone(lambda x: c + scale * _neg_log(x), "decreasing", (0.0, 1.0), (0.0, INF), f"{c:g}-{scale:g}ln x")


def theta_log_rational(a: float, r: float = 1.0, offset: Optional[float] = None, scale: float = 1.0) -> UnaryMonotone:
    """``offset + scale*ln((1 + r(1-x))/x)``; ``r=1`` gives ``ln((2-x)/x)``."""
    c = a / 2 if offset is None else offset

    def fn(x):
        with np.errstate(divide="ignore"):
            return c + scale * np.log((1.0 + r * (1.0 - x)) / x)

    return UnaryMonotone(fn, "decreasing", (0.0, 1.0), (0.0, INF), f"{c:g}+ln((1+{r:g}(1-x))/x)")


def theta_power(a: float, p: float = 1.0, offset: Optional[float] = None, scale: float = 1.0) -> UnaryMonotone:
    """``offset + scale*(x**-p - 1)``; ``p=1`` gives ``(1-x)/x``."""
    c = a / 2 if offset is None else offset

    def fn(x):
        with np.errstate(divide="ignore"):
            return c + scale * (np.power(x, -p) - 1.0)

    return UnaryMonotone(fn, "decreasing", (0.0, 1.0), (0.0, INF), f"{c:g}+(x^-{p:g}-1)")


def theta_piecewise(a: float, xs, gs, offset: Optional[float] = None, scale: float = 1.0) -> UnaryMonotone:
    """``offset - scale*ln g(x)`` for the piecewise-linear ``g`` through ``(xs, gs)``.

    ``g`` must run from ``(0, 0)`` to ``(1, 1)`` and be non-decreasing; flat
    pieces of ``g`` become plateaus of theta.
    """
    xs = np.asarray(xs, dtype=float)
    gs = np.asarray(gs, dtype=float)
    _check_knots(xs, gs, strict=False)
    c = a / 2 if offset is None else offset
    return UnaryMonotone(
        lambda x: c + scale * _neg_log(np.interp(x, xs, gs)), "decreasing", (0.0, 1.0), (0.0, INF), "theta-pl"
    )


def _check_knots(xs, gs, strict):
    if xs.shape != gs.shape or xs.size < 2:
        raise ValueError("knot arrays must have equal length >= 2")
    if xs[0] != 0 or xs[-1] != 1 or gs[0] != 0 or gs[-1] != 1:
        raise ValueError("knots must start at (0, 0) and end at (1, 1)")
    if np.any(np.diff(xs) <= 0):
        raise ValueError("knot abscissae must be strictly increasing")
    dg = np.diff(gs)
    if np.any(dg < 0) or (strict and np.any(dg <= 0)):
        raise ValueError("knot values must be " + ("strictly increasing" if strict else "non-decreasing"))


def _above(cut, tail):
    """``1`` on ``[0, cut)`` and ``tail(u - cut)`` on ``[cut, inf]``."""

    def fn(u):
        d = np.maximum(u - cut, 0.0)
        return np.where(u < cut, 1.0, tail(d))

    return fn


def vartheta_exp(a: float, power: float = 1.0, cut: Optional[float] = None) -> UnaryMonotone:
    """``1`` on ``[0, cut)``, ``exp(-power*(u - cut))`` beyond."""
    c = a if cut is None else cut
    return UnaryMonotone(_above(c, lambda d: np.exp(-power * d)), "decreasing", (0.0, INF), (0.0, 1.0), f"exp(-(u-{c:g}))")


def vartheta_ratio(a: float, c: Optional[float] = None, cut: Optional[float] = None) -> UnaryMonotone:
    """``1`` on ``[0, cut)``, ``c/(c + u - cut)`` beyond; ``c = cut = a`` gives ``a/u``."""
    k = a if cut is None else cut
    c = k if c is None else c
    if c <= 0:
        raise ValueError("the ratio family needs a positive scale")
    # with c == k this is exactly k/u
    tail = (lambda d: k / (k + d)) if c == k else (lambda d: c / (c + d))
    return UnaryMonotone(_above(k, tail), "decreasing", (0.0, INF), (0.0, 1.0), f"{c:g}/(u-{k:g}+{c:g})")


def vartheta_logistic(a: float, power: float = 1.0, cut: Optional[float] = None) -> UnaryMonotone:
    """``1`` on ``[0, cut)``, ``(2/(exp(u - cut) + 1))**power`` beyond.

    With ``power=2`` this equals ``4/(e^{2(u-a)} + 2e^{u-a} + 1)``.
    """
    c = a if cut is None else cut
    return UnaryMonotone(
        _above(c, lambda d: (2.0 / (np.exp(d) + 1.0)) ** power), "decreasing", (0.0, INF), (0.0, 1.0), f"logistic^{power:g}"
    )


def vartheta_piecewise(a: float, xs, ks, cut: Optional[float] = None) -> UnaryMonotone:
    """``K(exp(cut - u))`` for the piecewise-linear automorphism ``K`` through ``(xs, ks)``."""
    xs = np.asarray(xs, dtype=float)
    ks = np.asarray(ks, dtype=float)
    _check_knots(xs, ks, strict=False)
    c = a if cut is None else cut
    return UnaryMonotone(
        _above(c, lambda d: np.interp(np.exp(-d), xs, ks)), "decreasing", (0.0, INF), (0.0, 1.0), "vartheta-pl"
    )


def pseudo_inverse_pair(theta: UnaryMonotone, a: float, label: str = "") -> GeneratorPair:
    """Pair whose second function is the pseudo-inverse of ``theta + a/2``."""
    f = theta.shifted(a / 2)
    vt = pseudo_inverse_function(f, label=f"({theta.label}+a/2)^(-1)", domain=(0.0, INF))
    return GeneratorPair(theta, vt, a, label=label or f"pinv[{theta.label}]")


def power_map(p: float) -> UnaryMonotone:
    return UnaryMonotone(lambda x: np.power(x, p), "increasing", label=f"x^{p:g}")


IDENTITY = UnaryMonotone(lambda x: x, "increasing", label="id")


# -- built-in operators -------------------------------------------------------


def _hamacher(x, y):
    den = 2.0 - x - y + x * y
    return np.where(den == 0, 0.0, x * y / np.where(den == 0, 1.0, den))


BUILTINS = {
    "product": (lambda x, y: x * y, "product t-norm"),
    "min": (np.minimum, "minimum t-norm"),
    "max": (np.maximum, "maximum t-conorm"),
    "lukasiewicz": (lambda x, y: np.maximum(0.0, x + y - 1.0), "Lukasiewicz t-norm"),
    "bounded-sum": (lambda x, y: np.minimum(1.0, x + y), "bounded sum t-conorm"),
    "probabilistic-sum": (lambda x, y: x + y - x * y, "probabilistic sum t-conorm"),
    "hamacher": (_hamacher, "Hamacher product xy/(2-x-y+xy)"),
}


def builtin(name: str) -> BivariateOp:
    fn, _ = BUILTINS[name]
    return BivariateOp(fn=fn, label=name, provenance="builtin")


def plateau_knots(lo: float = 0.4, hi: float = 0.6):
    """Knots of ``g`` with ``g(x) = x`` below ``lo``, ``g = lo`` on ``[lo, hi]``, linear to 1."""
    return [0.0, lo, hi, 1.0], [0.0, lo, lo, 1.0]


def _pair_product(a):
    return GeneratorPair(theta_log(a), vartheta_exp(a), a, label="product-pair")


def _pair_nonassoc(a):
    if a <= 0:
        raise ValueError("nonassoc-log needs a > 0 (a/u is undefined at a = 0)")
    return GeneratorPair(theta_log(a), vartheta_ratio(a), a, label="nonassoc-log")


def _pair_hamacher_sq(a):
    return GeneratorPair(theta_log_rational(a), vartheta_logistic(a, power=2.0), a, label="hamacher-squared")


def _pair_plateau(a):
    xs, gs = plateau_knots()
    return GeneratorPair(theta_piecewise(a, xs, gs), vartheta_exp(a), a, label="plateau-pair")


PAIRS = {
    "product-pair": (_pair_product, "theta = a/2 - ln x, vartheta = exp(a - u) beyond a; O = xy"),
    "nonassoc-log": (_pair_nonassoc, "theta = a/2 - ln x, vartheta = a/u beyond a; O = a/(a - ln xy)"),
    "hamacher-squared": (
        _pair_hamacher_sq,
        "theta = a/2 + ln((2-x)/x), vartheta = 4/(e^{2(u-a)} + 2e^{u-a} + 1); O = (Hamacher)^2",
    ),
    "plateau-pair": (_pair_plateau, "theta = a/2 - ln g(x), g flat on [0.4, 0.6]; O = g(x)g(y)"),
}

ALIASES = {"product": "product-pair", "log-ratio": "nonassoc-log"}


def catalog_names() -> list:
    names = list(PAIRS) + [f"{n}-dual" for n in PAIRS] + list(BUILTINS)
    return names


def catalog_help() -> str:
    lines = [f"  {n:22s} {doc}" for n, (_, doc) in PAIRS.items()]
    lines += [f"  {n + '-dual':22s} grouping pair t(x)=theta(1-x), s=1-vartheta" for n in PAIRS]
    lines += [f"  {n:22s} {doc}" for n, (_, doc) in BUILTINS.items()]
    return "\n".join(lines)


def catalog(name: str, a: float = 0.0) -> Union[GeneratorPair, DualGeneratorPair, BivariateOp]:
    """Look up a named construction.

    Pair names (and their ``-dual`` versions) take the boundary parameter
    ``a``; operator names ignore it.  ``product`` names the pair when asked
    for a pair alias; use :func:`builtin` for the plain product t-norm.
    """
    if name in BUILTINS:
        return builtin(name)
    base, dual = (name[:-5], True) if name.endswith("-dual") else (name, False)
    base = ALIASES.get(base, base)
    if base not in PAIRS:
        raise UnknownCatalogEntry(name)
    pair = PAIRS[base][0](_check_a(a))
    return dual_pair(pair) if dual else pair


# -- randomised valid pairs ---------------------------------------------------


def _random_knots(rng, n_inner, strict=True):
    while True:
        xs = np.sort(rng.uniform(0.02, 0.98, n_inner))
        gs = np.sort(rng.uniform(0.02, 0.98, n_inner))
        if np.all(np.diff(xs) > 0.02) and np.all(np.diff(gs) > 0.02):
            return np.r_[0.0, xs, 1.0], np.r_[0.0, gs, 1.0]


def random_pair(
    rng: np.random.Generator,
    a: Optional[float] = None,
    tnorm: Optional[bool] = None,
    plateau: bool = False,
) -> GeneratorPair:
    """A random pair meeting all four sufficient conditions for ``a``.

    ``theta = a/2 - ln h`` with ``h`` a random piecewise-linear map fixing 0
    and 1 (strict unless ``plateau``), and ``vartheta(u) = K(exp(a - u))``
    beyond ``a``, where ``K = h^-1 o (v -> v**q)``.  The result is
    ``O(x, y) = h^-1((h(x) h(y))**q)``: a t-norm exactly when ``q = 1``.
    """
    if a is None:
        a = float(rng.choice([0.0, 0.5, 1.0, 2.0, 5.0]))
    if plateau:
        tnorm = False
    elif tnorm is None:
        tnorm = bool(rng.integers(2))
    xs, gs = _random_knots(rng, int(rng.integers(1, 4)))
    if plateau:
        # flatten one inner segment away from 0 and 1
        i = int(rng.integers(1, len(xs) - 2)) if len(xs) > 3 else 1
        xs = np.r_[xs[: i + 1], xs[i] + 0.5 * (xs[i + 1] - xs[i]), xs[i + 1 :]]
        gs = np.r_[gs[: i + 1], gs[i], gs[i + 1 :]]
    q = 1.0 if tnorm else float(rng.choice([rng.uniform(0.4, 0.75), rng.uniform(1.4, 2.5)]))
    theta = theta_piecewise(a, xs, gs)
    # K = h^-1 o (v -> v^q); for a plateaued h use the sup-inverse via interp on (gs, xs) after dedup
    gk, xk = _inverse_knots(xs, gs)

    def tail(d):
        return np.interp(np.exp(-q * d), gk, xk)

    vt = UnaryMonotone(_above(a, tail), "decreasing", (0.0, INF), (0.0, 1.0), f"K(q={q:.3g})")
    label = f"random(a={a:g},q={q:.3g}{',plateau' if plateau else ''})"
    return GeneratorPair(theta, vt, a, label=label)


def _inverse_knots(xs, gs):
    # swap axes of a non-decreasing PL map; a flat piece becomes a vertical
    # jump, which we drop so the inverse stays a continuous function
    keep = np.r_[True, np.diff(gs) > 0]
    return gs[keep], xs[keep]
