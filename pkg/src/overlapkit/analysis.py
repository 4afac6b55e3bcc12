"""When an additively generated overlap function is a t-norm, how it splits
into a distortion ``F(T(x, y))``, and the mirrored statements for grouping
functions."""
from __future__ import annotations

import io
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy as np

from . import axioms as ax
from .axioms import FAIL, PASS, AxiomResult, Grid, VerificationReport, Witness
from .constructors import (
    BivariateOp,
    DualGeneratorPair,
    GeneratorPair,
    build_grouping_additive,
    build_overlap_additive,
    overlap_pair,
    pseudo_inverse_pair,
)
from .extmath import (
    DEFAULT_PINV_TOL,
    INF,
    Strictness,
    UnaryMonotone,
    ext_add,
    probe_strictness,
    pseudo_inverse_function,
)

RECONSTRUCTION_TOL = 1e-5


class HypothesisUnmet(ValueError):
    """The pair lies outside the hypothesis of the statement being checked."""


class NotStrict(ValueError):
    pass


class ReconstructionFailed(RuntimeError):
    """``F(T_sub)`` did not reproduce the overlap function: an engine bug."""


def _grid(grid) -> Grid:
    return ax._grid(grid)


def _require(results, ids, what):
    bad = [r for r in results if r.id in ids and not r.passed]
    if bad:
        raise HypothesisUnmet(f"{what}: " + ", ".join(f"{r.id} {r.verdict} ({r.note})" for r in bad))


# -- t-norm conditions ------------------------------------------------------------


def check_identity_composition(pair: GeneratorPair, grid=None, tol: float = ax.DEFAULT_TOL) -> AxiomResult:
    """Largest ``|vartheta(theta(x) + a/2) - x|`` over grid ``x``."""
    x = _grid(grid).points
    v = pair.vartheta(ext_add(pair.theta(x), pair.a / 2))
    D = np.abs(v - x)
    i = int(np.argmax(D))
    w = Witness(x=float(x[i]), lhs=float(v[i]), rhs=float(x[i]), defect=float(D[i]))
    return AxiomResult("composition-identity", PASS if D[i] <= tol else FAIL, tol, w)


def build_tnorm_by_pseudo_inverse(theta: UnaryMonotone, a: float, pinv_tol: float = DEFAULT_PINV_TOL) -> BivariateOp:
    """``vartheta := (theta + a/2)^(-1)`` turns a strict theta into a positive t-norm."""
    _require(ax.theta_conditions(theta, a), ("cond-1", "cond-2"), "theta")
    st = probe_strictness(theta)
    if not st.strict:
        raise NotStrict(f"theta is constant on {st.plateau}")
    pair = pseudo_inverse_pair(theta, a)
    op = build_overlap_additive(pair)
    return replace(op, label=f"T[pinv,{theta.label}]")


@dataclass
class EquivalenceReport:
    subject: str
    statements: Dict[str, AxiomResult]
    tnorm_report: Optional[VerificationReport] = None

    @property
    def verdicts(self) -> Dict[str, str]:
        return {k: r.verdict for k, r in self.statements.items()}

    @property
    def mutual_consistency(self) -> bool:
        return len(set(self.verdicts.values())) == 1

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "statements": {k: r.to_dict() for k, r in self.statements.items()},
            "mutual_consistency": self.mutual_consistency,
        }


def _verdict_of(ok: bool, aid: str, tol: float, note: str = "", witness=None) -> AxiomResult:
    return AxiomResult(aid, PASS if ok else FAIL, tol, witness, note)


def tnorm_equivalence_report(
    pair: GeneratorPair, O: Optional[BivariateOp] = None, grid=None, tol: float = ax.DEFAULT_TOL
) -> EquivalenceReport:
    """Evaluate "O is a t-norm", "1 is neutral" and "vartheta o (theta + a/2) = id"
    independently.  They must agree whenever theta(x) = a/2 exactly at x = 1
    and O is an overlap function; outside that hypothesis this raises."""
    grid = _grid(grid)
    O = O if O is not None else build_overlap_additive(pair)
    _require(ax.theta_conditions(pair.theta, pair.a), ("cond-2",), "theta(x) = a/2 iff x = 1")
    gate = ax.check_overlap_axioms(O, grid, tol)
    if not gate.passed:
        raise HypothesisUnmet("operator is not an overlap function: " + ", ".join(r.id for r in gate.failures()))
    tn = ax.check_tnorm(O, grid, tol)
    first_bad = next((tn[a] for a in ax.NORM_AXIOMS if not tn[a].passed), None)
    is_t = _verdict_of(
        ax.is_tnorm(tn), "is_tnorm", tol, first_bad.id if first_bad else "", first_bad.witness if first_bad else None
    )
    neutral = replace(ax.check_neutral(O, 1.0, grid, tol), id="neutral_1")
    comp = replace(check_identity_composition(pair, grid, tol), id="vartheta_comp_identity")
    return EquivalenceReport(pair.label, {"is_tnorm": is_t, "neutral_1": neutral, "vartheta_comp_identity": comp}, tn)


# -- distortions ------------------------------------------------------------------

INNER_CLASSES = ("t-subnorm", "t-norm", "strict-t-norm", "t-superconorm", "t-conorm", "strict-t-conorm")


@dataclass
class DecompositionResult:
    F: UnaryMonotone
    inner: BivariateOp
    inner_class: str
    reconstruction_error: float
    phi: Optional[UnaryMonotone] = None
    H: Optional[UnaryMonotone] = None
    representation_error: Optional[float] = None
    inner_report: Optional[VerificationReport] = None
    strictness: Optional[Strictness] = None
    subject: str = ""

    def recompute_error(self, O: BivariateOp, grid=None) -> float:
        X, Y = _grid(grid).mesh()
        return float(np.max(np.abs(self.F(self.inner(X, Y)) - O(X, Y))))

    def to_dict(self) -> dict:
        d = {
            "subject": self.subject,
            "inner_class": self.inner_class,
            "reconstruction_error": self.reconstruction_error,
            "representation_error": self.representation_error,
            "strictness": self.strictness.to_dict() if self.strictness else None,
            "inner_report": self.inner_report.to_dict() if self.inner_report else None,
        }
        return d


def _classify_inner(rep: VerificationReport, strict: bool) -> str:
    sub = all(rep[a].passed for a in ("T1", "T2", "T3", "subnorm-bound"))
    if not sub:
        return "unclassified"
    if not rep["T4"].passed:
        return "t-subnorm"
    return "strict-t-norm" if strict else "t-norm"


def _neg_log(u):
    with np.errstate(divide="ignore"):
        return -np.log(u)


def _max_grid_error(f, g, grid):
    X, Y = grid.mesh()
    return float(np.max(np.abs(f(X, Y) - g(X, Y))))


def decompose_distortion(
    pair: GeneratorPair,
    grid=None,
    tol: float = RECONSTRUCTION_TOL,
    axiom_tol: float = ax.DEFAULT_TOL,
    pinv_tol: float = DEFAULT_PINV_TOL,
) -> DecompositionResult:
    """Split ``O = vartheta(theta(x) + theta(y))`` as ``F(T_sub(x, y))`` with

        T_sub(x, y) = (theta + a/2)^(-1)(theta(x) + theta(y)),
        F(x)        = vartheta(theta(x) + a/2).

    Needs theta(x) = a/2 iff x = 1, or vartheta = 1 exactly on [0, a].  For a
    strict theta the inner operator is a strict t-norm and the product
    representation ``O = H(phi(x) phi(y))`` is emitted with
    ``phi = exp(theta(1) - theta)`` and ``H(u) = vartheta(2 theta(1) - ln u)``,
    which is ``F o phi^(-1)`` when theta(1) = a/2.
    """
    grid = _grid(grid)
    conds = ax.check_pair_conditions(pair)
    if not (conds["cond-2"].passed or conds["cond-3"].passed):
        raise HypothesisUnmet("neither theta(x) = a/2 iff x = 1 nor vartheta = 1 iff u in [0, a] holds")
    theta, vt, a = pair.theta, pair.vartheta, pair.a
    P = pseudo_inverse_function(theta.shifted(a / 2), tol=pinv_tol, domain=(0.0, INF))
    F = UnaryMonotone(lambda x: vt(ext_add(theta(x), a / 2)), "increasing", label=f"F[{pair.label}]")
    inner = BivariateOp(lambda x, y: P(ext_add(theta(x), theta(y))), label=f"Tsub[{pair.label}]", provenance="additive-pair")
    O = build_overlap_additive(pair)
    err = _max_grid_error(lambda x, y: F(inner(x, y)), O, grid)
    if not err < tol:
        raise ReconstructionFailed(f"max |F(T_sub) - O| = {err!r} >= {tol!r}")
    st = probe_strictness(theta)
    rep = ax.check_tnorm(inner, grid, axiom_tol)
    result = DecompositionResult(F, inner, _classify_inner(rep, st.strict), err, inner_report=rep, strictness=st, subject=pair.label)
    if st.strict:
        # normalised by theta(1) so phi maps [0,1] onto itself; H = F o phi^(-1) in closed form
        t1 = float(theta(1.0))
        phi = UnaryMonotone(lambda x: np.exp(t1 - theta(x)), "increasing", label=f"phi[{pair.label}]")
        H = UnaryMonotone(lambda u: vt(2 * t1 + _neg_log(u)), "increasing", label=f"H[{pair.label}]")
        result.phi, result.H = phi, H
        result.representation_error = _max_grid_error(lambda x, y: H(phi(x) * phi(y)), O, grid)
    return result


@dataclass(frozen=True)
class Representability:
    verdict: str
    witness: Optional[Tuple[float, float]] = None

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = {"u": self.witness[0], "v": self.witness[1]}
        return d


def representability_verdict(pair: GeneratorPair, grid_n: int = 1001) -> Representability:
    """Whether ``O`` is a distortion ``F(T)`` of a strict t-norm.

    Within the hypothesis (theta(x) = a/2 iff x = 1, or vartheta = 1 exactly
    on [0, a]) a strict theta gives such a distortion, while a theta with a
    plateau rules out every positive continuous t-norm: the ordinal-sum
    case analysis always forces ``F`` to be constant near 0.
    """
    conds = ax.check_pair_conditions(pair)
    if not (conds["cond-2"].passed or conds["cond-3"].passed):
        return Representability("out-of-hypothesis")
    st = probe_strictness(pair.theta, grid_n)
    if st.strict:
        return Representability("strict-distortion")
    return Representability("not-positive-ctnorm-distortion", st.plateau)


# -- duality ----------------------------------------------------------------------

_DUAL_PROVENANCE = {"additive-pair": "dual-pair", "dual-pair": "additive-pair"}


def dualize_overlap(O: BivariateOp) -> BivariateOp:
    """``G(x, y) = 1 - O(1 - x, 1 - y)`` (standard negation)."""
    return BivariateOp(
        fn=lambda x, y: 1.0 - O(1.0 - x, 1.0 - y),
        label=f"dual[{O.label}]",
        provenance=_DUAL_PROVENANCE.get(O.provenance, O.provenance),
    )


def dualize_unary(f: UnaryMonotone, label: str = "") -> UnaryMonotone:
    """``x -> 1 - f(1 - x)`` for a self-map of ``[0, 1]``."""
    return UnaryMonotone(lambda x: 1.0 - f(1.0 - x), f.direction, label=label or f"dual[{f.label}]")


_ID_MIRROR = {
    **{f"O{i}": f"G{i}" for i in range(1, 6)},
    **{f"T{i}": f"S{i}" for i in range(1, 5)},
    "subnorm-bound": "superconorm-bound",
    "neutral-1": "neutral-0",
    "neutral_1": "neutral_0",
    "is_tnorm": "is_tconorm",
    "vartheta_comp_identity": "s_comp_identity",
}
_CLASS_MIRROR = {"t-subnorm": "t-superconorm", "t-norm": "t-conorm", "strict-t-norm": "strict-t-conorm"}
_VERDICT_MIRROR = {"not-positive-ctnorm-distortion": "not-positive-ctconorm-distortion"}


def _mirror_witness(w: Optional[Witness], coords=True, values=True) -> Optional[Witness]:
    if w is None:
        return None
    m = lambda v: None if v is None else 1.0 - v  # noqa: E731
    return Witness(
        x=m(w.x) if coords else w.x,
        y=m(w.y) if coords else w.y,
        z=m(w.z) if coords else w.z,
        lhs=m(w.lhs) if values else w.lhs,
        rhs=m(w.rhs) if values else w.rhs,
        defect=w.defect,
    )


def mirror_result(r: AxiomResult, coords=True, values=True) -> AxiomResult:
    return AxiomResult(_ID_MIRROR.get(r.id, r.id), r.verdict, r.tol, _mirror_witness(r.witness, coords, values), r.note)


def mirror_report(rep: VerificationReport, subject: str) -> VerificationReport:
    return VerificationReport(subject, [mirror_result(r) for r in rep.axioms], rep.grid_n, rep.wall_time, rep.vacuous)


def _mirror_conditions(rep: VerificationReport, subject: str) -> VerificationReport:
    # t(x) = theta(1 - x): same values at mirrored points; s = 1 - vartheta: same points, mirrored values
    out = []
    for r in rep.axioms:
        if r.id in ("cond-1", "cond-2"):
            out.append(mirror_result(r, coords=True, values=False))
        else:
            out.append(mirror_result(r, coords=False, values=True))
    return VerificationReport(subject, out, rep.grid_n, rep.wall_time, rep.vacuous)


@dataclass
class DualSuiteReport:
    subject: str
    grouping: VerificationReport
    conditions: VerificationReport
    equivalence: Optional[EquivalenceReport] = None
    equivalence_error: str = ""
    decomposition: Optional[DecompositionResult] = None
    decomposition_error: str = ""
    representability: Optional[Representability] = None
    archimedean: Optional[AxiomResult] = None
    negation: str = "standard 1-x (convention)"

    def to_dict(self) -> dict:
        d = {
            "subject": self.subject,
            "negation": self.negation,
            "grouping": self.grouping.to_dict(),
            "conditions": self.conditions.to_dict(),
            "equivalence": self.equivalence.to_dict() if self.equivalence else {"error": self.equivalence_error},
            "decomposition": self.decomposition.to_dict() if self.decomposition else {"error": self.decomposition_error},
            "representability": self.representability.to_dict() if self.representability else None,
            "archimedean": self.archimedean.to_dict() if self.archimedean else None,
        }
        return d


def mirror_decomposition(res: DecompositionResult, G: BivariateOp, grid) -> DecompositionResult:
    """Conjugate every part of an overlap decomposition by ``x -> 1 - x``."""
    F = dualize_unary(res.F, label=f"F[{G.label}]")
    inner = dualize_overlap(res.inner)
    err = _max_grid_error(lambda x, y: F(inner(x, y)), G, _grid(grid))
    out = DecompositionResult(
        F,
        inner,
        _CLASS_MIRROR.get(res.inner_class, res.inner_class),
        err,
        inner_report=mirror_report(res.inner_report, inner.label) if res.inner_report else None,
        strictness=res.strictness,
        subject=G.label,
    )
    if res.phi is not None:
        out.phi = dualize_unary(res.phi, label=f"phi[{G.label}]")
        out.H = dualize_unary(res.H, label=f"H[{G.label}]")
        phi, H = out.phi, out.H
        out.representation_error = _max_grid_error(
            lambda x, y: H(phi(x) + phi(y) - phi(x) * phi(y)), G, _grid(grid)
        )
    return out


def dual_grouping_suite(pair: DualGeneratorPair, grid=None, tol: float = ax.DEFAULT_TOL) -> DualSuiteReport:
    """Grouping counterparts of every overlap statement, by reduction.

    The pair is turned into ``theta(x) = t(1 - x)``, ``vartheta = 1 - s``;
    the overlap machinery runs on that, and each report is mirrored back
    (0 and 1 swapped, t-norm notions become t-conorm notions).
    """
    grid = _grid(grid)
    opair = overlap_pair(pair)
    O = build_overlap_additive(opair)
    G = build_grouping_additive(pair)
    report = DualSuiteReport(
        pair.label,
        grouping=mirror_report(ax.check_overlap_axioms(O, grid, tol), G.label),
        conditions=_mirror_conditions(ax.check_pair_conditions(opair), pair.label),
    )
    try:
        eq = tnorm_equivalence_report(opair, O, grid, tol)
        report.equivalence = EquivalenceReport(
            pair.label,
            {_ID_MIRROR[k]: mirror_result(r) for k, r in eq.statements.items()},
            mirror_report(eq.tnorm_report, G.label) if eq.tnorm_report else None,
        )
    except HypothesisUnmet as e:
        report.equivalence_error = f"HypothesisUnmet: {e}"
    try:
        report.decomposition = mirror_decomposition(decompose_distortion(opair, grid), G, grid)
    except HypothesisUnmet as e:
        report.decomposition_error = f"HypothesisUnmet: {e}"
    rv = representability_verdict(opair)
    report.representability = Representability(_VERDICT_MIRROR.get(rv.verdict, rv.verdict), rv.witness and (1 - rv.witness[1], 1 - rv.witness[0]))
    arch = ax.check_archimedean_diagonal(O, 0.5, 200, 1e-6)
    report.archimedean = mirror_result(arch)
    return report


def sample_csv(f: UnaryMonotone, n: int = 101) -> str:
    """``x,value`` rows on a uniform grid of ``f``'s domain, 17 significant digits."""
    xs = np.linspace(f.domain[0], f.domain[1], n)
    ys = f(xs)
    buf = io.StringIO()
    buf.write("x,value\n")
    for x, y in zip(xs, ys):
        buf.write(f"{x:.17g},{y:.17g}\n")
    return buf.getvalue()


def grid_csv(op: BivariateOp, n: int) -> str:
    """``x,y,value`` rows, row-major in x then y, 17 significant digits."""
    p = np.linspace(0.0, 1.0, n)
    X, Y = np.meshgrid(p, p, indexing="ij")
    V = op(X, Y)
    buf = io.StringIO()
    buf.write("x,y,value\n")
    for x, y, v in zip(X.ravel(), Y.ravel(), V.ravel()):
        buf.write(f"{x:.17g},{y:.17g},{v:.17g}\n")
    return buf.getvalue()
