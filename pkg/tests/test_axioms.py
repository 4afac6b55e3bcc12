import json
import math

import numpy as np
import pytest

from overlapkit import axioms as ax
from overlapkit import constructors as C
from overlapkit.extmath import INF, UnaryMonotone

B = C.builtin


def verdicts(rep):
    return {r.id: r.verdict for r in rep.axioms}


def assert_witness_shows(res):
    """A failing witness must exhibit a violation of at least tol."""
    assert res.failed
    assert res.witness is not None and res.witness.defect >= res.tol


# -- overlap / grouping --------------------------------------------------------


def test_product_is_overlap():
    rep = ax.check_overlap_axioms(B("product"), 101)
    assert rep.passed and set(verdicts(rep).values()) == {"pass"}


def test_nonassoc_is_overlap():
    rep = ax.check_overlap_axioms(C.build(C.catalog("nonassoc-log", 1)), 101)
    assert list(verdicts(rep)) == ["O1", "O2", "O3", "O4", "O5"]
    assert rep.passed


def test_lukasiewicz_fails_zero_set():
    rep = ax.check_overlap_axioms(B("lukasiewicz"), 101)
    r = rep["O2"]
    assert_witness_shows(r)
    assert (r.witness.x, r.witness.y) == (0.5, 0.5) and r.witness.lhs == 0.0
    assert not rep.passed and [f.id for f in rep.failures()] == ["O2"]


@pytest.mark.parametrize("name", ["probabilistic-sum", "max"])
def test_grouping_passes(name):
    assert ax.check_grouping_axioms(B(name), 101).passed


def test_bounded_sum_fails_one_set():
    r = ax.check_grouping_axioms(B("bounded-sum"), 101)["G3"]
    assert_witness_shows(r)
    assert (r.witness.x, r.witness.y) == (0.5, 0.5) and r.witness.lhs == 1.0


def test_min_is_overlap_max_is_not():
    assert ax.check_overlap_axioms(B("min")).passed
    rep = ax.check_overlap_axioms(B("max"))
    assert rep["O2"].failed and rep["O3"].failed


def test_commutativity_and_monotonicity_failures():
    skew = C.BivariateOp(lambda x, y: x * y * (0.5 + 0.5 * x), "skew")
    rep = ax.check_overlap_axioms(skew)
    assert_witness_shows(rep["O1"])
    wavy = C.BivariateOp(lambda x, y: x * y * (1 + 0.3 * np.sin(12 * x * y)), "wavy")
    assert_witness_shows(ax.check_overlap_axioms(wavy)["O4"])


def test_discontinuity_is_not_a_pass():
    jump = C.BivariateOp(lambda x, y: np.where(x + y > 1.005, 0.5 + 0.5 * x * y, 0.5 * x * y), "jump")
    assert ax.check_overlap_axioms(jump)["O5"].verdict == ax.INCONCLUSIVE


def test_near_zero_values_are_refined_not_failed():
    # x^4 y^4 dips below tol next to the axes but only vanishes on them
    steep = C.BivariateOp(lambda x, y: (x * y) ** 4, "steep")
    assert ax.check_overlap_axioms(steep, 101)["O2"].passed


# -- norms ----------------------------------------------------------------------


def test_product_tnorm():
    rep = ax.check_tnorm(B("product"), 51)
    assert ax.is_tnorm(rep) and rep["positivity"].passed


def test_hamacher_tnorm():
    rep = ax.check_tnorm(B("hamacher"))
    assert ax.is_tnorm(rep) and rep["positivity"].passed


def test_lukasiewicz_not_positive():
    rep = ax.check_tnorm(B("lukasiewicz"))
    assert ax.is_tnorm(rep)
    assert_witness_shows(rep["positivity"])


def test_nonassoc_tnorm_failures():
    O = C.build(C.catalog("nonassoc-log", 1))
    rep = ax.check_tnorm(O)
    assert rep["T2"].failed and rep["T4"].failed
    assert_witness_shows(rep["T4"])
    # the value quoted for x = 0.5
    assert abs(O(0.5, 1.0) - 1 / (1 + math.log(2))) < 1e-12
    assert abs(O(0.5, 1.0) - 0.5907) < 1e-4


def test_associativity_examples():
    assert ax.check_associativity(B("product")).witness.defect < 1e-12
    assert ax.check_associativity(B("min")).witness.defect == 0.0
    O = C.build(C.catalog("nonassoc-log", 1))
    r = ax.check_associativity(O, 51)
    assert_witness_shows(r)
    assert r.witness.defect > 0.1
    w = r.witness
    assert abs(O(O(w.x, w.y), w.z) - w.lhs) < 1e-15 and abs(O(w.x, O(w.y, w.z)) - w.rhs) < 1e-15
    left = O(O(0.9, 0.5), 0.1)
    right = O(0.9, O(0.5, 0.1))
    assert abs(left - 0.25710) < 1e-4 and abs(right - 0.40151) < 1e-4


def test_neutral_examples():
    assert ax.check_neutral(B("product"), 1.0).passed
    assert ax.check_neutral(B("probabilistic-sum"), 0.0).passed
    O = C.build(C.catalog("nonassoc-log", 1))
    r = ax.check_neutral(O, 1.0)
    assert_witness_shows(r)
    assert abs(abs(O(0.5, 1.0) - 0.5) - 0.0906) < 1e-3


def test_tconorm():
    rep = ax.check_tconorm(B("probabilistic-sum"))
    assert ax.is_tconorm(rep) and rep.passed
    assert not ax.is_tconorm(ax.check_tconorm(B("product")))


def test_archimedean_diagonal():
    r = ax.check_archimedean_diagonal(B("product"), 0.5, 60, 1e-9)
    assert r.passed and r.note == "n=30"
    r = ax.check_archimedean_diagonal(B("min"), 0.5)
    assert r.failed and "stagnates at 0.5" in r.note
    assert ax.check_archimedean_diagonal(B("hamacher"), 0.5).passed


# -- pair conditions ------------------------------------------------------------


def test_product_pair_conditions():
    rep = ax.check_pair_conditions(C.catalog("product-pair", 2))
    assert list(verdicts(rep)) == ["cond-1", "cond-2", "cond-3", "cond-4"] and rep.passed


def test_vartheta_one_too_long():
    a = 1.0
    p = C.GeneratorPair(C.theta_log(a), C.vartheta_exp(a, cut=2 * a), a)
    r = ax.check_pair_conditions(p)["cond-3"]
    assert_witness_shows(r)
    assert a < r.witness.x <= 2 * a and p.vartheta(r.witness.x) == 1.0


def test_theta_at_one_wrong():
    a = 1.0
    r = ax.check_pair_conditions(C.GeneratorPair(C.theta_log(a, offset=a), C.vartheta_exp(a), a))["cond-2"]
    assert_witness_shows(r)
    assert r.witness.x == 1.0


def test_finite_theta_at_zero():
    a = 1.0
    th = UnaryMonotone(lambda x: a / 2 + (1 - x), "decreasing", (0.0, 1.0), (0.0, INF))
    p = C.GeneratorPair(th, C.vartheta_exp(a), a)
    assert ax.check_pair_conditions(p)["cond-1"].failed
    rep = ax.check_necessary_conditions(p, C.build(p))
    assert rep.vacuous and not rep.passed
    assert {r.verdict for r in rep.axioms} == {ax.INCONCLUSIVE}


def test_vartheta_zero_at_finite_u():
    a = 1.0
    vt = UnaryMonotone(lambda u: np.clip(1 - np.maximum(u - a, 0) / 3, 0, 1), "decreasing", (0.0, INF), (0.0, 1.0))
    r = ax.check_pair_conditions(C.GeneratorPair(C.theta_log(a), vt, a))["cond-4"]
    assert_witness_shows(r)


@pytest.mark.parametrize("name,a", [("product-pair", 2), ("nonassoc-log", 1), ("hamacher-squared", 1), ("plateau-pair", 0.5)])
def test_necessary_conditions_catalog(name, a):
    p = C.catalog(name, a)
    rep = ax.check_necessary_conditions(p, C.build(p))
    assert rep.passed and not rep.vacuous


# -- reports and plumbing -------------------------------------------------------


def test_report_json_is_deterministic_and_strict():
    O = C.build(C.catalog("nonassoc-log", 1))
    a = ax.check_tnorm(O).to_json()
    b = ax.check_tnorm(O).to_json()
    assert a == b
    d = json.loads(a)
    assert d["grid"]["n"] == 101 and "wall_time" not in a
    assert "NaN" not in a and "Infinity" not in a


def test_jsonable_nonfinite():
    assert ax.jsonable({"u": INF, "v": [np.float64(1.5), np.nan]}) == {"u": "inf", "v": [1.5, "nan"]}


def test_grid_helpers():
    g = ax.Grid.uniform(11)
    assert g.n == 11 and abs(g.step - 0.1) < 1e-15
    assert g.refined().n == 21 and g.refined().refinement_depth == 1
    assert g.coarsened(5).n == 5
    with pytest.raises(ValueError):
        ax.Grid.uniform(2)


def test_thread_count_does_not_change_results(monkeypatch):
    O = C.build(C.catalog("nonassoc-log", 1))
    monkeypatch.setenv("OVERLAPKIT_THREADS", "1")
    one = ax.check_associativity(O, 31).to_dict()
    monkeypatch.setenv("OVERLAPKIT_THREADS", "7")
    many = ax.check_associativity(O, 31).to_dict()
    assert one == many


def test_human_rendering():
    txt = ax.human(ax.check_tnorm(C.build(C.catalog("nonassoc-log", 1))))
    assert "T2" in txt and "fail" in txt and "defect=" in txt
