"""JSON descriptions of operators that are not in the catalog.

A document names a kind and, per function, a family with parameters::

    {"kind": "overlap-additive", "a": 1, "label": "mine",
     "theta":    {"family": "log-offset"},
     "vartheta": {"family": "rational"}}

Kinds:

* ``overlap-additive``: ``theta`` and ``vartheta`` objects.
* ``grouping-additive``: ``dual_of`` holding either a catalog name or an
  overlap-additive document; the pair is mirrored with ``1 - x``.
* ``distortion``: ``F`` (``identity`` or ``power`` with ``p``) applied to
  ``T``, a built-in operator name or a nested document.

theta families: ``log-offset`` (offset, scale), ``log-rational`` (r, offset,
scale), ``power`` (p, offset, scale), ``rational`` (power with p=1, i.e.
``offset + scale*(1-x)/x``), ``piecewise-linear`` (xs, gs, offset, scale).

vartheta families: ``exp`` (power, cut), ``rational`` / ``ratio`` (c, cut),
``logistic`` (power, cut), ``piecewise-linear`` (xs, ks, cut) and
``pseudo-inverse``, the sup-inverse of ``theta + a/2``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Union

from . import constructors as C
from .constructors import BivariateOp, DualGeneratorPair, GeneratorPair


class SpecError(ValueError):
    """Malformed or inconsistent spec document."""


def _params(obj: dict, allowed: set, where: str) -> dict:
    extra = set(obj) - allowed - {"family"}
    if extra:
        raise SpecError(f"{where}: unknown keys {sorted(extra)}")
    out = {}
    for k, v in obj.items():
        if k == "family":
            continue
        if k in ("xs", "gs", "ks"):
            if not isinstance(v, list) or not all(isinstance(e, (int, float)) and not isinstance(e, bool) for e in v):
                raise SpecError(f"{where}.{k} must be a list of numbers")
            out[k] = [float(e) for e in v]
        else:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise SpecError(f"{where}.{k} must be a finite number")
            out[k] = float(v)
    return out


def _family(obj, where: str) -> str:
    if not isinstance(obj, dict):
        raise SpecError(f"{where} must be an object")
    fam = obj.get("family")
    if not isinstance(fam, str):
        raise SpecError(f"{where}.family missing")
    return fam


def _theta(obj, a: float):
    fam = _family(obj, "theta")
    common = {"offset", "scale"}
    if fam == "log-offset":
        return C.theta_log(a, **_params(obj, common, "theta"))
    if fam == "log-rational":
        return C.theta_log_rational(a, **_params(obj, common | {"r"}, "theta"))
    if fam == "power":
        return C.theta_power(a, **_params(obj, common | {"p"}, "theta"))
    if fam == "rational":
        return C.theta_power(a, 1.0, **_params(obj, common, "theta"))
    if fam == "piecewise-linear":
        p = _params(obj, common | {"xs", "gs"}, "theta")
        if "xs" not in p or "gs" not in p:
            raise SpecError("theta: piecewise-linear needs xs and gs")
        return C.theta_piecewise(a, p.pop("xs"), p.pop("gs"), **p)
    raise SpecError(f"unknown theta family {fam!r}")


def _vartheta(obj, a: float, theta):
    fam = _family(obj, "vartheta")
    if fam == "exp":
        return C.vartheta_exp(a, **_params(obj, {"power", "cut"}, "vartheta"))
    if fam in ("rational", "ratio"):
        return C.vartheta_ratio(a, **_params(obj, {"c", "cut"}, "vartheta"))
    if fam == "logistic":
        return C.vartheta_logistic(a, **_params(obj, {"power", "cut"}, "vartheta"))
    if fam == "piecewise-linear":
        p = _params(obj, {"xs", "ks", "cut"}, "vartheta")
        if "xs" not in p or "ks" not in p:
            raise SpecError("vartheta: piecewise-linear needs xs and ks")
        return C.vartheta_piecewise(a, p.pop("xs"), p.pop("ks"), **p)
    if fam == "pseudo-inverse":
        _params(obj, set(), "vartheta")
        return C.pseudo_inverse_pair(theta, a).vartheta
    raise SpecError(f"unknown vartheta family {fam!r}")


def _a(doc: dict, default: float) -> float:
    a = doc.get("a", default)
    if isinstance(a, bool) or not isinstance(a, (int, float)) or not math.isfinite(a) or a < 0:
        raise SpecError(f"a must be a finite non-negative number, got {a!r}")
    return float(a)


def _overlap(doc: dict, a: float) -> GeneratorPair:
    extra = set(doc) - {"kind", "a", "label", "theta", "vartheta"}
    if extra:
        raise SpecError(f"unknown keys {sorted(extra)}")
    if "theta" not in doc or "vartheta" not in doc:
        raise SpecError("overlap-additive needs theta and vartheta")
    a = _a(doc, a)
    theta = _theta(doc["theta"], a)
    return GeneratorPair(theta, _vartheta(doc["vartheta"], a, theta), a, label=str(doc.get("label", "spec-pair")))


def _F(obj):
    fam = _family(obj, "F")
    if fam == "identity":
        _params(obj, set(), "F")
        return C.IDENTITY
    if fam == "power":
        p = _params(obj, {"p"}, "F")
        if p.get("p", 0) <= 0:
            raise SpecError("F: power needs p > 0")
        return C.power_map(p["p"])
    raise SpecError(f"unknown F family {fam!r}")


def from_dict(doc, a: float = 0.0) -> Union[GeneratorPair, DualGeneratorPair, BivariateOp]:
    """Build the object a spec document describes; ``a`` is the fallback parameter."""
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    kind = doc.get("kind", "overlap-additive")
    try:
        if kind == "overlap-additive":
            return _overlap(doc, a)
        if kind == "grouping-additive":
            src = doc.get("dual_of")
            a = _a(doc, a)
            if isinstance(src, str):
                base = C.catalog(src, a)
                if not isinstance(base, GeneratorPair):
                    raise SpecError(f"dual_of must name an overlap pair, got {src!r}")
            elif isinstance(src, dict):
                base = _overlap({**src, "a": src.get("a", a)}, a)
            else:
                raise SpecError("grouping-additive needs dual_of")
            dual = C.dual_pair(base)
            if "label" in doc:
                dual = DualGeneratorPair(dual.t, dual.s, dual.a, str(doc["label"]), origin=base)
            return dual
        if kind == "distortion":
            if "F" not in doc or "T" not in doc:
                raise SpecError("distortion needs F and T")
            T = doc["T"]
            if isinstance(T, str):
                if T not in C.BUILTINS:
                    raise SpecError(f"T must be one of {sorted(C.BUILTINS)}")
                inner = C.builtin(T)
            else:
                inner = C.build(from_dict(T, a))
            op = C.build_distortion(_F(doc["F"]), inner)
            return BivariateOp(op.fn, str(doc.get("label", op.label)), op.provenance)
    except C.UnknownCatalogEntry:
        raise
    except SpecError:
        raise
    except (ValueError, TypeError) as e:
        raise SpecError(str(e)) from e
    raise SpecError(f"unknown kind {kind!r}")


def load(path: Union[str, Path], a: float = 0.0):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}: invalid JSON ({e})") from e
    return from_dict(doc, a)
