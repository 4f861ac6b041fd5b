"""One JSON document format for every model kind the CLI handles.

A model document has a ``states`` label list, exactly one model key
(``transition_law``, ``joint_sequence``, ``interval_joint`` or
``weights``), and an optional ``tolerance`` override.  Numbers may be JSON
numbers or strings like ``"19/110"`` / ``"0.25"``; in rational mode both
forms are parsed exactly (decimal literals never pass through binary
floats), so documents round-trip without drift.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .core import TransitionLaw
from .credal import IntervalJointSet
from .errors import ModelFormatError
from .jointrep import JointMatrix, JointSequence
from .numeric import Tolerance, to_tensor
from .randomwalk import IntervalWeightSet, WeightMatrix

__all__ = ["ModelDocument", "load_model", "dump_model", "load_gamble"]

_MODEL_KEYS = ("transition_law", "joint_sequence", "interval_joint", "weights")


@dataclass
class ModelDocument:
    states: list
    kind: str
    model: object
    tolerance: Tolerance
    exact: bool


def _read_json(path: str, exact: bool):
    try:
        with open(path) as fp:
            if exact:
                return json.load(fp, parse_float=Fraction)
            return json.load(fp)
    except OSError as err:
        raise ModelFormatError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ModelFormatError(f"{path} is not valid JSON: {err}") from err


def _tolerance_from(doc: dict, exact: bool, override: Tolerance | None) -> Tolerance:
    if override is not None:
        return override
    if exact:
        return Tolerance.exact()
    spec = doc.get("tolerance", {})
    if not isinstance(spec, dict):
        raise ModelFormatError("'tolerance' must be an object")
    base = Tolerance()
    return Tolerance(
        float(spec.get("sum", base.sum)),
        float(spec.get("eq", base.eq)),
        float(spec.get("lp", base.lp)),
    )


def load_model(path: str, exact: bool = True,
               tol: Tolerance | None = None) -> ModelDocument:
    """Parse a model document; every shape or value problem raises
    :class:`ModelFormatError`."""
    doc = _read_json(path, exact)
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    states = doc.get("states")
    if not isinstance(states, list) or not states:
        raise ModelFormatError("'states' must be a nonempty list of labels")
    present = [k for k in _MODEL_KEYS if k in doc]
    if len(present) != 1:
        raise ModelFormatError(
            f"document must contain exactly one of {', '.join(_MODEL_KEYS)}"
        )
    kind = present[0]
    tolerance = _tolerance_from(doc, exact, tol)
    try:
        model = _build_model(kind, doc[kind], len(states), exact, tolerance)
    except ModelFormatError:
        raise
    except (TypeError, ValueError, KeyError, ZeroDivisionError) as err:
        raise ModelFormatError(f"bad {kind} model: {err}") from err
    return ModelDocument(states, kind, model, tolerance, exact)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ModelFormatError(message)


def _build_model(kind: str, payload, n: int, exact: bool, tol: Tolerance):
    _require(isinstance(payload, dict), f"'{kind}' must be an object")
    if kind == "transition_law":
        _require("initial" in payload and "steps" in payload,
                 "transition_law needs 'initial' and 'steps'")
        law = TransitionLaw.from_arrays(
            payload["initial"], payload["steps"], exact, tol
        )
        _require(law.dim == n, "transition_law dimension differs from 'states'")
        return law
    if kind == "joint_sequence":
        _require("mats" in payload and isinstance(payload["mats"], list),
                 "joint_sequence needs a list 'mats'")
        mats = [JointMatrix(m, exact, tol) for m in payload["mats"]]
        seq = JointSequence(mats, tol)
        _require(seq.dim == n, "joint_sequence dimension differs from 'states'")
        return seq
    if kind == "interval_joint":
        _require("lower" in payload and "upper" in payload,
                 "interval_joint needs 'lower' and 'upper'")
        iset = IntervalJointSet(payload["lower"], payload["upper"], exact, tol)
        _require(iset.dim == n, "interval_joint dimension differs from 'states'")
        return iset
    directed = bool(payload.get("directed", False))
    if "matrix" in payload:
        w = WeightMatrix(payload["matrix"], directed, exact, tol)
        _require(w.dim == n, "weights dimension differs from 'states'")
        return w
    _require("lower" in payload and "upper" in payload,
             "weights needs 'matrix' or 'lower'+'upper'")
    if directed:
        wset = IntervalWeightSet(payload["lower"], payload["upper"], True, exact, tol)
    else:
        wset = IntervalWeightSet.undirected(payload["lower"], payload["upper"],
                                            exact, tol)
    _require(wset.dim == n, "weights dimension differs from 'states'")
    return wset


def _num_out(value, exact: bool):
    return str(value) if exact else float(value)


def _matrix_out(arr, exact: bool):
    return [[_num_out(v, exact) for v in row] for row in arr]


def dump_model(doc: ModelDocument) -> str:
    """Serialize a document back to JSON text (fraction strings in rational
    mode), with a fixed key order so identical models give identical bytes."""
    exact = doc.exact
    out: dict = {"states": list(doc.states)}
    model = doc.model
    if doc.kind == "transition_law":
        out["transition_law"] = {
            "initial": [_num_out(v, exact) for v in model.initial.entries],
            "steps": [_matrix_out(p.entries, exact) for p in model.steps],
        }
    elif doc.kind == "joint_sequence":
        out["joint_sequence"] = {
            "mats": [_matrix_out(m.entries, exact) for m in model.mats],
        }
    elif doc.kind == "interval_joint":
        out["interval_joint"] = {
            "lower": _matrix_out(model.lower, exact),
            "upper": _matrix_out(model.upper, exact),
        }
    elif doc.kind == "weights":
        if isinstance(model, WeightMatrix):
            out["weights"] = {
                "matrix": _matrix_out(model.w, exact),
                "directed": model.directed,
            }
        else:
            out["weights"] = {
                "lower": _matrix_out(model.lower, exact),
                "upper": _matrix_out(model.upper, exact),
                "directed": model.directed,
            }
    else:  # pragma: no cover - kinds are fixed above
        raise ModelFormatError(f"unknown model kind {doc.kind!r}")
    return json.dumps(out, indent=2) + "\n"


def load_gamble(path: str, exact: bool = True):
    """Read a gamble table: either ``{"values": nested-array}`` or a bare
    nested array.  Shape validation happens at the point of use."""
    doc = _read_json(path, exact)
    values = doc.get("values") if isinstance(doc, dict) else doc
    if values is None:
        raise ModelFormatError("gamble document needs a 'values' array")
    try:
        return to_tensor(values, exact)
    except (TypeError, ValueError) as err:
        raise ModelFormatError(f"bad gamble table: {err}") from err
