"""JSON, CSV, and DOT interchange for graphs, instances, and results.

Rationals travel as exact "p/q" strings (plain integers stay integers); all
dumps are byte-stable across runs: keys sorted, no locale, newline-terminated.

Instance schema:
    {"kind": "wsc",        "values": [...],                "actions": [[[e,..],..],..]}
    {"kind": "vta",        "values": [...], "probs": [...], "actions": ...}
    {"kind": "capped_sum", "weights": [...],               "actions": ...}
    {"kind": "two_block",  "weights": [...], "u_table": {"mask": val}, "actions": ...}
Elements are 0-based ids into the oracle's ground set; for "vta" the id of
agent a engaging target t is a * n_targets + t.

Graph schema: {"n": int, "edges": [[i, j], ...]} with 1-based agents, i < j.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import InputError
from .graphs import InfoGraph
from .oracles import (
    CappedSumOracle,
    Instance,
    TableOracle,
    TargetAssignmentOracle,
    TwoBlockOracle,
    ValuationOracle,
    WeightedSetCoverOracle,
    make_instance,
)


def parse_rational(value: Any, where: str = "") -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad rational {value!r}") from exc
    raise InputError(f"{where}: expected integer or 'p/q' string, got {value!r}")


def format_rational(value: Fraction) -> Any:
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def _rational_list(values, where: str) -> list[Fraction]:
    if not isinstance(values, list):
        raise InputError(f"{where}: expected a list")
    return [parse_rational(v, f"{where}/{i}") for i, v in enumerate(values)]


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def graph_to_obj(g: InfoGraph) -> dict:
    return {"n": g.n, "edges": [[i, j] for i, j in g.sorted_edges()]}


def graph_from_obj(obj: Any) -> InfoGraph:
    if not isinstance(obj, dict):
        raise InputError("graph document must be an object")
    if "n" not in obj or not isinstance(obj["n"], int):
        raise InputError("/n: missing or non-integer agent count")
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise InputError("/edges: expected a list")
    parsed = []
    for idx, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise InputError(f"/edges/{idx}: expected a pair of integers")
        parsed.append((e[0], e[1]))
    return InfoGraph(obj["n"], parsed)


def parse_graph(path) -> InfoGraph:
    return graph_from_obj(_load(path))


# ---------------------------------------------------------------------------
# Oracles and instances
# ---------------------------------------------------------------------------


def oracle_to_obj(oracle: ValuationOracle) -> dict:
    params = oracle.to_params()
    out: dict[str, Any] = {"kind": params["kind"]}
    for key in ("values", "probs", "weights"):
        if key in params:
            out[key] = [format_rational(v) for v in params[key]]
    if "u_table" in params:
        out["u_table"] = {
            str(mask): format_rational(v) for mask, v in sorted(params["u_table"].items())
        }
    if "table" in params:
        out["table"] = {
            str(mask): format_rational(v) for mask, v in sorted(params["table"].items())
        }
    if "ground" in params:
        out["ground"] = params["ground"]
    return out


def oracle_from_obj(obj: Any) -> ValuationOracle:
    if not isinstance(obj, dict):
        raise InputError("instance document must be an object")
    kind = obj.get("kind")
    if kind == "wsc":
        return WeightedSetCoverOracle(_rational_list(obj.get("values"), "/values"))
    if kind == "vta":
        return TargetAssignmentOracle(
            _rational_list(obj.get("values"), "/values"),
            _rational_list(obj.get("probs"), "/probs"),
        )
    if kind == "capped_sum":
        return CappedSumOracle(_rational_list(obj.get("weights"), "/weights"))
    if kind == "two_block":
        weights = _rational_list(obj.get("weights"), "/weights")
        table = _mask_table(obj.get("u_table"), "/u_table")
        return TwoBlockOracle(table, weights)
    if kind == "table":
        if not isinstance(obj.get("ground"), int):
            raise InputError("/ground: missing or non-integer")
        return TableOracle(obj["ground"], _mask_table(obj.get("table"), "/table"))
    raise InputError(f"/kind: unknown oracle kind {kind!r}")


def _mask_table(obj: Any, where: str) -> dict[int, Fraction]:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object of mask -> value")
    table = {}
    for key, val in obj.items():
        try:
            mask = int(key)
        except ValueError as exc:
            raise InputError(f"{where}/{key}: non-integer mask") from exc
        table[mask] = parse_rational(val, f"{where}/{key}")
    return table


def instance_to_obj(inst: Instance) -> dict:
    obj = oracle_to_obj(inst.oracle)
    obj["actions"] = [[sorted(a) for a in acts] for acts in inst.actions]
    return obj


def instance_from_obj(obj: Any) -> Instance:
    oracle = oracle_from_obj(obj)
    actions = obj.get("actions")
    if not isinstance(actions, list) or not actions:
        raise InputError("/actions: expected a nonempty list of agent action sets")
    parsed = []
    for i, acts in enumerate(actions):
        if not isinstance(acts, list) or not acts:
            raise InputError(f"/actions/{i}: each agent needs a nonempty action list")
        agent_actions = []
        for j, act in enumerate(acts):
            if not isinstance(act, list) or not all(isinstance(e, int) for e in act):
                raise InputError(f"/actions/{i}/{j}: an action is a list of element ids")
            for e in act:
                if not 0 <= e < oracle.ground_size:
                    raise InputError(
                        f"/actions/{i}/{j}: element {e} outside ground set of size "
                        f"{oracle.ground_size}"
                    )
            agent_actions.append(act)
        parsed.append(agent_actions)
    return make_instance(oracle, parsed)


def parse_instance(path) -> Instance:
    return instance_from_obj(_load(path))


# ---------------------------------------------------------------------------
# Files and stable dumps
# ---------------------------------------------------------------------------


def _load(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def curve_to_csv(points) -> str:
    """CSV with columns m, gamma_num, gamma_den, r, case_tag."""
    lines = ["m,gamma_num,gamma_den,r,case_tag"]
    for p in points:
        lines.append(
            f"{p.m},{p.gamma.numerator},{p.gamma.denominator},{p.r},{p.case_tag}"
        )
    return "\n".join(lines) + "\n"


def curve_from_csv(text: str):
    from .design import CurvePoint

    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != "m,gamma_num,gamma_den,r,case_tag":
        raise InputError("curve CSV missing its header")
    points = []
    for ln in lines[1:]:
        m, num, den, r, tag = ln.split(",")
        points.append(
            CurvePoint(int(m), Fraction(int(num), int(den)), int(r), tag)
        )
    return points
