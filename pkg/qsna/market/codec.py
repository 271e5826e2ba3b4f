"""Canonical JSON encoding of instances, kernels, strategies and paths.

Rationals travel as "numerator/denominator" strings; floats are rejected
everywhere so that no rounding can sneak into the exact core.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Any, Union

from .tree import KernelSelection, Node, Path, ProbVector, ScenarioTree, Strategy, Vector, node_key

_RATIONAL_PATTERN = re.compile(r"^-?\d+(/\d+)?$")


class InstanceFormatError(ValueError):
    """Raised when a JSON document does not follow the canonical format."""

    def __init__(self, message: str, location: str = "") -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(raw: Any, location: str = "") -> Fraction:
    if isinstance(raw, bool):
        raise InstanceFormatError(f"expected rational string, got {raw!r}", location)
    if isinstance(raw, float):
        raise InstanceFormatError(f"floats rejected: {raw!r}", location)
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str):
        raise InstanceFormatError(f"expected rational string, got {type(raw).__name__}", location)
    text = raw.strip()
    if not _RATIONAL_PATTERN.match(text):
        if re.search(r"[.eE]", text):
            raise InstanceFormatError(f"floats rejected: {raw!r}", location)
        raise InstanceFormatError(f"malformed rational {raw!r}", location)
    numerator, _, denominator = text.partition("/")
    if denominator and int(denominator) == 0:
        raise InstanceFormatError(f"zero denominator in {raw!r}", location)
    return Fraction(int(numerator), int(denominator or 1))


def format_vector(vector: Vector) -> list[str]:
    return [format_rational(v) for v in vector]


def parse_vector(raw: Any, location: str = "") -> Vector:
    if not isinstance(raw, list):
        raise InstanceFormatError("expected an array of rationals", location)
    return tuple(parse_rational(v, f"{location}[{i}]") for i, v in enumerate(raw))


def parse_node_key(key: Any, location: str = "") -> Node:
    if not isinstance(key, str):
        raise InstanceFormatError("node key must be a string", location)
    return tuple(key.split("/")) if key else ()


def parse_path(raw: Any, location: str = "") -> Path:
    if not isinstance(raw, list) or not all(isinstance(label, str) for label in raw):
        raise InstanceFormatError("path must be an array of labels", location)
    return tuple(raw)


def _require(data: Any, key: str, kind: type, location: str) -> Any:
    if not isinstance(data, dict):
        raise InstanceFormatError("expected a JSON object", location)
    if key not in data:
        raise InstanceFormatError(f"missing key {key!r}", location)
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InstanceFormatError(f"key {key!r} must be {kind.__name__}", location)
    return value


# ───────────────────── Instances ─────────────────────

def tree_to_dict(tree: ScenarioTree) -> dict:
    return {
        "horizon": tree.horizon,
        "asset_dim": tree.asset_dim,
        "alphabets": [list(labels) for labels in tree.alphabets],
        "prices": {node_key(node): format_vector(price) for node, price in tree.prices.items()},
        "priors": {
            node_key(node): [format_vector(g.weights) for g in generators]
            for node, generators in tree.priors.items()
        },
    }


def tree_from_dict(data: Any) -> ScenarioTree:
    """Parse the canonical instance object. Semantic gaps are left to ``validate``."""
    horizon = _require(data, "horizon", int, "$")
    asset_dim = _require(data, "asset_dim", int, "$")
    alphabets_raw = _require(data, "alphabets", list, "$")
    alphabets = []
    for t, labels in enumerate(alphabets_raw):
        if not isinstance(labels, list) or not all(isinstance(label, str) for label in labels):
            raise InstanceFormatError("alphabet must be an array of strings", f"$.alphabets[{t}]")
        alphabets.append(tuple(labels))

    prices = {}
    for key, raw in _require(data, "prices", dict, "$").items():
        where = f"$.prices[{key!r}]"
        prices[parse_node_key(key, where)] = parse_vector(raw, where)

    priors = {}
    for key, raw in _require(data, "priors", dict, "$").items():
        where = f"$.priors[{key!r}]"
        if not isinstance(raw, list):
            raise InstanceFormatError("expected an array of generators", where)
        priors[parse_node_key(key, where)] = tuple(
            ProbVector(parse_vector(g, f"{where}[{i}]")) for i, g in enumerate(raw)
        )
    return ScenarioTree(
        horizon=horizon,
        asset_dim=asset_dim,
        alphabets=tuple(alphabets),
        prices=prices,
        priors=priors,
    )


def dumps(data: dict) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def read_json(path: Union[str, FilePath]) -> Any:
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InstanceFormatError("invalid UTF-8", f"byte {e.start}") from None
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None


def _reject_float(text: str) -> Any:
    raise InstanceFormatError(f"floats rejected: {text}", "$")


def load_tree(path: Union[str, FilePath]) -> ScenarioTree:
    return tree_from_dict(read_json(path))


def dump_tree(tree: ScenarioTree) -> str:
    return dumps(tree_to_dict(tree))


# ───────────────────── Kernels, strategies ─────────────────────

def kernels_to_dict(kernels: KernelSelection) -> dict:
    return {node_key(node): format_vector(weights) for node, weights in kernels.weights.items()}


def kernels_from_dict(data: Any, location: str = "$") -> KernelSelection:
    if not isinstance(data, dict):
        raise InstanceFormatError("kernel selection must be an object", location)
    return KernelSelection({
        parse_node_key(key, location): parse_vector(raw, f"{location}[{key!r}]")
        for key, raw in data.items()
    })


def strategy_to_dict(strategy: Strategy) -> dict:
    return {
        "x": format_rational(strategy.x),
        "positions": {node_key(node): format_vector(v) for node, v in strategy.positions.items()},
    }


def strategy_from_dict(data: Any, location: str = "$") -> Strategy:
    positions_raw = _require(data, "positions", dict, location)
    return Strategy(
        positions={
            parse_node_key(key, location): parse_vector(raw, f"{location}.positions[{key!r}]")
            for key, raw in positions_raw.items()
        },
        x=parse_rational(data.get("x", "0/1"), f"{location}.x"),
    )
