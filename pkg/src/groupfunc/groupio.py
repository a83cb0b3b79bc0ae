"""Group construction grammar and JSON wire formats."""

from __future__ import annotations

import json
import os
from typing import Union

from .errors import SpecParseError
from .function_space import GroupFunction
from .group_core import (
    Group,
    from_cayley_table,
    from_permutations,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_symmetric,
)

_HEADS = ("cyclic", "symmetric", "dihedral", "product")


def _parse_int(s: str, i: int) -> tuple[int, int]:
    j = i
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == i:
        raise SpecParseError(f"expected an integer at position {i}", position=i)
    return int(s[i:j]), j


def _parse_expr(s: str, i: int) -> tuple[Group, int]:
    for head in _HEADS:
        if s.startswith(head + ":", i):
            i += len(head) + 1
            if head == "product":
                left, i = _parse_expr(s, i)
                if i >= len(s) or s[i] != ",":
                    raise SpecParseError(
                        f"expected ',' between product factors at position {i}",
                        position=i,
                    )
                right, i = _parse_expr(s, i + 1)
                return make_direct_product(left, right), i
            n, i = _parse_int(s, i)
            if head == "cyclic":
                return make_cyclic(n), i
            if head == "symmetric":
                return make_symmetric(n), i
            return make_dihedral(n), i
    raise SpecParseError(
        f"expected one of {_HEADS} at position {i}", position=i
    )


def parse_group_expr(expr: str) -> Group:
    """Parse the construction grammar: cyclic:n | symmetric:n | dihedral:n | product:a,b."""
    group, i = _parse_expr(expr, 0)
    if i != len(expr):
        raise SpecParseError(f"trailing text after expression at position {i}", position=i)
    return group


def group_from_json(obj: dict) -> Group:
    """Build a validated Group from its JSON description."""
    kind = obj.get("kind")
    if kind == "cayley":
        g = from_cayley_table(obj["table"])
        if "order" in obj and obj["order"] != g.order:
            raise SpecParseError(
                f"declared order {obj['order']} does not match table size {g.order}"
            )
        return g
    if kind == "perm":
        return from_permutations(obj["degree"], obj["generators"])
    if kind == "spec":
        return parse_group_expr(obj["expr"])
    raise SpecParseError(f"unknown group kind {kind!r}")


def group_to_json(g: Group) -> dict:
    """Canonical emission: the full Cayley table (byte-stable for equal inputs)."""
    return {"kind": "cayley", "order": g.order, "table": [list(row) for row in g.table]}


def _group_ref(g: Group) -> Union[dict, str]:
    if g.name.startswith(_HEADS):
        try:
            parse_group_expr(g.name)
            return {"kind": "spec", "expr": g.name}
        except SpecParseError:
            pass
    return group_to_json(g)


def function_to_json(f: GroupFunction) -> dict:
    return {
        "domain": _group_ref(f.domain),
        "codomain": _group_ref(f.codomain),
        "values": list(f.values),
    }


def _group_from_ref(ref) -> Group:
    if isinstance(ref, str):
        return parse_group_expr(ref)
    return group_from_json(ref)


def function_from_json(obj: dict) -> GroupFunction:
    return GroupFunction(
        _group_from_ref(obj["domain"]),
        _group_from_ref(obj["codomain"]),
        obj["values"],
    )


def load_group(source: str) -> Group:
    """Resolve a CLI group argument: grammar expression or path to a JSON file."""
    if source.startswith(_HEADS):
        return parse_group_expr(source)
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            return group_from_json(json.load(fh))
    raise SpecParseError(
        f"{source!r} is neither a grammar expression ({', '.join(_HEADS)}) "
        "nor an existing JSON file"
    )


def canonical_json(obj) -> str:
    """Deterministic byte-stable JSON emission."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pretty_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
