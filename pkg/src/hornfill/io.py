"""JSON formats for every object kind, and deterministic writers.

All dumps are byte-deterministic: keys sorted, two-space indent, one
trailing newline.  Loaders validate shape up front so malformed input
fails as InputError before any construction work starts.
"""

import json
from fractions import Fraction

from .cat import Finite2Category, FiniteCategory
from .descent import Cover
from .errors import InputError
from .groupoid import FiniteGroup, GroupAction
from .sset import SimplexRef, SimplicialSet


def dumps(data):
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def load_path(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _require(data, keys, what):
    if not isinstance(data, dict):
        raise InputError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InputError(f"{what} is missing keys {missing}")


# ---------------------------------------------------------------------------
# simplicial sets


def sset_to_json(x):
    gens = {str(d): list(x.generators(d)) for d in range(x.dim_cap + 1) if x.generators(d)}
    faces = {
        g: [ref.to_json() for ref in x.gen_faces[g]]
        for g in sorted(x.gen_faces)
    }
    return {"dim_cap": x.dim_cap, "generators": gens, "faces": faces}


def sset_from_json(data):
    _require(data, ("dim_cap", "generators", "faces"), "simplicial set")
    try:
        generators = {int(d): list(ids) for d, ids in data["generators"].items()}
    except (TypeError, ValueError, AttributeError):
        raise InputError("generators must map dimensions to id lists")
    faces = {}
    for g, refs in data["faces"].items():
        faces[g] = [SimplexRef.from_json(r) for r in refs]
    return SimplicialSet(data["dim_cap"], generators, faces)


# ---------------------------------------------------------------------------
# categories


def category_to_json(c):
    return {
        "objects": list(c.objects),
        "morphisms": [
            {"id": m, "src": s, "tgt": t} for m, (s, t) in sorted(c.mor.items())
        ],
        "identities": {x: c.identity[x] for x in c.objects},
        "compose": [
            [g, f, h] for (g, f), h in sorted(c.compose_table.items())
        ],
    }


def category_from_json(data):
    _require(data, ("objects", "morphisms", "identities", "compose"), "category")
    morphisms = {}
    for row in data["morphisms"]:
        _require(row, ("id", "src", "tgt"), "morphism")
        morphisms[row["id"]] = (row["src"], row["tgt"])
    compose = {}
    for row in data["compose"]:
        if len(row) != 3:
            raise InputError(f"compose rows are [g, f, gf], got {row!r}")
        compose[(row[0], row[1])] = row[2]
    return FiniteCategory(
        tuple(data["objects"]), morphisms, dict(data["identities"]), compose
    )


def two_category_to_json(c2):
    base = category_to_json(c2.cat)
    return {
        "objects": base["objects"],
        "morphisms": base["morphisms"],
        "identities": base["identities"],
        "compose": base["compose"],
        "two_cells": [
            {"id": a, "src": s, "tgt": t} for a, (s, t) in sorted(c2.two.items())
        ],
        "two_identities": {f: c2.two_identity[f] for f in sorted(c2.one)},
        "vcompose": [[b, a, c] for (b, a), c in sorted(c2.vcompose.items())],
        "hcompose": [[b, a, c] for (b, a), c in sorted(c2.hcompose.items())],
    }


def two_category_from_json(data):
    _require(
        data,
        (
            "objects", "morphisms", "identities", "compose",
            "two_cells", "two_identities", "vcompose", "hcompose",
        ),
        "two-category",
    )
    one_cells = {}
    for row in data["morphisms"]:
        _require(row, ("id", "src", "tgt"), "one-cell")
        one_cells[row["id"]] = (row["src"], row["tgt"])
    two_cells = {}
    for row in data["two_cells"]:
        _require(row, ("id", "src", "tgt"), "two-cell")
        two_cells[row["id"]] = (row["src"], row["tgt"])
    def table(rows, what):
        out = {}
        for row in rows:
            if len(row) != 3:
                raise InputError(f"{what} rows are [b, a, ba], got {row!r}")
            out[(row[0], row[1])] = row[2]
        return out
    compose = table(data["compose"], "compose")
    return Finite2Category(
        tuple(data["objects"]),
        one_cells,
        dict(data["identities"]),
        compose,
        two_cells,
        dict(data["two_identities"]),
        table(data["vcompose"], "vcompose"),
        table(data["hcompose"], "hcompose"),
    )


# ---------------------------------------------------------------------------
# groups, actions, covers


def group_to_json(g):
    return {
        "elements": list(g.elements),
        "mul": [[a, b, c] for (a, b), c in sorted(g.mul.items())],
    }


def group_from_json(data):
    _require(data, ("elements", "mul"), "group")
    mul = {}
    for row in data["mul"]:
        if len(row) != 3:
            raise InputError(f"mul rows are [a, b, ab], got {row!r}")
        mul[(row[0], row[1])] = row[2]
    return FiniteGroup(tuple(data["elements"]), mul)


def action_to_json(a):
    data = {
        "group": group_to_json(a.group),
        "carrier": list(a.carrier),
        "act": [[g, x, y] for (g, x), y in sorted(a.act.items())],
    }
    if a.base is not None:
        b_set, pi = a.base
        data["base"] = {"set": list(b_set), "pi": dict(pi)}
    return data


def action_from_json(data):
    _require(data, ("group", "carrier", "act"), "action")
    group = group_from_json(data["group"])
    act = {}
    for row in data["act"]:
        if len(row) != 3:
            raise InputError(f"act rows are [g, x, gx], got {row!r}")
        act[(row[0], row[1])] = row[2]
    base = None
    if "base" in data and data["base"] is not None:
        _require(data["base"], ("set", "pi"), "action base")
        base = (tuple(data["base"]["set"]), dict(data["base"]["pi"]))
    return GroupAction(group, tuple(data["carrier"]), act, base=base)


def cover_to_json(cover):
    return cover.to_json()


def cover_from_json(data):
    _require(data, ("E", "B", "pi"), "cover")
    return Cover.from_json(data)


def fraction_to_json(q):
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}
