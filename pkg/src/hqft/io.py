"""Loading JSON documents, with group references resolved relative to the referrer."""

from __future__ import annotations

import json
from pathlib import Path

from .cobordism import GSurface, surface_from_json
from .crossed import CrossedAlgebra, algebra_from_json
from .group import FiniteGroup, group_from_json, group_to_json
from .phase import OneCochain, TwoCocycle, cochain_from_json, cocycle_from_json
from .pi2 import PiTwoFrobenius, pi2_from_json
from .statesum import SLOTS, BranchedSurface, FlatLabeling, Pairing


class InputError(ValueError):
    """A document is missing, unreadable or malformed."""


def read_json(path: str | Path) -> dict:
    p = Path(path)
    try:
        return json.loads(p.read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {p}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def resolve_group(ref, base: Path | None = None) -> FiniteGroup:
    """ref is an inline group document or a path relative to base."""
    if isinstance(ref, str):
        p = Path(ref)
        if not p.is_absolute() and base is not None:
            p = base / p
        doc = read_json(p)
        # a file may hold a group document or any document with a "group" key
        if "table" not in doc and "group" in doc:
            return resolve_group(doc["group"], p.parent)
        return resolve_group(doc, p.parent)
    if not isinstance(ref, dict):
        raise InputError("group reference must be a document or a file path")
    return group_from_json(ref)


def load_group(path) -> FiniteGroup:
    return resolve_group(str(path))


def _group_of(doc: dict, base: Path, group: FiniteGroup | None, key: str = "group") -> FiniteGroup:
    if key in doc:
        return resolve_group(doc[key], base)
    if group is None:
        raise InputError(f"document has no {key!r} entry and no group was given")
    return group


def load_cocycle(path, group: FiniteGroup | None = None) -> TwoCocycle:
    path = Path(path)
    doc = read_json(path)
    return cocycle_from_json(doc, _group_of(doc, path.parent, group))


def load_cochain(path, group: FiniteGroup | None = None) -> OneCochain:
    path = Path(path)
    doc = read_json(path)
    return cochain_from_json(doc, _group_of(doc, path.parent, group))


def load_algebra(path, group: FiniteGroup | None = None) -> CrossedAlgebra:
    path = Path(path)
    doc = read_json(path)
    return algebra_from_json(doc, _group_of(doc, path.parent, group))


def load_pi2(path) -> PiTwoFrobenius:
    path = Path(path)
    doc = read_json(path)
    if isinstance(doc.get("abelian_group"), str):
        doc = dict(doc, abelian_group=group_to_json(resolve_group(doc["abelian_group"], path.parent)))
    return pi2_from_json(doc)


def load_gsurface(path, group: FiniteGroup) -> GSurface:
    return surface_from_json(read_json(path), group)


# triangulated surfaces -------------------------------------------------------

def _el(g: FiniteGroup, x) -> int:
    if isinstance(x, str):
        return g.index(x)
    g.check(x)
    return int(x)


def _slot(x) -> int:
    if isinstance(x, int) and 0 <= x < 3:
        return x
    if isinstance(x, str) and x in SLOTS:
        return SLOTS.index(x)
    raise InputError(f"unknown edge slot {x!r}; expected one of {SLOTS}")


def triangulation_from_json(doc: dict, group: FiniteGroup) -> tuple[BranchedSurface, FlatLabeling]:
    """{"triangles": [{"sign", "g01", "g12"}], "pairings": [[[t, slot], [t', slot'], flip?]]}"""
    try:
        tris = doc["triangles"]
        signs = tuple(int(t["sign"]) for t in tris)
        g01 = tuple(_el(group, t["g01"]) for t in tris)
        g12 = tuple(_el(group, t["g12"]) for t in tris)
        pairs = []
        for p in doc["pairings"]:
            (t1, s1), (t2, s2) = p[0], p[1]
            flip = bool(p[2]) if len(p) > 2 else False
            pairs.append(Pairing(int(t1), _slot(s1), int(t2), _slot(s2), flip))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed surface document: {exc}") from None
    return BranchedSurface(signs, tuple(pairs)), FlatLabeling(group, g01, g12)


def triangulation_to_json(s: BranchedSurface, l: FlatLabeling) -> dict:
    names = l.group.names
    return {
        "triangles": [{"sign": sg, "g01": names[a], "g12": names[b]} for sg, a, b in zip(s.signs, l.g01, l.g12)],
        "pairings": [[[p.t1, SLOTS[p.s1]], [p.t2, SLOTS[p.s2]]] + ([True] if p.flip else []) for p in s.pairings],
    }


def load_triangulation(path, group: FiniteGroup | None = None):
    path = Path(path)
    doc = read_json(path)
    g = _group_of(doc, path.parent, group)
    return triangulation_from_json(doc, g)
