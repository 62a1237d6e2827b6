"""Rank-one state sums on branched triangulated closed surfaces.

A surface is a list of triangles, each with its own local vertex order
(corners 0, 1, 2) and an orientation sign, plus a pairing of edge slots.
Slots are 01, 12, 02 (indices 0, 1, 2).  A pairing is *flipped* when the
two slots' own edge directions are opposite on the glued edge; one-vertex
polygon models need this, Pachner moves never create it.

Labels are stored per triangle as (g01, g12) with g02 = g01 g12, so
flatness inside a triangle is structural and validation reduces to the
pairings.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field, replace
from typing import Sequence

from .group import FiniteGroup, surface_relation_holds
from .phase import Phase, TwoCocycle, ensure_normalized, is_cocycle

log = logging.getLogger(__name__)

SLOTS = ("01", "12", "02")
SLOT_ENDS = ((0, 1), (1, 2), (0, 2))
# +1 when the positively oriented boundary of a sign +1 triangle runs along
# the slot's own direction
SLOT_SENSE = (1, 1, -1)


class MoveUnavailable(Exception):
    """The requested move is not branch-compatible at this site."""


class SurfaceError(ValueError):
    def __init__(self, diagnostics: "Diagnostics"):
        self.diagnostics = diagnostics
        first = diagnostics.errors[0]
        super().__init__(f"{first.kind}: {first.message}")


@dataclass(frozen=True)
class Pairing:
    t1: int
    s1: int
    t2: int
    s2: int
    flip: bool = False

    def ends(self):
        return (self.t1, self.s1), (self.t2, self.s2)


@dataclass(frozen=True)
class BranchedSurface:
    signs: tuple[int, ...]
    pairings: tuple[Pairing, ...]

    @property
    def n_triangles(self) -> int:
        return len(self.signs)


@dataclass(frozen=True)
class FlatLabeling:
    group: FiniteGroup
    g01: tuple[int, ...]
    g12: tuple[int, ...]

    def label(self, t: int, slot: int) -> int:
        if slot == 0:
            return self.g01[t]
        if slot == 1:
            return self.g12[t]
        return self.group.mul(self.g01[t], self.g12[t])

    def potentials(self, t: int) -> tuple[int, int, int]:
        """Group positions of the corners relative to corner 0."""
        return (self.group.identity, self.g01[t], self.group.mul(self.g01[t], self.g12[t]))


# diagnostics -------------------------------------------------------------

@dataclass
class Problem:
    kind: str
    witness: tuple
    message: str


@dataclass
class Diagnostics:
    errors: list[Problem] = field(default_factory=list)
    vertices: int = 0
    edges: int = 0
    faces: int = 0
    components: int = 0

    @property
    def valid(self) -> bool:
        return not self.errors

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def genus(self) -> int | None:
        """Total genus, summed over components."""
        if not self.valid:
            return None
        return (2 * self.components - self.euler) // 2

    def to_json(self) -> dict:
        return {"valid": self.valid, "euler": self.euler, "genus": self.genus,
                "vertices": self.vertices, "edges": self.edges, "faces": self.faces,
                "components": self.components,
                "errors": [{"kind": p.kind, "witness": list(p.witness), "message": p.message}
                           for p in self.errors]}


class _DSU:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def corner_pairs(p: Pairing):
    """Corner identifications made by one pairing."""
    (a0, a1), (b0, b1) = SLOT_ENDS[p.s1], SLOT_ENDS[p.s2]
    if p.flip:
        b0, b1 = b1, b0
    return ((p.t1, a0), (p.t2, b0)), ((p.t1, a1), (p.t2, b1))


def vertex_classes(s: BranchedSurface) -> dict[tuple[int, int], tuple[int, int]]:
    dsu = _DSU([(t, c) for t in range(s.n_triangles) for c in range(3)])
    for p in s.pairings:
        for x, y in corner_pairs(p):
            dsu.union(x, y)
    return {x: dsu.find(x) for x in dsu.p}


def validate(s: BranchedSurface, l: FlatLabeling | None = None) -> Diagnostics:
    d = Diagnostics()
    n = s.n_triangles
    seen: dict[tuple[int, int], int] = {}
    for i, p in enumerate(s.pairings):
        for t, slot in p.ends():
            if not (0 <= t < n and 0 <= slot < 3):
                d.errors.append(Problem("range", (i, t, slot), f"pairing {i} names a missing slot ({t}, {slot})"))
                continue
            if (t, slot) in seen:
                d.errors.append(Problem("closedness", (t, slot),
                                        f"slot ({t}, {SLOTS[slot]}) is paired twice (pairings {seen[t, slot]} and {i})"))
            seen[t, slot] = i
        if (p.t1, p.s1) == (p.t2, p.s2):
            d.errors.append(Problem("closedness", (p.t1, p.s1), f"pairing {i} glues a slot to itself"))
    for t in range(n):
        if s.signs[t] not in (1, -1):
            d.errors.append(Problem("sign", (t,), f"triangle {t} has sign {s.signs[t]}"))
        for slot in range(3):
            if (t, slot) not in seen:
                d.errors.append(Problem("closedness", (t, slot), f"slot ({t}, {SLOTS[slot]}) is unpaired"))
    if d.errors:
        return d

    for i, p in enumerate(s.pairings):
        a = s.signs[p.t1] * SLOT_SENSE[p.s1]
        b = s.signs[p.t2] * SLOT_SENSE[p.s2]
        if (a == b) != p.flip:
            d.errors.append(Problem("orientation", (i, p.t1, p.s1, p.t2, p.s2),
                                    f"pairing {i} glues slots with incompatible orientations"))
        if l is not None:
            g = l.group
            x, y = l.label(p.t1, p.s1), l.label(p.t2, p.s2)
            if (g.inv(y) if p.flip else y) != x:
                d.errors.append(Problem("flatness", (i, p.t1, p.s1, p.t2, p.s2),
                                        f"pairing {i}: labels {g.names[x]} and {g.names[y]} disagree"))

    if l is not None and (len(l.g01) != n or len(l.g12) != n):
        d.errors.append(Problem("labels", (n,), "labeling does not match the triangle count"))

    classes = vertex_classes(s)
    d.vertices = len(set(classes.values()))
    d.edges = len(s.pairings)
    d.faces = n
    comp = _DSU(range(n))
    for p in s.pairings:
        comp.union(p.t1, p.t2)
    d.components = len({comp.find(t) for t in range(n)})
    return d


def components(s: BranchedSurface) -> list[list[int]]:
    comp = _DSU(range(s.n_triangles))
    for p in s.pairings:
        comp.union(p.t1, p.t2)
    out: dict[int, list[int]] = {}
    for t in range(s.n_triangles):
        out.setdefault(comp.find(t), []).append(t)
    return list(out.values())


# evaluation --------------------------------------------------------------

def evaluate(theta: TwoCocycle, s: BranchedSurface, l: FlatLabeling) -> Phase:
    """Sum over triangles of sign * theta(g01, g12), exact in Q/Z.

    A flipped pairing contributes the folding term -sense * theta(g, g^-1).
    """
    if theta.group != l.group:
        raise ValueError("cocycle and labeling use different groups")
    if not is_cocycle(theta):
        raise ValueError("state sum needs a cocycle")
    diag = validate(s, l)
    if not diag.valid:
        raise SurfaceError(diag)
    theta = ensure_normalized(theta)
    g = l.group
    total = 0
    for t, sign in enumerate(s.signs):
        total += sign * int(theta.values[l.g01[t], l.g12[t]])
    for p in s.pairings:
        if p.flip:
            x = l.label(p.t1, p.s1)
            total -= s.signs[p.t1] * SLOT_SENSE[p.s1] * int(theta.values[x, g.inv(x)])
    return Phase(total, theta.den)


def reverse_orientation(s: BranchedSurface, l: FlatLabeling) -> tuple[BranchedSurface, FlatLabeling]:
    return BranchedSurface(tuple(-x for x in s.signs), s.pairings), l


def disjoint_union(a: tuple[BranchedSurface, FlatLabeling],
                   b: tuple[BranchedSurface, FlatLabeling]) -> tuple[BranchedSurface, FlatLabeling]:
    (s1, l1), (s2, l2) = a, b
    if l1.group != l2.group:
        raise ValueError("components use different groups")
    k = s1.n_triangles
    pairs = s1.pairings + tuple(replace(p, t1=p.t1 + k, t2=p.t2 + k) for p in s2.pairings)
    return (BranchedSurface(s1.signs + s2.signs, pairs),
            FlatLabeling(l1.group, l1.g01 + l2.g01, l1.g12 + l2.g12))


# builders ----------------------------------------------------------------

def build_sphere(g: FiniteGroup) -> tuple[BranchedSurface, FlatLabeling]:
    """Two triangles glued along all three edges, identity labels."""
    e = g.identity
    s = BranchedSurface((1, -1), tuple(Pairing(0, k, 1, k) for k in range(3)))
    return s, FlatLabeling(g, (e, e), (e, e))


def build_torus(g: FiniteGroup, a: int, b: int) -> tuple[BranchedSurface, FlatLabeling]:
    """Square with diagonal, one vertex: triangles (a, b) and (b, a)."""
    g.check(a, b)
    if g.mul(a, b) != g.mul(b, a):
        raise ValueError("torus holonomies must commute")
    s = BranchedSurface((1, -1), (Pairing(0, 0, 1, 1), Pairing(0, 1, 1, 0), Pairing(0, 2, 1, 2)))
    return s, FlatLabeling(g, (a, b), (b, a))


def build_genus_g(g: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> tuple[BranchedSurface, FlatLabeling]:
    """Fan triangulation of the 4g-gon with boundary word prod a_i b_i a_i^-1 b_i^-1.

    Polygon corners P_0..P_{4g-1}; triangle k-1 is (P_0, P_k, P_{k+1}).
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    if not pairs:
        return build_sphere(g)
    if not surface_relation_holds(g, pairs):
        raise ValueError("holonomies violate the surface relation")
    n = 4 * len(pairs)
    word = []  # (letter id, exponent) per polygon side
    for i, (a, b) in enumerate(pairs):
        word += [(2 * i, 1), (2 * i + 1, 1), (2 * i, -1), (2 * i + 1, -1)]
    hol = {2 * i: a for i, (a, b) in enumerate(pairs)} | {2 * i + 1: b for i, (a, b) in enumerate(pairs)}
    side = [hol[x] if ex == 1 else g.inv(hol[x]) for x, ex in word]
    pos = [g.identity]
    for h in side:
        pos.append(g.mul(pos[-1], h))
    assert pos[-1] == g.identity

    ntri = n - 2
    g01 = tuple(pos[k] for k in range(1, n - 1))
    g12 = tuple(side[k] for k in range(1, n - 1))

    # polygon side k -> (triangle, slot, slot runs along P_k -> P_{k+1})
    def side_slot(k):
        if k == 0:
            return 0, 0, True
        if k == n - 1:
            return ntri - 1, 2, False
        return k - 1, 1, True

    pairings = [Pairing(k - 2, 2, k - 1, 0) for k in range(2, n - 1)]  # diagonals P_0 P_k
    first: dict[int, int] = {}
    for k, (x, ex) in enumerate(word):
        if x not in first:
            first[x] = k
            continue
        j = first[x]
        tj, sj, fwd_j = side_slot(j)
        tk, sk, fwd_k = side_slot(k)
        # the sides carry opposite exponents, so they run opposite ways
        flip = fwd_j == fwd_k
        pairings.append(Pairing(tj, sj, tk, sk, flip))
    s = BranchedSurface((1,) * ntri, tuple(pairings))
    lab = FlatLabeling(g, g01, g12)
    diag = validate(s, lab)
    assert diag.valid and diag.genus == len(pairs), diag
    return s, lab


# Pachner moves -----------------------------------------------------------

def positive_cycle(s: BranchedSurface, t: int, keys=(0, 1, 2)):
    a, b, c = keys
    return (a, b, c) if s.signs[t] == 1 else (a, c, b)


def _rotate_to_end(cycle, x):
    """Rotate a 3-cycle so that x is last."""
    i = cycle.index(x)
    return cycle[i + 1:] + cycle[:i + 1]


def _is_rotation(seq, cycle) -> bool:
    return tuple(seq) in {tuple(cycle[i:] + cycle[:i]) for i in range(3)}


def _retriangulate(s, l, removed, cycles, rank, pot, outer):
    """Replace triangles `removed` with new ones.

    cycles: positively oriented key triples; rank/pot: per key order and
    group position; outer: old slot -> (lo key, hi key) in old direction.
    """
    g = l.group
    for (lo, hi) in outer.values():
        if rank[lo] > rank[hi]:
            raise MoveUnavailable("new branching would reverse a boundary edge")
    keep = [t for t in range(s.n_triangles) if t not in removed]
    newid = {t: i for i, t in enumerate(keep)}
    signs = [s.signs[t] for t in keep]
    g01 = [l.g01[t] for t in keep]
    g12 = [l.g12[t] for t in keep]
    edge_slot: dict[frozenset, list] = {}
    for cyc in cycles:
        order = sorted(cyc, key=lambda k: rank[k])
        tid = len(signs)
        signs.append(1 if _is_rotation(order, cyc) else -1)
        g01.append(g.mul(g.inv(pot[order[0]]), pot[order[1]]))
        g12.append(g.mul(g.inv(pot[order[1]]), pot[order[2]]))
        for slot, (i, j) in enumerate(SLOT_ENDS):
            edge_slot.setdefault(frozenset((order[i], order[j])), []).append((tid, slot))

    def remap(end):
        t, slot = end
        if t in newid:
            return newid[t], slot
        lo, hi = outer[end]
        (hit,) = edge_slot[frozenset((lo, hi))]
        return hit

    pairings = []
    outer_edges = {frozenset(v) for v in outer.values()}
    for p in s.pairings:
        a, b = p.ends()
        if (a[0] in removed and a not in outer) or (b[0] in removed and b not in outer):
            continue
        (t1, s1), (t2, s2) = remap(a), remap(b)
        pairings.append(Pairing(t1, s1, t2, s2, p.flip))
    for edge, slots in edge_slot.items():
        if edge in outer_edges:
            continue
        (t1, s1), (t2, s2) = slots
        pairings.append(Pairing(t1, s1, t2, s2))
    return BranchedSurface(tuple(signs), tuple(pairings)), FlatLabeling(g, tuple(g01), tuple(g12))


def move_13(s, l, t: int, position: int = 3, label: int | None = None):
    """Star a triangle at a new vertex w.

    position: rank of w among the corners (0..3); label: holonomy from
    corner 0 to w (default the identity).
    """
    g = l.group
    if not 0 <= t < s.n_triangles:
        raise MoveUnavailable(f"no triangle {t}")
    if not 0 <= position <= 3:
        raise ValueError("position must be in 0..3")
    h = g.identity if label is None else label
    corners = [("c", 0), ("c", 1), ("c", 2)]
    order = corners[:position] + ["w"] + corners[position:]
    rank = {k: i for i, k in enumerate(order)}
    p0, p1, p2 = l.potentials(t)
    pot = {("c", 0): p0, ("c", 1): p1, ("c", 2): p2, "w": g.mul(p0, h)}
    x, y, z = positive_cycle(s, t, corners)
    cycles = [(x, y, "w"), (y, z, "w"), (z, x, "w")]
    outer = {(t, k): (corners[i], corners[j]) for k, (i, j) in enumerate(SLOT_ENDS)}
    return _retriangulate(s, l, {t}, cycles, rank, pot, outer)


def move_22(s, l, pairing: int, choice: int = 0):
    """Flip the diagonal glued by pairing `pairing`.

    choice picks among the compatible branchings of the new quadrilateral.
    """
    if not 0 <= pairing < len(s.pairings):
        raise MoveUnavailable(f"no pairing {pairing}")
    p = s.pairings[pairing]
    if p.t1 == p.t2:
        raise MoveUnavailable("edge is glued to its own triangle")
    if p.flip:
        raise MoveUnavailable("edge directions disagree across this pairing")
    g = l.group
    A, B = p.t1, p.t2
    a_lo, a_hi = SLOT_ENDS[p.s1]
    b_lo, b_hi = SLOT_ENDS[p.s2]
    key = {("A", c): ("A", c) for c in range(3)}
    key |= {("B", c): ("B", c) for c in range(3)}
    key[("B", b_lo)] = ("A", a_lo)
    key[("B", b_hi)] = ("A", a_hi)
    P, Q = ("A", a_lo), ("A", a_hi)
    R = ("A", 3 - a_lo - a_hi)
    R2 = ("B", 3 - b_lo - b_hi)

    potA = l.potentials(A)
    potB = l.potentials(B)
    shift = g.mul(potA[a_lo], g.inv(potB[b_lo]))
    pot = {("A", c): potA[c] for c in range(3)}
    pot[R2] = g.mul(shift, potB[R2[1]])
    if g.mul(shift, potB[b_hi]) != potA[a_hi]:
        raise ValueError("labeling is not flat across the flipped edge")

    cycA = positive_cycle(s, A, [("A", c) for c in range(3)])
    cycB = tuple(key[k] for k in positive_cycle(s, B, [("B", c) for c in range(3)]))
    x, y, _ = _rotate_to_end(cycA, R)
    if not _is_rotation((y, x, R2), cycB):
        raise MoveUnavailable("triangles induce the same orientation on the edge")
    cycles = [(R2, y, R), (R, x, R2)]

    outer = {}
    for (t, tag, lo, hi) in ((A, "A", a_lo, a_hi), (B, "B", b_lo, b_hi)):
        for k, (i, j) in enumerate(SLOT_ENDS):
            if (i, j) != (lo, hi):
                outer[(t, k)] = (key[(tag, i)], key[(tag, j)])
    constraints = list(outer.values())
    verts = [P, Q, R, R2]
    orders = [o for o in itertools.permutations(verts)
              if all(o.index(lo) < o.index(hi) for lo, hi in constraints)]
    if not orders:
        raise MoveUnavailable("no branching of the new quadrilateral is compatible")
    order = orders[choice % len(orders)]
    rank = {k: i for i, k in enumerate(order)}
    return _retriangulate(s, l, {A, B}, cycles, rank, pot, outer)


def move_31(s, l, vertex: tuple[int, int]):
    """Remove a vertex of degree three, merging its star into one triangle.

    vertex: any corner (triangle, corner) of the vertex to remove.
    """
    g = l.group
    classes = vertex_classes(s)
    if vertex not in classes:
        raise MoveUnavailable(f"no corner {vertex}")
    cls = classes[vertex]
    star = [x for x, c in classes.items() if c == cls]
    tris = {t for t, _ in star}
    if len(star) != 3 or len(tris) != 3:
        raise MoveUnavailable("vertex does not have degree three")
    wc = dict(star)  # triangle -> corner of w
    w_slots = {(t, k) for t in tris for k, (i, j) in enumerate(SLOT_ENDS) if wc[t] in (i, j)}
    inner = [p for p in s.pairings if p.ends()[0] in w_slots or p.ends()[1] in w_slots]
    if len(inner) != 3 or any(not (a in w_slots and b in w_slots) for a, b in (p.ends() for p in inner)):
        raise MoveUnavailable("star of the vertex is not a disk of three triangles")
    if any(p.flip for p in inner):
        raise MoveUnavailable("edge directions disagree inside the star")

    dsu = _DSU([(t, c) for t in tris for c in range(3)])
    for p in inner:
        for x, y in corner_pairs(p):
            dsu.union(x, y)
    outer_corners = [(t, c) for t in tris for c in range(3) if c != wc[t]]
    roots = {dsu.find(x) for x in outer_corners}
    if len(roots) != 3:
        raise MoveUnavailable("link of the vertex is not a triangle")
    key = {x: ("v", dsu.find(x)) for x in outer_corners}

    pot = {}
    for t in tris:
        pt = l.potentials(t)
        base = g.inv(pt[wc[t]])
        for c in range(3):
            if c != wc[t]:
                val = g.mul(base, pt[c])
                k = key[(t, c)]
                if pot.setdefault(k, val) != val:
                    raise ValueError("labeling is not flat around the vertex")

    succ = {}
    for t in tris:
        u, v, _ = _rotate_to_end(positive_cycle(s, t), wc[t])
        succ[key[(t, u)]] = key[(t, v)]
    k0 = next(iter(succ))
    cyc = (k0, succ[k0], succ[succ[k0]])
    if succ[cyc[2]] != k0:
        raise MoveUnavailable("star orientation is inconsistent")

    outer = {}
    for t in tris:
        for k, (i, j) in enumerate(SLOT_ENDS):
            if wc[t] not in (i, j):
                outer[(t, k)] = (key[(t, i)], key[(t, j)])
    orders = [o for o in itertools.permutations(cyc)
              if all(o.index(lo) < o.index(hi) for lo, hi in outer.values())]
    if not orders:
        raise MoveUnavailable("outer edges of the star form a directed cycle")
    rank = {k: i for i, k in enumerate(orders[0])}
    return _retriangulate(s, l, tris, [cyc], rank, pot, outer)


MOVES = ("1-3", "3-1", "2-2")


def pachner(s, l, kind: str, site, **kw):
    if kind == "1-3":
        return move_13(s, l, site, **kw)
    if kind == "2-2":
        return move_22(s, l, site, **kw)
    if kind == "3-1":
        return move_31(s, l, site)
    raise ValueError(f"unknown move {kind!r}")


def degree_three_vertices(s: BranchedSurface) -> list[tuple[int, int]]:
    classes = vertex_classes(s)
    members: dict = {}
    for x, c in classes.items():
        members.setdefault(c, []).append(x)
    return sorted(min(v) for v in members.values() if len(v) == 3)


# random instances and fuzzing --------------------------------------------

def random_handles(g: FiniteGroup, genus: int, rng: random.Random, tries: int = 1000):
    """Uniform-ish handle holonomies satisfying the surface relation."""
    for _ in range(tries):
        pairs = [(rng.randrange(g.order), rng.randrange(g.order)) for _ in range(genus)]
        if surface_relation_holds(g, pairs):
            return pairs
    # fall back to commuting pairs, which always exist
    return [(a, a) for a, _ in pairs]


@dataclass
class MoveRecord:
    kind: str
    site: object
    applied: bool


def random_move(s, l, rng: random.Random):
    """Try one random move; returns (s, l, record)."""
    kind = rng.choice(MOVES)
    try:
        if kind == "1-3":
            t = rng.randrange(s.n_triangles)
            site = (t, rng.randrange(4), rng.randrange(l.group.order))
            s2, l2 = move_13(s, l, t, position=site[1], label=site[2])
        elif kind == "2-2":
            site = rng.randrange(len(s.pairings))
            s2, l2 = move_22(s, l, site, choice=rng.randrange(24))
        else:
            cands = degree_three_vertices(s)
            if not cands:
                raise MoveUnavailable("no vertex of degree three")
            site = rng.choice(cands)
            s2, l2 = move_31(s, l, site)
    except MoveUnavailable:
        return s, l, MoveRecord(kind, None, False)
    return s2, l2, MoveRecord(kind, site, True)


@dataclass
class FuzzCase:
    index: int
    genus: int
    handles: list
    initial: Phase
    values: list
    records: list

    @property
    def constant(self) -> bool:
        return all(v == self.initial for v in self.values)

    @property
    def attempted(self) -> int:
        return len(self.records)

    @property
    def skipped(self) -> int:
        return sum(not r.applied for r in self.records)

    def to_json(self) -> dict:
        return {"case": self.index, "genus": self.genus, "handles": [list(h) for h in self.handles],
                "phase": str(self.initial), "constant": self.constant,
                "moves_applied": self.attempted - self.skipped, "moves_skipped": self.skipped}


def fuzz_case(theta: TwoCocycle, rng: random.Random, index: int, max_moves: int = 20,
              max_genus: int = 3) -> FuzzCase:
    """Random labeled surface, then a random move sequence of length <= max_moves."""
    g = theta.group
    genus = rng.randrange(max_genus + 1)
    handles = random_handles(g, genus, rng) if genus else []
    s, l = build_genus_g(g, handles)
    start = evaluate(theta, s, l)
    values, records = [], []
    for _ in range(rng.randint(1, max_moves)):
        s, l, rec = random_move(s, l, rng)
        records.append(rec)
        if rec.applied:
            values.append(evaluate(theta, s, l))
    return FuzzCase(index, genus, handles, start, values, records)


def pachner_fuzz(theta: TwoCocycle, seed: int, moves: int = 20, cases: int = 100) -> list[FuzzCase]:
    """Cases are seeded individually so that the report is independent of batching."""
    return [fuzz_case(theta, random.Random(f"{seed}:{i}"), i, moves) for i in range(cases)]
