"""Finite groups given by explicit Cayley tables.

Elements are plain integer indices into the table; names are only used
for display and for parsing element names in expressions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 64


class GroupError(ValueError):
    """A table failed one of the group axioms."""

    def __init__(self, axiom: str, witness: tuple, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} fails at {witness}")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    cayley: np.ndarray
    identity: int
    inverse: np.ndarray
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        self.cayley.setflags(write=False)
        self.inverse.setflags(write=False)
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(self.order)))

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and bool(np.array_equal(self.cayley, other.cayley))
        )

    def __hash__(self):
        return hash(self.cayley.tobytes())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    # arithmetic --------------------------------------------------------

    def check(self, *elements: int) -> None:
        for a in elements:
            if not (isinstance(a, (int, np.integer)) and 0 <= a < self.order):
                raise ValueError(f"element {a!r} is not in a group of order {self.order}")

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def prod(self, elements: Iterable[int]) -> int:
        out = self.identity
        for a in elements:
            out = int(self.cayley[out, a])
        return out

    def conj(self, b: int, a: int) -> int:
        """b a b^-1"""
        return int(self.cayley[self.cayley[b, a], self.inverse[b]])

    def comm(self, a: int, b: int) -> int:
        """a b a^-1 b^-1"""
        return self.prod((a, b, self.inv(a), self.inv(b)))

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element name {name!r}") from None

    def name(self, a: int) -> str:
        return self.names[a]


def group_arithmetic(g: FiniteGroup, op: str, *args: int) -> int:
    g.check(*args)
    if op == "multiply":
        return g.mul(*args)
    if op == "inverse":
        return g.inv(*args)
    if op == "conjugate":
        return g.conj(*args)
    if op == "commutator":
        return g.comm(*args)
    raise ValueError(f"unknown operation {op!r}")


def build_from_table(table, names: Sequence[str] | None = None) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    Raises GroupError naming the first failed axiom with a witness tuple.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValueError("a group table must be a nonempty square array")
    n = t.shape[0]
    if n > MAX_ORDER:
        raise ValueError(f"group order {n} exceeds the supported maximum {MAX_ORDER}")
    if names is not None and len(names) != n:
        raise ValueError(f"{len(names)} names given for {n} elements")
    if t.min() < 0 or t.max() >= n:
        i, j = np.argwhere((t < 0) | (t >= n))[0]
        raise GroupError("closure", (int(i), int(j)))

    rng = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], rng) and np.array_equal(t[:, e], rng)]
    if not ids:
        raise GroupError("identity", (), "no two-sided identity element")
    e = ids[0]

    inverse = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero((t[a] == e) & (t[:, a] == e))
        if len(hits) == 0:
            raise GroupError("inverse", (a,), f"no inverse for element {a}")
        inverse[a] = hits[0]

    # exhaustive associativity: (ab)c == a(bc)
    left = t[t[:, :, None], rng[None, None, :]]  # t[t[a,b], c]
    right = t[rng[:, None, None], t[None, :, :]]  # t[a, t[b,c]]
    bad = np.argwhere(left != right)
    if len(bad):
        raise GroupError("associativity", tuple(int(x) for x in bad[0]))

    for a in range(n):
        if len(set(t[a])) != n:
            raise GroupError("latin-square", (a,), f"row {a} is not a permutation")
        if len(set(t[:, a])) != n:
            raise GroupError("latin-square", (a,), f"column {a} is not a permutation")

    return FiniteGroup(t.copy(), int(e), inverse, tuple(names) if names is not None else ())


def build_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    r = np.arange(n)
    names = ["e"] + [f"g{i}" for i in range(1, n)]
    return build_from_table((r[:, None] + r[None, :]) % n, names)


def build_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product, element (i, j) stored at index i*|h| + j."""
    m = h.order
    idx = np.arange(g.order * m)
    gi, hi = idx // m, idx % m
    table = g.cayley[gi[:, None], gi[None, :]] * m + h.cayley[hi[:, None], hi[None, :]]
    names = []
    for i in range(g.order):
        for j in range(m):
            if i == g.identity and j == h.identity:
                names.append("e")
            else:
                names.append(f"({g.names[i]},{h.names[j]})")
    if len(set(names)) != len(names):
        names = [str(k) for k in range(len(names))]
    return build_from_table(table, names)


def build_permutation_group(perms: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteGroup:
    """Group table of a list of permutations closed under composition.

    The product a*b means "apply b, then a".
    """
    perms = [tuple(p) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            c = tuple(a[b[k]] for k in range(len(b)))
            if c not in pos:
                raise ValueError("permutations are not closed under composition")
            table[i, j] = pos[c]
    return build_from_table(table, names)


def symmetric_group_3() -> FiniteGroup:
    """S3 with e, the two 3-cycles c, c2 and the transpositions t0, t1, t2."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    return build_permutation_group(perms, ["e", "c", "c2", "t0", "t1", "t2"])


def dihedral_group_4() -> FiniteGroup:
    """Symmetries of the square: rotations r^k and reflections s r^k."""
    rot = (1, 2, 3, 0)
    ref = (0, 3, 2, 1)

    def compose(a, b):
        return tuple(a[b[k]] for k in range(4))

    rs = [(0, 1, 2, 3)]
    for _ in range(3):
        rs.append(compose(rot, rs[-1]))
    perms = rs + [compose(ref, r) for r in rs]
    return build_permutation_group(perms, ["e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"])


def klein_four() -> FiniteGroup:
    """Z/2 x Z/2 with x = (1,0), y = (0,1), z = (1,1)."""
    z2 = build_cyclic(2)
    k = build_product(z2, z2)
    return FiniteGroup(k.cayley.copy(), k.identity, k.inverse.copy(), ("e", "y", "x", "z"))


def surface_relation_holds(g: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> bool:
    """True iff the product of the commutators [a_i, b_i] is the identity."""
    for a, b in pairs:
        g.check(a, b)
    return g.prod(g.comm(a, b) for a, b in pairs) == g.identity


# JSON ------------------------------------------------------------------

def group_to_json(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": g.cayley.tolist(), "names": list(g.names)}


def group_from_json(doc: dict) -> FiniteGroup:
    table = doc["table"]
    if "order" in doc and len(table) != doc["order"]:
        raise ValueError("group document: order does not match the table size")
    return build_from_table(table, doc.get("names"))
