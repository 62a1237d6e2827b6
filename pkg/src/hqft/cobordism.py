"""A small typed language of G-labeled cobordisms.

Boundary circles carry holonomies; a signature is the tuple of holonomies
of the circles on one end.  Expressions are built from elementary
generators with ``*`` (disjoint union) and ``.`` (composition, right
operand first), typechecked against a group and interpreted as matrices
acting on column vectors of the tensor product of the graded pieces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

from .crossed import CrossedAlgebra, dual_bases
from .group import FiniteGroup, surface_relation_holds

Signature = tuple[int, ...]

# generator name -> number of element arguments
ARITY = {
    "id": 1, "unit": 0, "counit": 0, "mult": 2, "comult": 2,
    "act": 2, "swap": 2, "pair": 1, "copair": 1,
}


@dataclass(frozen=True)
class Gen:
    name: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Compose:
    outer: "Expr"  # applied second
    inner: "Expr"  # applied first


Expr = Union[Gen, Tensor, Compose]


def compose(*exprs: Expr) -> Expr:
    """compose(e3, e2, e1) = e3 . e2 . e1"""
    return reduce(lambda a, b: Compose(a, b), exprs)


def tensor(*exprs: Expr) -> Expr:
    return reduce(Tensor, exprs)


# parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}")


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>\d+)|(?P<sym>[\[\](),;.*])|(?P<bad>\S))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastgroup)
        line = text.count("\n", 0, start) + 1
        col = start - (text.rfind("\n", 0, start) + 1) + 1
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", line, col)
        toks.append((kind, m.group(kind), line, col))
        pos = m.end()
    line = text.count("\n") + 1
    toks.append(("end", "", line, len(text) - (text.rfind("\n") + 1) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, group: FiniteGroup):
        self.toks = _tokenize(text)
        self.i = 0
        self.group = group

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None, kind=None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ParseError(f"expected {want}, found {got}", tok[2], tok[3])
        self.i += 1
        return tok

    def expr(self) -> Expr:
        e = self.tensor()
        while self.peek()[1] == ".":
            self.take(".")
            e = Compose(e, self.tensor())
        return e

    def tensor(self) -> Expr:
        e = self.atom()
        while self.peek()[1] == "*":
            self.take("*")
            e = Tensor(e, self.atom())
        return e

    def atom(self) -> Expr:
        tok = self.peek()
        if tok[1] == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        if tok[0] != "name":
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ParseError(f"expected a generator, found {got}", tok[2], tok[3])
        self.take()
        name = tok[1]
        if name not in ARITY:
            raise ParseError(f"unknown generator {name!r}", tok[2], tok[3])
        args = []
        if self.peek()[1] == "[":
            self.take("[")
            if self.peek()[1] != "]":
                args.append(self.element())
                while self.peek()[1] in (",", ";"):
                    self.take()
                    args.append(self.element())
            self.take("]")
        if len(args) != ARITY[name]:
            raise ParseError(f"{name} takes {ARITY[name]} element(s), got {len(args)}", tok[2], tok[3])
        return Gen(name, tuple(args))

    def element(self) -> int:
        tok = self.peek()
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.group.names:
                raise ParseError(f"unknown element name {tok[1]!r}", tok[2], tok[3])
            return self.group.index(tok[1])
        if tok[0] == "int":
            self.take()
            k = int(tok[1])
            if k >= self.group.order:
                raise ParseError(f"element index {k} out of range", tok[2], tok[3])
            return k
        got = repr(tok[1]) if tok[0] != "end" else "end of input"
        raise ParseError(f"expected an element, found {got}", tok[2], tok[3])


def parse(text: str, group: FiniteGroup) -> Expr:
    p = _Parser(text, group)
    e = p.expr()
    p.take(kind="end")
    return e


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def to_text(e: Expr, group: FiniteGroup) -> str:
    """Canonical text; parse(to_text(e)) == e."""

    def el(a):
        n = group.names[a]
        return n if _IDENT.match(n) and n not in ARITY else str(a)

    def go(e, ctx):
        if isinstance(e, Gen):
            if not e.args:
                return e.name
            sep = "; " if e.name == "act" else ", "
            return f"{e.name}[{sep.join(el(a) for a in e.args)}]"
        if isinstance(e, Tensor):
            s = f"{go(e.left, 'tl')} * {go(e.right, 'tr')}"
            return f"({s})" if ctx == "tr" else s
        s = f"{go(e.outer, 'cl')} . {go(e.inner, 'cr')}"
        return f"({s})" if ctx in ("tl", "tr", "cr") else s

    return go(e, "top")


# typing ------------------------------------------------------------------

class BoundaryMismatch(TypeError):
    def __init__(self, position: int | None, expected, found, message: str):
        self.position, self.expected, self.found = position, expected, found
        super().__init__(message)


def generator_type(gen: Gen, g: FiniteGroup) -> tuple[Signature, Signature]:
    g.check(*gen.args)
    e = g.identity
    a = gen.args
    n = gen.name
    if n == "id":
        return (a[0],), (a[0],)
    if n == "unit":
        return (), (e,)
    if n == "counit":
        return (e,), ()
    if n == "mult":
        return (a[0], a[1]), (g.mul(a[0], a[1]),)
    if n == "comult":
        return (g.mul(a[0], a[1]),), (a[0], a[1])
    if n == "act":
        return (a[1],), (g.conj(a[0], a[1]),)
    if n == "swap":
        return (a[0], a[1]), (a[1], a[0])
    if n == "pair":
        return (a[0], g.inv(a[0])), ()
    if n == "copair":
        return (), (a[0], g.inv(a[0]))
    raise ValueError(f"unknown generator {n!r}")


def typecheck(e: Expr, g: FiniteGroup) -> tuple[Signature, Signature]:
    if isinstance(e, Gen):
        return generator_type(e, g)
    if isinstance(e, Tensor):
        s1, t1 = typecheck(e.left, g)
        s2, t2 = typecheck(e.right, g)
        return s1 + s2, t1 + t2
    s_in, t_in = typecheck(e.inner, g)
    s_out, t_out = typecheck(e.outer, g)
    if t_in != s_out:
        names = g.names
        if len(t_in) != len(s_out):
            raise BoundaryMismatch(None, s_out, t_in,
                                   f"boundary mismatch: {len(t_in)} circle(s) produced, {len(s_out)} expected")
        k = next(i for i, (x, y) in enumerate(zip(t_in, s_out)) if x != y)
        raise BoundaryMismatch(k, s_out[k], t_in[k],
                               f"boundary mismatch at circle {k}: holonomy {names[t_in[k]]} "
                               f"meets {names[s_out[k]]}")
    return s_in, t_out


# evaluation --------------------------------------------------------------

def sig_dim(v: CrossedAlgebra, sig: Sequence[int]) -> int:
    return int(np.prod([v.dims[a] for a in sig], dtype=np.int64))


class Interpreter:
    """Evaluates expressions against one algebra, caching generator matrices."""

    def __init__(self, v: CrossedAlgebra, tol: float = 1e-9):
        self.v = v.numeric()
        self.g = v.group
        self._duals = None
        self.tol = tol
        self._cache: dict[Gen, np.ndarray] = {}

    @property
    def duals(self):
        if self._duals is None:
            self._duals = dual_bases(self.v, self.tol).duals
        return self._duals

    def copairing(self, a: int) -> np.ndarray:
        """Coefficients C[i, j] of sum C e_i^a (x) e_j^{a^-1}; inverse of eta[a^-1]."""
        return self.duals[self.g.inv(a)]

    def generator(self, gen: Gen) -> np.ndarray:
        if gen in self._cache:
            return self._cache[gen]
        v, g = self.v, self.g
        d = v.dims
        a = gen.args
        n = gen.name
        if n == "id":
            M = np.eye(d[a[0]], dtype=complex)
        elif n == "unit":
            M = v.unit.reshape(-1, 1).astype(complex)
        elif n == "counit":
            M = (v.eta[g.identity] @ v.unit).reshape(1, -1)
        elif n == "mult":
            m = v.mult[a[0], a[1]]
            M = m.reshape(d[a[0]] * d[a[1]], -1).T
        elif n == "comult":
            x, y = a
            xinv = g.inv(x)
            xy = g.mul(x, y)
            step1 = np.kron(self.generator(Gen("copair", (x,))), np.eye(d[xy]))
            step2 = np.kron(np.eye(d[x]), self.generator(Gen("mult", (xinv, xy))))
            M = step2 @ step1
        elif n == "act":
            M = v.phi[a[0], a[1]].T
        elif n == "swap":
            p, q = d[a[0]], d[a[1]]
            M = np.zeros((p * q, p * q), dtype=complex)
            for i in range(p):
                for j in range(q):
                    M[j * p + i, i * q + j] = 1
        elif n == "pair":
            M = v.eta[a[0]].reshape(1, -1)
        elif n == "copair":
            M = self.copairing(a[0]).reshape(-1, 1)
        else:
            raise ValueError(f"unknown generator {n!r}")
        self._cache[gen] = M
        return M

    def __call__(self, e: Expr) -> np.ndarray:
        typecheck(e, self.g)
        return self._eval(e)

    def _eval(self, e: Expr) -> np.ndarray:
        if isinstance(e, Gen):
            return self.generator(e)
        if isinstance(e, Tensor):
            return np.kron(self._eval(e.left), self._eval(e.right))
        return self._eval(e.outer) @ self._eval(e.inner)


def evaluate(e: Expr, v: CrossedAlgebra) -> np.ndarray:
    return Interpreter(v)(e)


# closed surfaces ---------------------------------------------------------

@dataclass(frozen=True)
class GSurface:
    """Closed oriented surface with a flat G-bundle given by handle holonomies."""

    group: FiniteGroup
    handles: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "handles", tuple((int(a), int(b)) for a, b in self.handles))
        if not surface_relation_holds(self.group, self.handles):
            raise ValueError("handle holonomies violate the surface relation prod [a_i, b_i] = e")

    @property
    def genus(self) -> int:
        return len(self.handles)

    def to_json(self) -> dict:
        return {"genus": self.genus, "handles": [[self.group.names[a], self.group.names[b]]
                                                 for a, b in self.handles]}


def _element(g: FiniteGroup, x) -> int:
    if isinstance(x, str):
        return g.index(x)
    g.check(x)
    return int(x)


def surface_from_json(doc: dict, group: FiniteGroup) -> GSurface:
    handles = [(_element(group, a), _element(group, b)) for a, b in doc.get("handles", [])]
    if "genus" in doc and doc["genus"] != len(handles):
        raise ValueError("surface document: genus does not match the number of handles")
    return GSurface(group, tuple(handles))


def handle_expr(g: FiniteGroup, a: int, b: int) -> Expr:
    """One-holed torus () -> ([a,b]): the element sum_i phi(a)(e_i^b) f_i."""
    binv = g.inv(b)
    return compose(
        Gen("mult", (g.conj(a, b), binv)),
        Tensor(Gen("act", (a, b)), Gen("id", (binv,))),
        Gen("swap", (binv, b)),
        Gen("copair", (binv,)),
    )


def genus_surface_expr(s: GSurface) -> Expr:
    """Closed expression: unit, one handle multiplied in per (a_i, b_i), counit."""
    g = s.group
    parts: list[Expr] = [Gen("unit")]
    x = g.identity
    for a, b in s.handles:
        k = g.comm(a, b)
        parts.append(compose(Gen("mult", (x, k)), Tensor(Gen("id", (x,)), handle_expr(g, a, b))))
        x = g.mul(x, k)
    parts.append(Gen("counit"))
    return compose(*reversed(parts))


def invariant_closed(v: CrossedAlgebra, s: GSurface) -> complex:
    if s.group != v.group:
        raise ValueError("surface and algebra use different groups")
    M = evaluate(genus_surface_expr(s), v)
    return complex(M[0, 0])
