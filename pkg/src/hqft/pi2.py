"""Frobenius algebras with an abelian group action (simply connected targets).

Cobordisms here are ordinary ones (expressions over the trivial group)
carrying one label from the abelian group; labels add under composition
and act as multiplication by the central unit u_g = rho(g)(1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cobordism import BoundaryMismatch, Compose, Expr, Interpreter, Tensor, typecheck
from .crossed import COND_LIMIT, AxiomCheck, AxiomReport, CrossedAlgebra
from .group import FiniteGroup, build_cyclic, group_from_json, group_to_json

TRIVIAL = build_cyclic(1)


@dataclass(eq=False)
class PiTwoFrobenius:
    group: FiniteGroup
    mult: np.ndarray  # d x d x d, coefficient of e_k in e_i e_j
    unit: np.ndarray
    counit: np.ndarray
    rho: dict[int, np.ndarray]  # row-vector convention: rho(g)(x) = x @ rho[g]

    def __post_init__(self):
        if not self.group.is_abelian():
            raise ValueError("the labeling group must be abelian")
        self.mult = np.asarray(self.mult, dtype=complex)
        d = self.mult.shape[0]
        if self.mult.shape != (d, d, d):
            raise ValueError(f"mult has shape {self.mult.shape}")
        self.unit = np.asarray(self.unit, dtype=complex)
        self.counit = np.asarray(self.counit, dtype=complex)
        if self.unit.shape != (d,) or self.counit.shape != (d,):
            raise ValueError("unit and counit must be vectors of the algebra dimension")
        self.rho = {g: np.asarray(self.rho.get(g, np.eye(d)), dtype=complex) for g in self.group}
        for g, r in self.rho.items():
            if r.shape != (d, d):
                raise ValueError(f"rho[{g}] has shape {r.shape}")

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def product(self, x, y):
        return np.einsum("i,j,ijk->k", x, y, self.mult)

    def pairing(self) -> np.ndarray:
        return np.einsum("ijk,k->ij", self.mult, self.counit)

    def central_unit(self, g: int) -> np.ndarray:
        return self.unit @ self.rho[g]

    def left_mult(self, u) -> np.ndarray:
        """Column-convention matrix of x -> u x."""
        return np.einsum("i,ijk->kj", u, self.mult)

    def frobenius(self) -> CrossedAlgebra:
        """The underlying Frobenius algebra as a crossed algebra over the trivial group."""
        d = self.dim
        return CrossedAlgebra(TRIVIAL, (d,), self.unit, {(0, 0): self.mult},
                              {0: self.pairing()}, {(0, 0): np.eye(d)})


def verify_pi2(v: PiTwoFrobenius, tol: float = 1e-9) -> AxiomReport:
    d = v.dim
    m = v.mult
    I = np.eye(d)
    G = list(v.group)
    report = AxiomReport(tol)

    def check(name, pieces, detail=""):
        worst, wit = 0.0, None
        for label, diff in pieces:
            if diff.size:
                r = float(np.abs(diff).max())
                if r > worst:
                    worst = r
                    wit = label + tuple(int(x) for x in np.unravel_index(np.argmax(np.abs(diff)), diff.shape))
        report.checks.append(AxiomCheck(name, worst <= tol, worst, wit if worst > tol else None, detail))

    check("commutativity", [((), m - m.transpose(1, 0, 2))])
    check("associativity", [((), np.einsum("ijp,pkl->ijkl", m, m) - np.einsum("jkq,iql->ijkl", m, m))])
    check("unit", [((0,), np.einsum("i,ijk->jk", v.unit, m) - I),
                   ((1,), np.einsum("i,jik->jk", v.unit, m) - I)])

    P = v.pairing()
    cond = float(np.linalg.cond(P)) if d else 1.0
    ok = np.isfinite(cond) and cond <= COND_LIMIT
    report.checks.append(AxiomCheck("pairing-nondegenerate", bool(ok), 0.0 if ok else float("inf"),
                                     None if ok else (), f"condition estimate {cond:.6g}"))

    zero = v.group.identity
    check("action-homomorphism",
          [((0,), v.rho[zero] - I)]
          + [((g, h), v.rho[g] @ v.rho[h] - v.rho[v.group.mul(g, h)]) for g, h in itertools.product(G, G)])
    # rho(g)(ab) = (rho(g)a) b = a (rho(g) b)
    pieces = []
    for g in G:
        r = v.rho[g]
        lhs = np.einsum("ijp,pq->ijq", m, r)
        pieces.append(((g, 0), lhs - np.einsum("ix,xjq->ijq", r, m)))
        pieces.append(((g, 1), lhs - np.einsum("jy,iyq->ijq", r, m)))
    check("action-linear-over-algebra", pieces)
    check("action-is-central-multiplication",
          [((g,), v.rho[g] - v.left_mult(v.central_unit(g)).T) for g in G])
    return report


# labeled cobordisms ------------------------------------------------------

@dataclass(frozen=True)
class LabeledCobordism:
    expr: Expr
    label: int

    def signature(self):
        return typecheck(self.expr, TRIVIAL)


def compose_labeled(c2: LabeledCobordism, c1: LabeledCobordism, group: FiniteGroup) -> LabeledCobordism:
    """c2 after c1; the labels add."""
    s2, _ = typecheck(c2.expr, TRIVIAL)
    _, t1 = typecheck(c1.expr, TRIVIAL)
    if len(s2) != len(t1):
        raise BoundaryMismatch(None, s2, t1, f"boundary mismatch: {len(t1)} circle(s) meet {len(s2)}")
    return LabeledCobordism(Compose(c2.expr, c1.expr), group.mul(c1.label, c2.label))


def _factor_op(L: np.ndarray, d: int, n: int, k: int) -> np.ndarray:
    """L acting on tensor factor k of n factors of dimension d."""
    mats = [np.eye(d)] * n
    mats[k] = L
    out = np.eye(1)
    for x in mats:
        out = np.kron(out, x)
    return out


def insertion_sites(e: Expr) -> list[tuple]:
    """Every wire of the expression: ('out', k), ('in', k), or (path, k)
    for factor k of the interface at the Compose node reached by path."""
    src, tgt = typecheck(e, TRIVIAL)
    sites = [("out", k) for k in range(len(tgt))] + [("in", k) for k in range(len(src))]

    def walk(x, path):
        if isinstance(x, Compose):
            mid = typecheck(x.inner, TRIVIAL)[1]
            sites.extend((path, k) for k in range(len(mid)))
            walk(x.outer, path + ("o",))
            walk(x.inner, path + ("i",))
        elif isinstance(x, Tensor):
            walk(x.left, path + ("l",))
            walk(x.right, path + ("r",))

    walk(e, ())
    return sites


def _canonical_site(e: Expr) -> tuple | None:
    src, tgt = typecheck(e, TRIVIAL)
    if tgt:
        return ("out", 0)
    if src:
        return ("in", 0)
    # closed: the interface just before the final counit, i.e. the
    # outermost composition with a nonempty interface
    queue = [(e, ())]
    while queue:
        x, path = queue.pop(0)
        if isinstance(x, Compose):
            if typecheck(x.inner, TRIVIAL)[1]:
                return (path, 0)
            queue += [(x.outer, path + ("o",)), (x.inner, path + ("i",))]
        elif isinstance(x, Tensor):
            queue += [(x.left, path + ("l",)), (x.right, path + ("r",))]
    return None


def _eval_at(interp: Interpreter, e: Expr, path: tuple, k: int, L: np.ndarray, d: int) -> np.ndarray:
    if not path and isinstance(e, Compose):
        mid = typecheck(e.inner, TRIVIAL)[1]
        return interp._eval(e.outer) @ _factor_op(L, d, len(mid), k) @ interp._eval(e.inner)
    step, rest = path[0], path[1:]
    if isinstance(e, Compose):
        if step == "o":
            return _eval_at(interp, e.outer, rest, k, L, d) @ interp._eval(e.inner)
        return interp._eval(e.outer) @ _eval_at(interp, e.inner, rest, k, L, d)
    if step == "l":
        return np.kron(_eval_at(interp, e.left, rest, k, L, d), interp._eval(e.right))
    return np.kron(interp._eval(e.left), _eval_at(interp, e.right, rest, k, L, d))


def evaluate_labeled(v: PiTwoFrobenius, c: LabeledCobordism, site: tuple | None = None) -> np.ndarray:
    """Ordinary TQFT evaluation with one insertion of u_label.

    site defaults to the canonical placement (first outgoing circle, else
    first incoming, else just before the final counit).
    """
    fa = v.frobenius()
    interp = Interpreter(fa)
    src, tgt = typecheck(c.expr, TRIVIAL)
    M = interp._eval(c.expr)
    d = v.dim
    L = v.left_mult(v.central_unit(c.label))
    if site is None:
        site = _canonical_site(c.expr)
    if site is None:
        # closed with no wire at all (empty expression): act on the scalar
        return M * complex(v.counit @ v.central_unit(c.label))
    where, k = site
    if where == "out":
        return _factor_op(L, d, len(tgt), k) @ M
    if where == "in":
        return M @ _factor_op(L, d, len(src), k)
    return _eval_at(interp, c.expr, where, k, L, d)


# examples and JSON -------------------------------------------------------

def algebra_z2_t(action: str = "t") -> PiTwoFrobenius:
    """C[t]/(t^2 - 1) in basis (1, t), eps(1) = 1, eps(t) = 0, with Z/2
    acting by multiplication by t (or by 1 + t for the broken example)."""
    m = np.zeros((2, 2, 2))
    m[0, 0, 0] = m[0, 1, 1] = m[1, 0, 1] = m[1, 1, 0] = 1
    u = np.array([0, 1.0]) if action == "t" else np.array([1.0, 1.0])
    rho1 = np.einsum("i,ijk->jk", u, m)
    return PiTwoFrobenius(build_cyclic(2), m, [1, 0], [1, 0], {0: np.eye(2), 1: rho1})


def pi2_to_json(v: PiTwoFrobenius) -> dict:
    def c(x):
        return [float(np.real(x)), float(np.imag(x))]

    return {
        "abelian_group": group_to_json(v.group),
        "dim": v.dim,
        "mult": [[i, j, k, *c(x)] for (i, j, k), x in np.ndenumerate(v.mult) if x != 0],
        "unit": [c(x) for x in v.unit],
        "counit": [c(x) for x in v.counit],
        "rho": [[g, i, j, *c(x)] for g, r in v.rho.items() for (i, j), x in np.ndenumerate(r) if x != 0],
    }


def pi2_from_json(doc: dict) -> PiTwoFrobenius:
    g = group_from_json(doc["abelian_group"])
    d = int(doc["dim"])
    m = np.zeros((d, d, d), complex)
    for i, j, k, re, im in doc["mult"]:
        m[i, j, k] += complex(re, im)
    rho = {h: np.zeros((d, d), complex) for h in g}
    for h, i, j, re, im in doc.get("rho", []):
        rho[h][i, j] += complex(re, im)
    if not doc.get("rho"):
        rho = {h: np.eye(d) for h in g}

    def vec(xs):
        return [complex(x[0], x[1]) if isinstance(x, (list, tuple)) else complex(x) for x in xs]

    return PiTwoFrobenius(g, m, vec(doc["unit"]), vec(doc["counit"]), rho)
