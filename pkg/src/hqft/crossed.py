"""Crossed group-algebras stored as explicit block tensors.

Conventions: a vector x in V_a is a 1-d coefficient array.

* ``mult[a, b][i, j, k]``  coefficient of e_k^{ab} in e_i^a * e_j^b
* ``eta[a][i, j]``         eta(e_i^a, e_j^{a^-1})
* ``phi[b, a][i, j]``      coefficient of e_j^{bab^-1} in phi(b)(e_i^a)

so linear maps act on row vectors: phi(b)(x) = x @ phi[b, a].

Algebras built from cocycles hold exact ``Cyclotomic`` entries (object
arrays) so that the verifier can report residual exactly 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .group import FiniteGroup, group_from_json, group_to_json
from .phase import Cyclotomic, OneCochain, TwoCocycle, ensure_normalized, is_cocycle, to_complex

COND_LIMIT = 1e12


class DegenerateFormError(ValueError):
    def __init__(self, element: int, cond: float):
        self.element = element
        self.cond = cond
        super().__init__(f"eta block at grade {element} is degenerate (condition estimate {cond:.3g})")


@dataclass(eq=False)
class CrossedAlgebra:
    group: FiniteGroup
    dims: tuple[int, ...]
    unit: np.ndarray
    mult: dict[tuple[int, int], np.ndarray]
    eta: dict[int, np.ndarray]
    phi: dict[tuple[int, int], np.ndarray]
    exact: bool = False

    def __post_init__(self):
        g = self.group
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != g.order or min(self.dims) < 0:
            raise ValueError("need one nonnegative dimension per group element")
        d = self.dims
        dt = object if self.exact else complex

        def shaped(arr, shape, what):
            arr = np.asarray(arr, dtype=dt)
            if arr.shape != shape:
                raise ValueError(f"{what} has shape {arr.shape}, expected {shape}")
            return arr

        self.unit = shaped(self.unit, (d[g.identity],), "unit")
        self.mult = {
            (a, b): shaped(self.mult.get((a, b), np.zeros((d[a], d[b], d[g.mul(a, b)]), dt)),
                           (d[a], d[b], d[g.mul(a, b)]), f"mult[{a},{b}]")
            for a in g for b in g
        }
        self.eta = {
            a: shaped(self.eta.get(a, np.zeros((d[a], d[g.inv(a)]), dt)), (d[a], d[g.inv(a)]), f"eta[{a}]")
            for a in g
        }
        self.phi = {
            (b, a): shaped(self.phi.get((b, a), np.zeros((d[a], d[g.conj(b, a)]), dt)),
                           (d[a], d[g.conj(b, a)]), f"phi[{b},{a}]")
            for b in g for a in g
        }

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def numeric(self) -> CrossedAlgebra:
        """Complex double-precision copy."""
        if not self.exact:
            return self
        conv = np.vectorize(complex, otypes=[complex])

        def c(x):
            return conv(x) if x.size else np.zeros(x.shape, complex)

        return CrossedAlgebra(
            self.group, self.dims, c(self.unit),
            {k: c(v) for k, v in self.mult.items()},
            {k: c(v) for k, v in self.eta.items()},
            {k: c(v) for k, v in self.phi.items()},
        )

    def counit(self, x: np.ndarray) -> complex:
        """eps(x) = eta(x, 1) for x in V_e."""
        e = self.group.identity
        return x @ self.eta[e] @ self.unit


# verification ------------------------------------------------------------

AXIOMS = (
    "associativity",
    "unit",
    "eta-invariance",
    "eta-nondegenerate",
    "action-composition",
    "action-identity",
    "action-multiplicative",
    "action-preserves-eta",
    "action-trivial-on-own-grade",
    "twisted-commutativity",
    "trace",
)


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    residual: float
    witness: tuple | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    tol: float
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "tol": self.tol,
            "residual": self.residual,
            "checks": [
                {"axiom": c.name, "passed": c.passed, "residual": c.residual,
                 "witness": list(c.witness) if c.witness is not None else None, "detail": c.detail}
                for c in self.checks
            ],
        }


class _Worst:
    """Running maximum of |lhs - rhs| with the index tuple where it occurred."""

    def __init__(self):
        self.residual = 0.0
        self.witness = None

    def see(self, diff: np.ndarray, label: tuple):
        if diff.size == 0:
            return
        mags = np.abs(diff).astype(float)
        pos = np.unravel_index(int(np.argmax(mags)), mags.shape)
        r = float(mags[pos])
        if r > self.residual or self.witness is None and r > 0:
            self.residual = r
            self.witness = label + tuple(int(p) for p in pos)

    def check(self, name: str, tol: float, detail: str = "") -> AxiomCheck:
        return AxiomCheck(name, self.residual <= tol, self.residual,
                          self.witness if self.residual > tol else None, detail)


def _eye(n: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.zeros((n, n), dtype=object)
        for i in range(n):
            out[i, i] = Cyclotomic({}) + 1
        return out
    return np.eye(n, dtype=complex)


def verify(v: CrossedAlgebra, tol: float = 1e-9) -> AxiomReport:
    """Check every crossed-algebra axiom exhaustively over basis tuples."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    g = v.group
    G = list(g)
    e = g.identity
    m, eta, phi, ex = v.mult, v.eta, v.phi, v.exact
    report = AxiomReport(tol)

    w = _Worst()
    for a, b, c in itertools.product(G, G, G):
        ab, bc = g.mul(a, b), g.mul(b, c)
        lhs = np.einsum("ijp,pkl->ijkl", m[a, b], m[ab, c])
        rhs = np.einsum("jkq,iql->ijkl", m[b, c], m[a, bc])
        w.see(lhs - rhs, (a, b, c))
    report.checks.append(w.check("associativity", tol))

    w = _Worst()
    for a in G:
        I = _eye(v.dims[a], ex)
        w.see(np.einsum("i,ijk->jk", v.unit, m[e, a]) - I, (a, 0))
        w.see(np.einsum("i,jik->jk", v.unit, m[a, e]) - I, (a, 1))
    report.checks.append(w.check("unit", tol))

    w = _Worst()
    for a, b in itertools.product(G, G):
        ab = g.mul(a, b)
        c = g.inv(ab)
        lhs = np.einsum("ijp,pk->ijk", m[a, b], eta[ab])
        rhs = np.einsum("jkq,iq->ijk", m[b, c], eta[a])
        w.see(lhs - rhs, (a, b, c))
    report.checks.append(w.check("eta-invariance", tol))

    worst_cond, bad, detail = 0.0, None, ""
    num_eta = v.numeric().eta if ex else eta
    for a in G:
        blk = num_eta[a]
        if blk.shape[0] != blk.shape[1]:
            bad, detail = (a,), f"eta block at grade {a} is not square {blk.shape}"
            break
        if blk.size == 0:
            continue
        cond = float(np.linalg.cond(blk))
        worst_cond = max(worst_cond, cond)
        if not np.isfinite(cond) or cond > COND_LIMIT:
            bad, detail = (a,), f"eta block at grade {a} is singular (condition {cond:.3g})"
            break
    detail = detail or f"max condition estimate {worst_cond:.6g}"
    report.checks.append(AxiomCheck("eta-nondegenerate", bad is None,
                                    0.0 if bad is None else float("inf"), bad, detail))

    w = _Worst()
    for b1, b2, a in itertools.product(G, G, G):
        inner = g.conj(b2, a)
        lhs = phi[b2, a] @ phi[b1, inner] if phi[b2, a].size else phi[b2, a]
        w.see(lhs - phi[g.mul(b1, b2), a], (b1, b2, a))
    report.checks.append(w.check("action-composition", tol))

    w = _Worst()
    for a in G:
        w.see(phi[e, a] - _eye(v.dims[a], ex), (a,))
    report.checks.append(w.check("action-identity", tol))

    w = _Worst()
    for b, a, c in itertools.product(G, G, G):
        ac = g.mul(a, c)
        lhs = np.einsum("ijp,pq->ijq", m[a, c], phi[b, ac])
        rhs = np.einsum("ix,jy,xyq->ijq", phi[b, a], phi[b, c], m[g.conj(b, a), g.conj(b, c)])
        w.see(lhs - rhs, (b, a, c))
    report.checks.append(w.check("action-multiplicative", tol))

    w = _Worst()
    for b, a in itertools.product(G, G):
        lhs = np.einsum("ix,xy,jy->ij", phi[b, a], eta[g.conj(b, a)], phi[b, g.inv(a)])
        w.see(lhs - eta[a], (b, a))
    report.checks.append(w.check("action-preserves-eta", tol))

    w = _Worst()
    for b in G:
        w.see(phi[b, b] - _eye(v.dims[b], ex), (b,))
    report.checks.append(w.check("action-trivial-on-own-grade", tol))

    w = _Worst()
    for b, a in itertools.product(G, G):
        lhs = np.einsum("ip,pjk->ijk", phi[b, a], m[g.conj(b, a), b])
        rhs = np.einsum("jik->ijk", m[b, a])
        w.see(lhs - rhs, (b, a))
    report.checks.append(w.check("twisted-commutativity", tol))

    # Tr(L_c . phi(b) on V_a) = Tr(phi(a^-1) . L_c on V_b), c in V_{[a,b]}
    w = _Worst()
    for a, b in itertools.product(G, G):
        k = g.comm(a, b)
        bab = g.conj(b, a)
        aba = g.conj(a, b)
        lhs = np.einsum("ip,rpi->r", phi[b, a], m[k, bab])
        rhs = np.einsum("rjq,qj->r", m[k, b], phi[g.inv(a), aba])
        w.see(lhs - rhs, (a, b))
    report.checks.append(w.check("trace", tol))

    return report


# constructions -----------------------------------------------------------

def from_cocycle(t: TwoCocycle) -> CrossedAlgebra:
    """Rank-one crossed algebra (twisted group algebra) of a 2-cocycle.

    v_a v_b = theta(a,b) v_ab, eta(v_a, v_a^-1) = theta(a, a^-1) and
    phi(b) v_a = theta(b,a) - theta(bab^-1, b) in additive notation, the
    scalar forced by twisted commutativity.  Exact entries.
    """
    if not is_cocycle(t):
        raise ValueError("from_cocycle needs a cocycle")
    t = ensure_normalized(t)
    g = t.group

    def z(p):
        return np.array(Cyclotomic.root(p), dtype=object)

    mult, eta, phi = {}, {}, {}
    for a in g:
        eta[a] = z(t(a, g.inv(a))).reshape(1, 1)
        for b in g:
            mult[a, b] = z(t(a, b)).reshape(1, 1, 1)
            phi[b, a] = z(t(b, a) - t(g.conj(b, a), b)).reshape(1, 1)
    unit = z(t(g.identity, g.identity) * 0).reshape(1)
    return CrossedAlgebra(g, (1,) * g.order, unit, mult, eta, phi, exact=True)


def group_algebra(g: FiniteGroup) -> CrossedAlgebra:
    """C[G] with eta(a, a^-1) = 1 and conjugation action, in complex form."""
    one = np.ones((1, 1))
    return CrossedAlgebra(
        g, (1,) * g.order, np.ones(1),
        {(a, b): one.reshape(1, 1, 1) for a in g for b in g},
        {a: one for a in g},
        {(b, a): one for a in g for b in g},
    )


def direct_sum(v1: CrossedAlgebra, v2: CrossedAlgebra) -> CrossedAlgebra:
    """Block-diagonal sum; basis of V_a is that of v1 followed by that of v2."""
    if v1.group != v2.group:
        raise ValueError("summands use different groups")
    a1, a2 = v1.numeric(), v2.numeric()
    g = v1.group

    def block(x, y):
        out = np.zeros(tuple(p + q for p, q in zip(x.shape, y.shape)), complex)
        out[tuple(slice(0, p) for p in x.shape)] = x
        out[tuple(slice(p, None) for p in x.shape)] = y
        return out

    return CrossedAlgebra(
        g, tuple(p + q for p, q in zip(v1.dims, v2.dims)),
        np.concatenate([a1.unit, a2.unit]),
        {k: block(a1.mult[k], a2.mult[k]) for k in a1.mult},
        {k: block(a1.eta[k], a2.eta[k]) for k in a1.eta},
        {k: block(a1.phi[k], a2.phi[k]) for k in a1.phi},
    )


def change_basis(v: CrossedAlgebra, T: dict[int, np.ndarray]) -> CrossedAlgebra:
    """The algebra for which T (x -> x @ T[a]) is an isomorphism from v."""
    n = v.numeric()
    g = v.group
    Ti = {a: np.linalg.inv(T[a]) if T[a].size else T[a].T for a in g}
    mult = {(a, b): np.einsum("ix,jy,xyp,pq->ijq", Ti[a], Ti[b], n.mult[a, b], T[g.mul(a, b)])
            for a in g for b in g}
    eta = {a: Ti[a] @ n.eta[a] @ Ti[g.inv(a)].T for a in g}
    phi = {(b, a): Ti[a] @ n.phi[b, a] @ T[g.conj(b, a)] for a in g for b in g}
    return CrossedAlgebra(g, v.dims, n.unit @ T[g.identity], mult, eta, phi)


def random_basis_change(v: CrossedAlgebra, rng: np.random.Generator) -> dict[int, np.ndarray]:
    T = {}
    for a in v.group:
        d = v.dims[a]
        T[a] = np.eye(d) + 0.5 * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return T


@dataclass
class DualBasisSet:
    """duals[a] has as columns the coordinates (in V_{a^-1}) of the basis
    f_j with eta(e_i^a, f_j) = delta_ij."""

    duals: dict[int, np.ndarray]

    def pairing_residual(self, v: CrossedAlgebra) -> float:
        eta = v.numeric().eta
        worst = 0.0
        for a, F in self.duals.items():
            if F.size:
                worst = max(worst, float(np.abs(eta[a] @ F - np.eye(F.shape[1])).max()))
        return worst


def dual_bases(v: CrossedAlgebra, tol: float = 1e-9) -> DualBasisSet:
    eta = v.numeric().eta
    duals = {}
    for a in v.group:
        blk = eta[a]
        if blk.shape[0] != blk.shape[1]:
            raise DegenerateFormError(a, float("inf"))
        if blk.size == 0:
            duals[a] = blk.T.copy()
            continue
        cond = float(np.linalg.cond(blk))
        if not np.isfinite(cond) or cond > COND_LIMIT:
            raise DegenerateFormError(a, cond)
        duals[a] = np.linalg.inv(blk)
    out = DualBasisSet(duals)
    if out.pairing_residual(v) > max(tol, 1e-9):
        raise DegenerateFormError(-1, float("inf"))
    return out


@dataclass
class PointTheory:
    """Frobenius data on V_e: the TQFT of constant maps."""

    dim: int
    mult: np.ndarray
    eta: np.ndarray
    unit: np.ndarray
    counit_of_unit: complex
    normalised: bool


def restrict_to_point(v: CrossedAlgebra) -> PointTheory:
    n = v.numeric()
    e = v.group.identity
    eps1 = complex(n.counit(n.unit)) if n.dims[e] else 0j
    return PointTheory(
        n.dims[e], n.mult[e, e], n.eta[e], n.unit, eps1,
        normalised=n.dims[e] == 1 and abs(eps1 - 1) <= 1e-12,
    )


def intertwiner_residual(v1: CrossedAlgebra, v2: CrossedAlgebra, T: dict[int, np.ndarray]) -> float:
    """How far the graded map T (T[a]: V_a -> V_a, row-vector convention)
    is from an isomorphism of crossed algebras v1 -> v2."""
    a1, a2 = v1.numeric(), v2.numeric()
    g = v1.group
    worst = 0.0

    def see(x):
        nonlocal worst
        if x.size:
            worst = max(worst, float(np.abs(x).max()))

    e = g.identity
    see(a1.unit @ T[e] - a2.unit)
    for a in g:
        see(np.einsum("ix,jy,xy->ij", T[a], T[g.inv(a)], a2.eta[a]) - a1.eta[a])
        for b in g:
            ab = g.mul(a, b)
            see(np.einsum("ijp,pq->ijq", a1.mult[a, b], T[ab])
                - np.einsum("ix,jy,xyq->ijq", T[a], T[b], a2.mult[a, b]))
            see(a1.phi[b, a] @ T[g.conj(b, a)] - T[a] @ a2.phi[b, a])
    return worst


def rescaling(beta: OneCochain) -> dict[int, np.ndarray]:
    """v_a -> exp(-2 pi i beta(a)) v_a, the isomorphism
    from_cocycle(theta) -> from_cocycle(theta + delta beta) when beta(e) = 0."""
    return {a: np.array([[to_complex(-beta(a))]]) for a in beta.group}


# JSON --------------------------------------------------------------------

def _c(x) -> list[float]:
    x = complex(x)
    return [x.real, x.imag]


def algebra_to_json(v: CrossedAlgebra) -> dict:
    n = v.numeric()
    mult = [[a, b, i, j, k, *_c(x)] for (a, b), t in n.mult.items()
            for (i, j, k), x in np.ndenumerate(t) if x != 0]
    eta = [[a, i, j, *_c(x)] for a, t in n.eta.items() for (i, j), x in np.ndenumerate(t) if x != 0]
    phi = [[b, a, i, j, *_c(x)] for (b, a), t in n.phi.items()
           for (i, j), x in np.ndenumerate(t) if x != 0]
    return {"group": group_to_json(v.group), "dims": list(v.dims), "unit": [_c(x) for x in n.unit],
            "mult": mult, "eta": eta, "phi": phi}


def _scalar(x) -> complex:
    if isinstance(x, (list, tuple)):
        return complex(x[0], x[1])
    return complex(x)


def algebra_from_json(doc: dict, group: FiniteGroup | None = None) -> CrossedAlgebra:
    g = group if group is not None else group_from_json(doc["group"])
    d = [int(x) for x in doc["dims"]]
    if len(d) != g.order:
        raise ValueError("dims must list one dimension per group element")
    mult = {(a, b): np.zeros((d[a], d[b], d[g.mul(a, b)]), complex) for a in g for b in g}
    eta = {a: np.zeros((d[a], d[g.inv(a)]), complex) for a in g}
    phi = {(b, a): np.zeros((d[a], d[g.conj(b, a)]), complex) for a in g for b in g}
    try:
        for a, b, i, j, k, re, im in doc.get("mult", []):
            mult[a, b][i, j, k] += complex(re, im)
        for a, i, j, re, im in doc.get("eta", []):
            eta[a][i, j] += complex(re, im)
        for b, a, i, j, re, im in doc.get("phi", []):
            phi[b, a][i, j] += complex(re, im)
    except (IndexError, KeyError) as exc:
        raise ValueError(f"algebra document entry out of range: {exc}") from None
    unit = np.array([_scalar(x) for x in doc["unit"]], dtype=complex)
    return CrossedAlgebra(g, tuple(d), unit, mult, eta, phi)
