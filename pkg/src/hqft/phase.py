"""Exact U(1) phases written additively in Q/Z, and group 2-cocycles.

A phase p = num/den stands for exp(2 pi i p).  Cochains keep one common
denominator N and integer tables mod N, so every cocycle computation is
exact integer arithmetic.
"""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .group import FiniteGroup, group_from_json, group_to_json
from .snf import Diagonalization, diagonalize_mod, kernel_generators, solve_mod

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Phase:
    num: int
    den: int = 1

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("phase denominator must be positive")
        n, d = self.num % self.den, self.den
        g = gcd(n, d)
        object.__setattr__(self, "num", n // g)
        object.__setattr__(self, "den", d // g)

    @classmethod
    def of(cls, x) -> Phase:
        f = Fraction(x)
        return cls(f.numerator, f.denominator)

    def __add__(self, other: Phase) -> Phase:
        d = lcm(self.den, other.den)
        return Phase(self.num * (d // self.den) + other.num * (d // other.den), d)

    def __neg__(self) -> Phase:
        return Phase(-self.num, self.den)

    def __sub__(self, other: Phase) -> Phase:
        return self + (-other)

    def __mul__(self, k: int) -> Phase:
        return Phase(self.num * k, self.den)

    __rmul__ = __mul__

    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}" if self.num else "0"


ZERO = Phase(0)


def to_complex(p: Phase) -> complex:
    """exp(2 pi i p), with the eighth roots of unity rounded to exact values."""
    if (8 * p.num) % p.den == 0:
        k = 8 * p.num // p.den
        r = 0.5 ** 0.5
        return [1, complex(r, r), 1j, complex(-r, r), -1, complex(-r, -r), -1j, complex(r, -r)][k]
    return cmath.exp(2j * cmath.pi * p.num / p.den)


# exact cyclotomic scalars ------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact cyclotomic division"
    return q


class Cyclotomic:
    """A Q-linear combination of roots of unity, with exact zero test.

    Terms are keyed by their Phase.  Equality reduces the difference
    modulo the cyclotomic polynomial of the common order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Phase, Fraction] = {}
        for p, c in (terms or {}).items():
            if c:
                self.terms[p] = self.terms.get(p, 0) + Fraction(c)
        self.terms = {p: c for p, c in self.terms.items() if c}

    @classmethod
    def root(cls, p: Phase) -> Cyclotomic:
        return cls({p: 1})

    @staticmethod
    def _lift(x) -> Cyclotomic:
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction, np.integer)):
            return Cyclotomic({ZERO: Fraction(int(x)) if isinstance(x, np.integer) else x})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return Cyclotomic(out)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Phase, Fraction] = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = p + q
                out[r] = out.get(r, 0) + c * d
        return Cyclotomic(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        n = lcm(*(p.den for p in self.terms))
        poly = [Fraction(0)] * n
        for p, c in self.terms.items():
            poly[p.num * (n // p.den)] += c
        phi = cyclotomic_polynomial(n)
        deg = len(phi) - 1
        for i in range(n - 1, deg - 1, -1):
            c = poly[i]
            if c:
                for j, pj in enumerate(phi):
                    poly[i - deg + j] -= c * pj
        return not any(poly[:deg])

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("Cyclotomic is unhashable")

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(sum(float(c) * to_complex(p) for p, c in self.terms.items()))

    def __abs__(self):
        return 0.0 if self.is_zero() else abs(complex(self))

    def __repr__(self):
        return " + ".join(f"{c}*z({p})" for p, c in self.terms.items()) or "0"


# cochains ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OneCochain:
    group: FiniteGroup
    den: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64) % self.den
        if v.shape != (self.group.order,):
            raise ValueError("1-cochain must have one value per group element")
        object.__setattr__(self, "values", v)

    def __call__(self, g: int) -> Phase:
        return Phase(int(self.values[g]), self.den)

    def __neg__(self):
        return OneCochain(self.group, self.den, -self.values)

    def __eq__(self, other):
        return isinstance(other, OneCochain) and all(self(g) == other(g) for g in self.group)


@dataclass(frozen=True, eq=False)
class TwoCocycle:
    """A 2-cochain with values values[g, h]/den; may fail the cocycle identity
    until checked with is_cocycle."""

    group: FiniteGroup
    den: int
    values: np.ndarray

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("denominator must be positive")
        v = np.asarray(self.values, dtype=np.int64)
        n = self.group.order
        if v.shape != (n, n):
            raise ValueError(f"cochain table has shape {v.shape}, expected {(n, n)}")
        object.__setattr__(self, "values", v % self.den)

    def __call__(self, g: int, h: int) -> Phase:
        return Phase(int(self.values[g, h]), self.den)

    def lift(self, den: int) -> TwoCocycle:
        if den % self.den:
            raise ValueError(f"cannot lift denominator {self.den} to {den}")
        return TwoCocycle(self.group, den, self.values * (den // self.den))

    def __add__(self, other: TwoCocycle) -> TwoCocycle:
        _same_group(self.group, other.group)
        d = lcm(self.den, other.den)
        return TwoCocycle(self.group, d, self.lift(d).values + other.lift(d).values)

    def __neg__(self):
        return TwoCocycle(self.group, self.den, -self.values)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TwoCocycle) or self.group != other.group:
            return False
        d = lcm(self.den, other.den)
        return bool(np.array_equal(self.lift(d).values, other.lift(d).values))

    def is_normalized(self) -> bool:
        e = self.group.identity
        return not self.values[e].any() and not self.values[:, e].any()

    def reduced(self) -> TwoCocycle:
        g = gcd(self.den, *map(int, self.values.ravel()))
        return TwoCocycle(self.group, self.den // g, self.values // g)


def _same_group(a: FiniteGroup, b: FiniteGroup):
    if a != b:
        raise ValueError("cochains live on different groups")


def cocycle_defect(t: TwoCocycle) -> np.ndarray:
    """(delta t)(g,h,k) = t(h,k) - t(gh,k) + t(g,hk) - t(g,h), mod den."""
    c, v = t.group.cayley, t.values
    n = t.group.order
    g = np.arange(n)[:, None, None]
    h = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    return (v[h, k] - v[c[g, h], k] + v[g, c[h, k]] - v[g, h]) % t.den


def is_cocycle(t: TwoCocycle) -> bool:
    return not cocycle_defect(t).any()


def coboundary(b: OneCochain) -> TwoCocycle:
    c, v = b.group.cayley, b.values
    return TwoCocycle(b.group, b.den, v[:, None] + v[None, :] - v[c])


def zero_cocycle(g: FiniteGroup) -> TwoCocycle:
    return TwoCocycle(g, 1, np.zeros((g.order, g.order), dtype=np.int64))


@dataclass(frozen=True)
class NormalizationCertificate:
    normalized: TwoCocycle
    shift: OneCochain


def normalize(t: TwoCocycle) -> NormalizationCertificate:
    """Add the constant coboundary that kills t(e, .) and t(., e).

    For a cocycle t(e, g) = t(g, e) = t(e, e), and the coboundary of the
    constant cochain c is the constant c.
    """
    if not is_cocycle(t):
        raise ValueError("normalize needs a cocycle")
    e = t.group.identity
    shift = OneCochain(t.group, t.den, np.full(t.group.order, -t.values[e, e]))
    out = t + coboundary(shift)
    assert out.is_normalized()
    return NormalizationCertificate(out, shift)


def ensure_normalized(t: TwoCocycle) -> TwoCocycle:
    if t.is_normalized():
        return t
    cert = normalize(t)
    log.info("normalized cocycle with constant shift %s", cert.shift(t.group.identity))
    return cert.normalized


# linear algebra of the bar complex ---------------------------------------

@lru_cache(maxsize=32)
def _delta1(g: FiniteGroup) -> np.ndarray:
    """Matrix of C^1 -> C^2, rows (g,h) flattened, columns elements."""
    n = g.order
    A = np.zeros((n * n, n), dtype=np.int64)
    rows = np.arange(n * n)
    a, b = rows // n, rows % n
    np.add.at(A, (rows, a), 1)
    np.add.at(A, (rows, b), 1)
    np.add.at(A, (rows, g.cayley[a, b]), -1)
    return A


@lru_cache(maxsize=32)
def _delta2(g: FiniteGroup) -> np.ndarray:
    """Matrix of C^2 -> C^3, columns (g,h) flattened."""
    n = g.order
    c = g.cayley
    rows = np.arange(n ** 3)
    a, b, k = rows // (n * n), (rows // n) % n, rows % n
    A = np.zeros((n ** 3, n * n), dtype=np.int64)
    np.add.at(A, (rows, b * n + k), 1)
    np.add.at(A, (rows, c[a, b] * n + k), -1)
    np.add.at(A, (rows, a * n + c[b, k]), 1)
    np.add.at(A, (rows, a * n + b), -1)
    return A


@lru_cache(maxsize=256)
def _delta1_factored(g: FiniteGroup, M: int) -> Diagonalization:
    A = _delta1(g)
    return diagonalize_mod(A, M, np.eye(A.shape[0], dtype=np.int64))


def _solve_coboundary(g: FiniteGroup, rhs: np.ndarray, M: int) -> np.ndarray | None:
    """x with delta(x) = rhs mod M; the row transform is cached for small groups."""
    if g.order > 32:
        return solve_mod(_delta1(g), rhs, M)
    dz = _delta1_factored(g, M)
    c = (dz.rhs @ rhs) % M
    y = np.zeros(g.order, dtype=np.int64)
    for i, ci in enumerate(c.tolist()):
        d = dz.diag[i] if i < g.order else 0
        q = gcd(d, M)
        if ci % q:
            return None
        if d:
            m = M // q
            y[i] = ((ci // q) * pow((d // q) % m, -1, m)) % m if m > 1 else 0
    return (dz.V @ y) % M


def cohomologous(t1: TwoCocycle, t2: TwoCocycle, max_denominator_factor: int | None = None) -> OneCochain | None:
    """Find beta with t1 - t2 = delta(beta) as U(1)-valued cochains.

    beta may need a finer denominator than either input; we allow up to
    lcm(den1, den2) * factor, the factor defaulting to |G|.
    """
    _same_group(t1.group, t2.group)
    g = t1.group
    factor = g.order if max_denominator_factor is None else max_denominator_factor
    if factor < 1:
        raise ValueError("max_denominator_factor must be positive")
    L = lcm(t1.den, t2.den)
    M = L * factor
    diff = (t1 - t2).lift(L).values.ravel() * (M // L)
    x = _solve_coboundary(g, diff, M)
    if x is None:
        return None
    beta = OneCochain(g, M, x)
    assert coboundary(beta) == t1 - t2
    return beta


def random_cocycle(g: FiniteGroup, den: int, seed: int) -> TwoCocycle:
    """Uniform sample from the normalized 2-cocycles with values in (1/den)Z/Z.

    A uniform cocycle is drawn from the kernel of delta and then normalized;
    normalization is a surjective homomorphism with fibres of equal size,
    so the result is uniform among normalized cocycles.
    """
    if not 1 <= den <= 64:
        raise ValueError("den must lie in [1, 64]")
    gens, counts = kernel_generators(_delta2(g), den)
    rng = np.random.default_rng(seed)
    coeffs = np.array([rng.integers(0, c) for c in counts], dtype=np.int64)
    vals = (gens @ coeffs) % den
    t = TwoCocycle(g, den, vals.reshape(g.order, g.order))
    assert is_cocycle(t)
    return normalize(t).normalized


def random_cochain(g: FiniteGroup, den: int, seed: int) -> OneCochain:
    rng = np.random.default_rng(seed)
    return OneCochain(g, den, rng.integers(0, den, size=g.order))


def klein_cocycle(g: FiniteGroup) -> TwoCocycle:
    """theta((i1,j1),(i2,j2)) = j1*i2/2 on Z/2 x Z/2 (index = 2i + j)."""
    if g.order != 4:
        raise ValueError("expects the Klein four-group")
    idx = np.arange(4)
    i, j = idx // 2, idx % 2
    return TwoCocycle(g, 2, np.outer(j, i))


# JSON --------------------------------------------------------------------

def cocycle_to_json(t: TwoCocycle) -> dict:
    return {"group": group_to_json(t.group), "den": t.den, "values": t.values.tolist()}


def cocycle_from_json(doc: dict, group: FiniteGroup | None = None) -> TwoCocycle:
    if group is None:
        group = group_from_json(doc["group"])
    return TwoCocycle(group, int(doc["den"]), doc["values"])


def cochain_to_json(b: OneCochain) -> dict:
    return {"group": group_to_json(b.group), "den": b.den, "values": b.values.tolist()}


def cochain_from_json(doc: dict, group: FiniteGroup | None = None) -> OneCochain:
    if group is None:
        group = group_from_json(doc["group"])
    return OneCochain(group, int(doc["den"]), doc["values"])
