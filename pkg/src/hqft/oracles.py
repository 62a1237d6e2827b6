"""Slow independent references used to cross-check the fast paths."""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import lcm

import numpy as np

from .crossed import CrossedAlgebra
from .group import FiniteGroup
from .phase import Phase, TwoCocycle, _delta2, is_cocycle, to_complex
from .snf import kernel_generators

BRUTE_LIMIT = 300_000


@lru_cache(maxsize=64)
def coboundary_set(g: FiniteGroup, M: int) -> frozenset[bytes]:
    """Every table delta(beta) mod M with beta(e) = 0, as raw bytes."""
    n = g.order
    others = [x for x in g if x != g.identity]
    if M ** len(others) > BRUTE_LIMIT:
        raise ValueError(f"brute force over {M}^{len(others)} cochains is too large")
    grid = np.array(list(itertools.product(range(M), repeat=len(others))), dtype=np.int64)
    beta = np.zeros((len(grid), n), dtype=np.int64)
    if others:
        beta[:, others] = grid
    tables = (beta[:, :, None] + beta[:, None, :] - beta[:, g.cayley]) % M
    rows = tables.reshape(len(grid), n * n).astype(np.int16)
    return frozenset(r.tobytes() for r in rows)


def brute_cohomologous(t1: TwoCocycle, t2: TwoCocycle, factor: int | None = None) -> bool:
    """Enumerate 1-cochains with values in (1/M)Z/Z, M = lcm(dens) * factor.

    A constant cochain c has coboundary c, so we split off the constant
    part: t1 - t2 must equal delta(beta0) + t(e, e) with beta0(e) = 0.
    """
    g = t1.group
    factor = g.order if factor is None else factor
    M = lcm(t1.den, t2.den) * factor
    d = (t1 - t2).lift(lcm(t1.den, t2.den))
    vals = d.values * (M // d.den)
    e = g.identity
    vals = (vals - vals[e, e]) % M
    return vals.ravel().astype(np.int16).tobytes() in coboundary_set(g, M)


def all_cocycles_by_filter(g: FiniteGroup, den: int) -> list[TwoCocycle]:
    """Every cocycle with values in (1/den)Z/Z, by filtering all cochains."""
    n = g.order
    if den ** (n * n) > 5_000_000:
        raise ValueError("too many cochains to enumerate")
    out = []
    for vals in itertools.product(range(den), repeat=n * n):
        t = TwoCocycle(g, den, np.array(vals, dtype=np.int64).reshape(n, n))
        if is_cocycle(t):
            out.append(t)
    return out


def all_cocycles(g: FiniteGroup, den: int) -> list[TwoCocycle]:
    """Every cocycle with values in (1/den)Z/Z, as combinations of kernel generators."""
    gens, counts = kernel_generators(_delta2(g), den)
    n = g.order
    seen: dict[bytes, TwoCocycle] = {}
    for coeffs in itertools.product(*(range(int(c)) for c in counts)):
        vals = (gens @ np.array(coeffs, dtype=np.int64)) % den if len(counts) else np.zeros(n * n, np.int64)
        key = vals.astype(np.int8).tobytes()
        if key not in seen:
            seen[key] = TwoCocycle(g, den, vals.reshape(n, n))
    return list(seen.values())


def torus_trace(v: CrossedAlgebra, a: int, b: int) -> complex:
    """Tr(phi(a) restricted to V_b), the torus with commuting holonomies (a, b)."""
    g = v.group
    if g.mul(a, b) != g.mul(b, a):
        raise ValueError("torus holonomies must commute")
    n = v.numeric()
    return complex(np.trace(n.phi[a, b]))


def rank_one_torus(theta: TwoCocycle, a: int, b: int) -> Phase:
    """theta(a, b) - theta(b, a), the torus phase for a rank-one theory."""
    return theta(a, b) - theta(b, a)


def phase_close(z: complex, p: Phase, tol: float = 1e-9) -> bool:
    return abs(z - to_complex(p)) <= tol
