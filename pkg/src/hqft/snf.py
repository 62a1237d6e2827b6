"""Diagonalization of integer matrices over Z/n.

Row and column operations are unimodular, so for A the result satisfies
U A V = diag(d) (mod n).  U is never formed: its action is applied to the
right-hand side columns handed in.  Good enough for solving A x = b mod n
and for a generating set of ker A mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


@dataclass
class Diagonalization:
    modulus: int
    diag: list[int]  # one entry per column; zero past the rank
    V: np.ndarray  # cols x cols
    rhs: np.ndarray | None  # U @ b for the b passed in

    def kernel_orders(self) -> list[int]:
        """Step n/gcd(d_i, n) generating the allowed values of y_i in D y = 0."""
        return [self.modulus // gcd(d, self.modulus) for d in self.diag]


def _unit_part(p: int, n: int) -> tuple[int, int]:
    """Write p = u*d (mod n) with d = gcd(p, n) and u a unit; return (d, u^-1)."""
    d = gcd(p, n)
    q, m = p // d, n // d
    u = q % m if m > 1 else 1
    while gcd(u, n) != 1:
        u += m
    return d, pow(u, -1, n)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def diagonalize_mod(A: np.ndarray, n: int, rhs: np.ndarray | None = None) -> Diagonalization:
    if n < 1:
        raise ValueError("modulus must be positive")
    M = np.array(A, dtype=np.int64) % n
    rows, cols = M.shape
    V = np.eye(cols, dtype=np.int64)
    B = None if rhs is None else np.array(rhs, dtype=np.int64).reshape(rows, -1) % n
    diag = [0] * cols

    for k in range(min(rows, cols)):
        sub = M[k:, k:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        gs = np.gcd(sub[nz[:, 0], nz[:, 1]], n)
        i, j = nz[int(np.argmin(gs))] + k
        if i != k:
            M[[k, i]] = M[[i, k]]
            if B is not None:
                B[[k, i]] = B[[i, k]]
        if j != k:
            M[:, [k, j]] = M[:, [j, k]]
            V[:, [k, j]] = V[:, [j, k]]

        while True:
            p = int(M[k, k])
            d, uinv = _unit_part(p, n)
            # column k below the pivot
            col = M[k + 1:, k]
            easy = np.flatnonzero((col != 0) & (col % d == 0)) + k + 1
            if len(easy):
                q = ((M[easy, k] // d) * uinv) % n
                M[easy] = (M[easy] - q[:, None] * M[k][None, :]) % n
                if B is not None:
                    B[easy] = (B[easy] - q[:, None] * B[k][None, :]) % n
            hard = np.flatnonzero(M[k + 1:, k] != 0) + k + 1
            if len(hard):
                r = int(hard[0])
                a = int(M[r, k])
                g, s, t = _ext_gcd(p, a)
                rk, rr = M[k].copy(), M[r].copy()
                M[k] = (s * rk + t * rr) % n
                M[r] = ((-(a // g)) * rk + (p // g) * rr) % n
                if B is not None:
                    bk, br = B[k].copy(), B[r].copy()
                    B[k] = (s * bk + t * br) % n
                    B[r] = ((-(a // g)) * bk + (p // g) * br) % n
                continue
            # row k right of the pivot
            row = M[k, k + 1:]
            easy = np.flatnonzero((row != 0) & (row % d == 0)) + k + 1
            if len(easy):
                q = ((M[k, easy] // d) * uinv) % n
                M[:, easy] = (M[:, easy] - M[:, [k]] * q[None, :]) % n
                V[:, easy] = (V[:, easy] - V[:, [k]] * q[None, :]) % n
            hard = np.flatnonzero(M[k, k + 1:] != 0) + k + 1
            if len(hard):
                c = int(hard[0])
                a = int(M[k, c])
                g, s, t = _ext_gcd(p, a)
                ck, cc = M[:, k].copy(), M[:, c].copy()
                M[:, k] = (s * ck + t * cc) % n
                M[:, c] = ((-(a // g)) * ck + (p // g) * cc) % n
                vk, vc = V[:, k].copy(), V[:, c].copy()
                V[:, k] = (s * vk + t * vc) % n
                V[:, c] = ((-(a // g)) * vk + (p // g) * vc) % n
                continue
            break
        diag[k] = int(M[k, k])

    return Diagonalization(n, diag, V, B)


def solve_mod(A: np.ndarray, b: np.ndarray, n: int) -> np.ndarray | None:
    """Some x with A x = b (mod n), or None when the system is inconsistent."""
    rows, cols = np.shape(A)
    dz = diagonalize_mod(A, n, np.reshape(b, (rows, 1)))
    c = dz.rhs[:, 0]
    y = np.zeros(cols, dtype=np.int64)
    for i in range(rows):
        d = dz.diag[i] if i < cols else 0
        ci = int(c[i])
        g = gcd(d, n)
        if ci % g:
            return None
        if d:
            m = n // g
            y[i] = ((ci // g) * pow((d // g) % m, -1, m)) % m if m > 1 else 0
    return (dz.V @ y) % n


def kernel_generators(A: np.ndarray, n: int) -> tuple[np.ndarray, list[int]]:
    """Columns x_i of V scaled so that ker A mod n = {sum c_i x_i}.

    Returns (generators as columns, number of distinct multiples of each).
    """
    dz = diagonalize_mod(A, n)
    steps = dz.kernel_orders()
    gens = (dz.V * np.array(steps, dtype=np.int64)[None, :]) % n
    counts = [n // s for s in steps]
    return gens, counts
