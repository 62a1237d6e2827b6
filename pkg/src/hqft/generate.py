"""Seeded random well-typed expressions, for fuzzing the interpreter."""

from __future__ import annotations

import random

from .cobordism import Compose, Expr, Gen, Tensor, compose, handle_expr, tensor, typecheck
from .group import FiniteGroup

MAX_WIDTH = 4


def random_layer(g: FiniteGroup, src: tuple[int, ...], rng: random.Random) -> Expr:
    """A tensor of generators whose source is exactly src."""
    e = g.identity
    while True:
        parts: list[Expr] = []
        width = 0
        i = 0
        while i < len(src) or not parts:
            if rng.random() < 0.15 and width < MAX_WIDTH - 1:
                x = rng.randrange(g.order)
                gen = rng.choice([Gen("unit"), Gen("copair", (x,))])
                parts.append(gen)
                width += len(typecheck(gen, g)[1])
                continue
            if i >= len(src):
                if not parts:
                    parts.append(Gen("unit"))
                break
            a = src[i]
            opts = [Gen("id", (a,)), Gen("act", (rng.randrange(g.order), a))]
            x = rng.randrange(g.order)
            opts.append(Gen("comult", (x, g.mul(g.inv(x), a))))
            if a == e:
                opts.append(Gen("counit"))
            if i + 1 < len(src):
                b = src[i + 1]
                opts += [Gen("mult", (a, b)), Gen("swap", (a, b))]
                if b == g.inv(a):
                    opts.append(Gen("pair", (a,)))
            gen = rng.choice(opts)
            parts.append(gen)
            used = len(typecheck(gen, g)[0])
            i += used
            width += len(typecheck(gen, g)[1])
        expr = tensor(*parts)
        if len(typecheck(expr, g)[1]) <= MAX_WIDTH:
            return expr


def random_expr(g: FiniteGroup, src: tuple[int, ...], depth: int, rng: random.Random) -> Expr:
    if depth <= 0:
        return random_layer(g, src, rng)
    r = rng.random()
    if r < 0.6:
        inner = random_expr(g, src, depth - 1, rng)
        outer = random_expr(g, typecheck(inner, g)[1], depth - 1, rng)
        return Compose(outer, inner)
    if r < 0.85 and len(src) >= 2:
        k = rng.randrange(1, len(src))
        return Tensor(random_expr(g, src[:k], depth - 1, rng), random_expr(g, src[k:], depth - 1, rng))
    return random_layer(g, src, rng)


def random_signature(g: FiniteGroup, rng: random.Random, max_len: int = 3) -> tuple[int, ...]:
    return tuple(rng.randrange(g.order) for _ in range(rng.randrange(max_len + 1)))


# connected ordinary cobordisms (trivial group) ----------------------------

def _fold(n: int, rng: random.Random) -> Expr:
    """n circles merged into one by a random bracketing of mult."""
    if n == 1:
        return Gen("id", (0,))
    k = rng.randrange(1, n)
    return compose(Gen("mult", (0, 0)), Tensor(_fold(k, rng), _fold(n - k, rng)))


def _unfold(n: int, rng: random.Random) -> Expr:
    if n == 1:
        return Gen("id", (0,))
    k = rng.randrange(1, n)
    return compose(Tensor(_unfold(k, rng), _unfold(n - k, rng)), Gen("comult", (0, 0)))


def _shuffle(n: int, rng: random.Random) -> Expr:
    """A random layer of adjacent swaps on n circles."""
    parts: list[Expr] = []
    i = 0
    while i < n:
        if i + 1 < n and rng.random() < 0.5:
            parts.append(Gen("swap", (0, 0)))
            i += 2
        else:
            parts.append(Gen("id", (0,)))
            i += 1
    return tensor(*parts)


def random_connected(n_in: int, n_out: int, genus: int, rng: random.Random, trivial: FiniteGroup) -> Expr:
    """A connected cobordism between n_in and n_out circles over the trivial group."""
    steps: list[Expr] = []
    if n_in == 0:
        steps.append(Gen("unit"))
    else:
        if n_in > 1 and rng.random() < 0.5:
            steps.append(_shuffle(n_in, rng))
        steps.append(_fold(n_in, rng))
    for _ in range(genus):
        if rng.random() < 0.5:
            steps.append(compose(Gen("mult", (0, 0)), Gen("comult", (0, 0))))
        else:
            steps.append(compose(Gen("mult", (0, 0)), Tensor(Gen("id", (0,)), handle_expr(trivial, 0, 0))))
    if rng.random() < 0.3:
        steps.append(Gen("act", (0, 0)))
    if n_out == 0:
        steps.append(Gen("counit"))
    else:
        steps.append(_unfold(n_out, rng))
        if n_out > 1 and rng.random() < 0.5:
            steps.append(_shuffle(n_out, rng))
    return compose(*reversed(steps))
