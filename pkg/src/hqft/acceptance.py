"""The acceptance suite: eleven property checks run from one seed.

Each criterion returns a Result whose ``detail`` is plain JSON data; no
timing goes into the report so that reruns are byte-identical.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import statesum as ss
from .cobordism import (Compose, Gen, GSurface, Interpreter, Tensor, compose, genus_surface_expr, parse,
                        to_text, typecheck)
from .crossed import (change_basis, direct_sum, from_cocycle, group_algebra, intertwiner_residual,
                      random_basis_change, rescaling, verify)
from .generate import random_connected, random_expr, random_signature
from .group import FiniteGroup, build_cyclic, dihedral_group_4, klein_four, symmetric_group_3
from .oracles import all_cocycles, brute_cohomologous, rank_one_torus, torus_trace
from .phase import (OneCochain, Phase, TwoCocycle, coboundary, cohomologous, ensure_normalized, is_cocycle,
                    klein_cocycle, random_cochain, random_cocycle, to_complex, zero_cocycle)
from .pi2 import TRIVIAL, LabeledCobordism, algebra_z2_t, compose_labeled, evaluate_labeled, insertion_sites, \
    verify_pi2

DEFAULT_SEED = 20240601


@dataclass
class Result:
    id: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail}

    def line(self) -> str:
        return f"criterion {self.id:2d} [{'PASS' if self.passed else 'FAIL'}] {self.name}"


def snap(z: complex, den: int) -> Phase:
    """Nearest den-th root of unity, as a phase."""
    k = round(np.angle(z) / (2 * np.pi) * den)
    return Phase(k, den)


class Context:
    """Shared seeded material: the groups, theories and surface instances."""

    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = seed

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    @cached_property
    def groups(self) -> dict[str, FiniteGroup]:
        return {"Z2": build_cyclic(2), "Z4": build_cyclic(4), "Z2xZ2": klein_four(), "S3": symmetric_group_3()}

    @cached_property
    def cocycles(self) -> dict[str, list[TwoCocycle]]:
        out = {}
        for k, (name, g) in enumerate(self.groups.items()):
            out[name] = [random_cocycle(g, 1 + i % 8, self.seed * 131 + 1000 * k + i) for i in range(20)]
        return out

    @cached_property
    def coboundaries(self) -> dict[str, list[TwoCocycle]]:
        out = {}
        for k, (name, g) in enumerate(self.groups.items()):
            out[name] = [coboundary(random_cochain(g, 1 + i % 8, self.seed * 137 + 1000 * k + i))
                         for i in range(20)]
        return out

    def theories(self, name: str) -> list[TwoCocycle]:
        return self.cocycles[name] + self.coboundaries[name]

    @cached_property
    def surfaces(self) -> dict[str, list[GSurface]]:
        """All commuting tori, then distinct seeded genus-2 and genus-3 surfaces."""
        out = {}
        for name, g in self.groups.items():
            rng = self.rng(f"surfaces:{name}")
            found = [GSurface(g, ((a, b),)) for a in g for b in g if g.mul(a, b) == g.mul(b, a)]
            seen = set(found)
            for genus, want in ((2, 30), (3, 20)):
                got = 0
                for _ in range(50 * want):
                    if got == want:
                        break
                    s = GSurface(g, tuple(ss.random_handles(g, genus, rng)))
                    if s not in seen:
                        seen.add(s)
                        found.append(s)
                        got += 1
            out[name] = found
        return out

    @cached_property
    def triangulations(self) -> dict[tuple[str, GSurface], tuple]:
        return {(name, s): ss.build_genus_g(s.group, s.handles)
                for name, ls in self.surfaces.items() for s in ls}


# criteria ------------------------------------------------------------------

def c1_cocycles(ctx: Context) -> Result:
    counts = {}
    ok = True
    for name in ctx.groups:
        good_c = sum(is_cocycle(t) for t in ctx.cocycles[name])
        good_b = sum(is_cocycle(t) for t in ctx.coboundaries[name])
        counts[name] = {"random_cocycles": good_c, "coboundaries": good_b}
        ok &= good_c == 20 and good_b == 20
    return Result(1, "cocycle soundness", ok, counts)


def c2_exact_axioms(ctx: Context) -> Result:
    failures = []
    n = 0
    for name in ctx.groups:
        for i, t in enumerate(ctx.theories(name)):
            r = verify(from_cocycle(t), 0.0)
            n += 1
            if not r.passed or r.residual != 0:
                failures.append({"group": name, "index": i, "failed": [c.name for c in r.failures()]})
    return Result(2, "crossed-algebra axioms from cocycles (exact)", not failures,
                  {"algebras": n, "failures": failures[:5]})


def c3_group_algebras(ctx: Context, tol: float = 1e-9) -> Result:
    out = {}
    ok = True
    for name, g in (("Z2", build_cyclic(2)), ("Z6", build_cyclic(6)), ("S3", symmetric_group_3()),
                    ("D4", dihedral_group_4())):
        r = verify(group_algebra(g), tol)
        out[name] = {"passed": r.passed, "residual": r.residual}
        ok &= r.passed
    return Result(3, "group algebras pass the verifier", ok, out)


def _compare(v_interp: Interpreter, theta: TwoCocycle, s: GSurface, tri, tol: float):
    z = complex(v_interp(genus_surface_expr(s))[0, 0])
    p = ss.evaluate(theta, *tri)
    den = ensure_normalized(theta).den
    exact = snap(z, den) == p
    return z, p, exact and abs(z - to_complex(p)) <= tol


def c4_oracle(ctx: Context, tol: float = 1e-9) -> Result:
    n_eval, bad, torus_bad = 0, [], 0
    for name in ctx.groups:
        for i, t in enumerate(ctx.theories(name)):
            alg = from_cocycle(t)
            interp = Interpreter(alg)
            for s in ctx.surfaces[name]:
                z, p, ok = _compare(interp, t, s, ctx.triangulations[name, s], tol)
                n_eval += 1
                if not ok:
                    bad.append({"group": name, "theory": i, "handles": [list(h) for h in s.handles],
                                "interpreter": [z.real, z.imag], "state_sum": str(p)})
                if s.genus == 1:
                    a, b = s.handles[0]
                    nt = ensure_normalized(t)
                    if abs(torus_trace(alg, a, b) - to_complex(rank_one_torus(nt, a, b))) > tol:
                        torus_bad += 1
    n_surf = sum(len(v) for v in ctx.surfaces.values())
    ok = not bad and not torus_bad and n_surf >= 200
    return Result(4, "interpreter agrees with the state sum", ok,
                  {"surfaces": n_surf, "evaluations": n_eval, "mismatches": bad[:5], "torus_trace_mismatches": torus_bad})


def c5_coboundary_invariance(ctx: Context) -> Result:
    rng = ctx.rng("c5")
    names = list(ctx.groups)
    bad, worst = [], 0.0
    for k in range(50):
        name = names[k % len(names)]
        g = ctx.groups[name]
        t = ctx.cocycles[name][rng.randrange(20)]
        beta = random_cochain(g, rng.randint(1, 8), rng.randrange(1 << 30))
        t2 = t + coboundary(beta)
        for s in ctx.surfaces[name]:
            tri = ctx.triangulations[name, s]
            if ss.evaluate(t, *tri) != ss.evaluate(t2, *tri):
                bad.append({"pair": k, "group": name, "handles": [list(h) for h in s.handles]})
        b0 = OneCochain(g, beta.den, beta.values - beta.values[g.identity])
        worst = max(worst, intertwiner_residual(from_cocycle(t), from_cocycle(t + coboundary(b0)), rescaling(b0)))
    ok = not bad and worst <= 1e-12
    return Result(5, "coboundary invariance", ok, {"pairs": 50, "mismatches": bad[:5], "rescaling_residual": worst})


def c6_pachner(ctx: Context, cases: int = 1000, moves: int = 20) -> Result:
    names = list(ctx.groups)
    per = -(-cases // len(names))
    total, nonconst, attempted, skipped = 0, [], 0, 0
    for k, name in enumerate(names):
        theta = random_cocycle(ctx.groups[name], 8, ctx.seed + 77 * k)
        for c in ss.pachner_fuzz(theta, ctx.seed + k, moves, min(per, cases - total)):
            total += 1
            attempted += c.attempted
            skipped += c.skipped
            if not c.constant:
                nonconst.append({"group": name, "case": c.index})
    rate = skipped / attempted if attempted else 0.0
    ok = not nonconst and rate < 0.5 and total == cases
    return Result(6, "Pachner invariance", ok, {"cases": total, "moves_attempted": attempted,
                                                "skip_rate": round(rate, 6), "non_constant": nonconst[:5]})


def c7_klein(ctx: Context) -> Result:
    g = klein_four()
    x, y = g.index("x"), g.index("y")
    s = GSurface(g, ((x, y),))
    tri = ss.build_torus(g, x, y)
    vals = {}
    for label, t in (("trivial", zero_cocycle(g)), ("nontrivial", klein_cocycle(g))):
        z = complex(Interpreter(from_cocycle(t))(genus_surface_expr(s))[0, 0])
        vals[label] = {"interpreter": [round(z.real, 12), round(z.imag, 12)], "state_sum": str(ss.evaluate(t, *tri))}
    ok = (abs(Interpreter(from_cocycle(zero_cocycle(g)))(genus_surface_expr(s))[0, 0] - 1) <= 1e-12
          and abs(Interpreter(from_cocycle(klein_cocycle(g)))(genus_surface_expr(s))[0, 0] + 1) <= 1e-12
          and ss.evaluate(zero_cocycle(g), *tri) == Phase(0)
          and ss.evaluate(klein_cocycle(g), *tri) == Phase(1, 2))
    # every pair of cocycles with denominator 2
    cs = all_cocycles(g, 2)
    tor = [ss.evaluate(t, *tri) for t in cs]
    disagree = 0
    for (i, a), (j, b) in itertools.product(enumerate(cs), repeat=2):
        if (cohomologous(a, b) is None) != (tor[i] != tor[j]):
            disagree += 1
    ok &= disagree == 0
    return Result(7, "Klein classes are distinguished", ok,
                  {"torus": vals, "pairs": len(cs) ** 2, "disagreements": disagree})


def _frobenius_snake(interp: Interpreter, g: FiniteGroup) -> float:
    worst = 0.0
    for a, b, x in itertools.product(g, g, g):
        ab = g.mul(a, b)
        y = g.mul(g.inv(x), ab)
        lhs = interp(compose(Gen("comult", (x, y)), Gen("mult", (a, b))))
        r1 = interp(compose(Tensor(Gen("mult", (a, g.mul(g.inv(a), x))), Gen("id", (y,))),
                            Tensor(Gen("id", (a,)), Gen("comult", (g.mul(g.inv(a), x), y)))))
        r2 = interp(compose(Tensor(Gen("id", (x,)), Gen("mult", (g.mul(g.inv(x), a), b))),
                            Tensor(Gen("comult", (x, g.mul(g.inv(x), a))), Gen("id", (b,)))))
        worst = max(worst, float(np.abs(lhs - r1).max(initial=0)), float(np.abs(lhs - r2).max(initial=0)))
    for a in g:
        ai = g.inv(a)
        I = interp(Gen("id", (a,)))
        s1 = interp(compose(Tensor(Gen("id", (a,)), Gen("pair", (ai,))), Tensor(Gen("copair", (a,)), Gen("id", (a,)))))
        s2 = interp(compose(Tensor(Gen("pair", (a,)), Gen("id", (a,))), Tensor(Gen("id", (a,)), Gen("copair", (ai,)))))
        worst = max(worst, float(np.abs(s1 - I).max(initial=0)), float(np.abs(s2 - I).max(initial=0)))
    return worst


def c8_functoriality(ctx: Context, trees: int = 500) -> Result:
    rng = ctx.rng("c8")
    s3 = symmetric_group_3()
    k4 = klein_four()
    high = direct_sum(from_cocycle(klein_cocycle(k4)), group_algebra(k4))
    high = change_basis(high, random_basis_change(high, np.random.default_rng(ctx.seed % (1 << 32))))
    algebras = [from_cocycle(random_cocycle(s3, 6, ctx.seed)), high]
    worst_fun, worst_text, id_exact = 0.0, 0.0, True
    for k in range(trees):
        v = algebras[k % 2]
        g = v.group
        interp = Interpreter(v)
        s1, s2 = random_signature(g, rng, 2), random_signature(g, rng, 2)
        h = random_expr(g, s1, 2, rng)
        kk = random_expr(g, s2, 2, rng)
        f = random_expr(g, typecheck(h, g)[1], 1, rng)
        gg = random_expr(g, typecheck(kk, g)[1], 1, rng)
        whole = Compose(Tensor(f, gg), Tensor(h, kk))
        M = Interpreter(v)(whole)
        ref = np.kron(interp(f) @ interp(h), interp(gg) @ interp(kk))
        scale = max(1.0, float(np.abs(ref).max(initial=0)))
        worst_fun = max(worst_fun, float(np.abs(M - ref).max(initial=0)) / scale)
        back = Interpreter(v)(parse(to_text(whole, g), g))
        worst_text = max(worst_text, float(np.abs(back - M).max(initial=0)) / scale)
        for a in set(s1):
            I = interp(Gen("id", (a,)))
            id_exact &= bool(np.array_equal(I, np.eye(v.dims[a])))
    frob = max(_frobenius_snake(Interpreter(v), v.group) for v in algebras)
    ok = worst_fun <= 1e-12 and worst_text <= 1e-12 and frob <= 1e-9 and id_exact
    return Result(8, "functoriality and Frobenius identities", ok,
                  {"trees": trees, "functoriality_residual": worst_fun, "reparse_residual": worst_text,
                   "frobenius_snake_residual": frob, "identity_exact": id_exact})


def c9_reversal(ctx: Context) -> Result:
    bad, n = 0, 0
    for name in ctx.groups:
        for t in ctx.theories(name):
            for s in ctx.surfaces[name]:
                tri = ctx.triangulations[name, s]
                n += 1
                if ss.evaluate(t, *ss.reverse_orientation(*tri)) != -ss.evaluate(t, *tri):
                    bad += 1
    return Result(9, "orientation reversal negates the phase", bad == 0, {"evaluations": n, "failures": bad})


def c10_pi2(ctx: Context, pairs: int = 100, tol: float = 1e-12) -> Result:
    v = algebra_z2_t()
    rep = verify_pi2(v, tol)
    rng = ctx.rng("c10")
    worst_add, worst_place = 0.0, 0.0
    for _ in range(pairs):
        n_in, n_mid, n_out = rng.randint(0, 2), rng.randint(1, 2), rng.randint(0, 2)
        c1 = LabeledCobordism(random_connected(n_in, n_mid, rng.randint(0, 1), rng, TRIVIAL), rng.randrange(2))
        c2 = LabeledCobordism(random_connected(n_mid, n_out, rng.randint(0, 1), rng, TRIVIAL), rng.randrange(2))
        both = compose_labeled(c2, c1, v.group)
        lhs = evaluate_labeled(v, both)
        rhs = evaluate_labeled(v, c2) @ evaluate_labeled(v, c1)
        # the left factor carries u_{l2} and the right u_{l1}; the product carries u_{l1+l2}
        worst_add = max(worst_add, float(np.abs(lhs - rhs).max(initial=0)))
        for site in insertion_sites(both.expr):
            worst_place = max(worst_place, float(np.abs(evaluate_labeled(v, both, site) - lhs).max(initial=0)))
    ok = rep.passed and worst_add <= tol and worst_place <= tol
    return Result(10, "pi2 sector", ok, {"verify_residual": rep.residual, "pairs": pairs,
                                         "additivity_residual": worst_add, "placement_residual": worst_place})


def c11_solver(ctx: Context, max_den: int = 8, sampled_pairs: int = 60) -> Result:
    """Exhaustive over equal denominators, sampled literal pairs across denominators.

    For a pair (t1, t2) both the solver and the brute force depend only on
    t1 - t2 and lcm(den1, den2); with equal denominators the differences
    run over all cocycles of that denominator, so checking each cocycle
    against zero covers every such pair.
    """
    rng = ctx.rng("c11")
    groups = {"Z1": build_cyclic(1), "Z2": build_cyclic(2), "Z3": build_cyclic(3), "Z4": build_cyclic(4),
              "Z2xZ2": klein_four()}
    checked, disagree, cross = 0, [], 0
    for name, g in groups.items():
        pools = {d: all_cocycles(g, d) for d in range(1, max_den + 1)}
        for d, pool in pools.items():
            z = TwoCocycle(g, d, np.zeros((g.order, g.order), dtype=np.int64))
            for t in pool:
                checked += 1
                if (cohomologous(t, z) is not None) != brute_cohomologous(t, z):
                    disagree.append({"group": name, "den": d, "values": t.values.tolist()})
        for d1, d2 in itertools.combinations(range(1, max_den + 1), 2):
            M = np.lcm(d1, d2) * g.order
            if M ** (g.order - 1) > 300_000:
                continue
            for _ in range(sampled_pairs):
                a, b = rng.choice(pools[d1]), rng.choice(pools[d2])
                cross += 1
                if (cohomologous(a, b) is not None) != brute_cohomologous(a, b):
                    disagree.append({"group": name, "dens": [d1, d2]})
    return Result(11, "solver agrees with brute force", not disagree,
                  {"exhaustive_cocycles": checked, "cross_denominator_pairs": cross, "disagreements": disagree[:5]})


CRITERIA = (c1_cocycles, c2_exact_axioms, c3_group_algebras, c4_oracle, c5_coboundary_invariance, c6_pachner,
            c7_klein, c8_functoriality, c9_reversal, c10_pi2, c11_solver)


def run_all(seed: int = DEFAULT_SEED, only: set[int] | None = None) -> list[Result]:
    ctx = Context(seed)
    return [c(ctx) for i, c in enumerate(CRITERIA, 1) if only is None or i in only]
