"""Exhaustive and seeded-random checks of the decompositions and functor identities.

Each ``check_*`` function returns a :class:`CheckResult`; nothing raises on a
failed property, the first counterexample is recorded instead.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb

from . import groups as G
from .barhom import (based_bar_matrix, bar_matrix, cyclic_operator, degeneracy_matrix,
                     face_matrix, operator_matrix, _reflection_basis)
from .errors import CapExceeded
from .exactlinalg import QQ, GF, ExactMatrix
from .factorize import (b_module_action, factor_d_hplus, factor_delta_h, factor_reflexive,
                        is_reflexive_op)
from .groups import GroupFamily, canonical_R, canonical_T, enumerate_group, is_member
from .invalg import BUILTINS, builtin
from .ncsets import (NCMorphism, compose, embed_delta, embed_group, embed_reflection,
                     enumerate_hom, generate_reflexive_subcategory, hom_size,
                     loday_degeneracy_morphism, loday_face_morphism, random_morphism)

DEFAULT_SEED = 20240101


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: str | None = None
    notes: list = field(default_factory=list)
    seed: int | None = None
    seconds: float = 0.0

    def fail(self, what: str):
        if self.passed:
            self.counterexample = what
        self.passed = False

    def expect(self, cond: bool, what):
        self.checked += 1
        if not cond:
            self.fail(what() if callable(what) else what)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked} checks"
        if self.seed is not None:
            line += f", seed {self.seed}"
        line += f", {self.seconds:.2f}s"
        return line


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _delta_maps(n: int, m: int):
    import itertools
    return [phi for phi in itertools.product(range(m + 1), repeat=n + 1)
            if all(a <= b for a, b in zip(phi, phi[1:]))]


@_timed
def check_dihedral_subgroup(max_n: int = 8) -> CheckResult:
    """R^2 = T^{n+1} = 1, RTR = T^{-1}, |<R, T>| = 2(n+1) and R acts as i -> n - i."""
    res = CheckResult("dihedral-subgroup")
    for n in range(max_n + 1):
        R, T = canonical_R(n), canonical_T(n)
        res.expect((R * R).is_identity(), f"R^2 != 1 at n={n}")
        res.expect((T ** (n + 1)).is_identity(), f"T^(n+1) != 1 at n={n}")
        res.expect(R * T * R == G.inverse(T), f"RTR != T^-1 at n={n}")
        res.expect(all(R.sigma[i] == n - i for i in range(n + 1)), f"R is not i -> n-i at n={n}")
        if n <= 6:
            res.expect(G.order(GroupFamily.DIHEDRAL, n) == 2 * (n + 1), f"|<R,T>| wrong at n={n}")
    return res


@_timed
def check_delta_h(exhaustive_n: int = 2, sampled_n: int = 4, samples: int = 10_000,
                  seed: int = DEFAULT_SEED, cap: int = 10**6) -> CheckResult:
    """IF(as) = Delta o H: existence and uniqueness exhaustively, reconstruction by sampling."""
    res = CheckResult("delta-h", seed=seed)
    for n in range(exhaustive_n + 1):
        group = enumerate_group(GroupFamily.HYPEROCTAHEDRAL, n, cap)
        for m in range(exhaustive_n + 1):
            deltas = _delta_maps(n, m)
            if len(deltas) * len(group) > cap:
                raise CapExceeded(f"{len(deltas) * len(group)} pairs at ({n}, {m}); lower --max-n")
            # every pair (phi, g) composes to a distinct morphism, and all are hit
            images = {}
            for phi in deltas:
                e = embed_delta(phi, m)
                for g in group:
                    f = compose(e, embed_group(g))
                    if f in images:
                        res.fail(f"two factorisations of {f}: {images[f]} and {(phi, g)}")
                    images[f] = (phi, g)
            homs = set(enumerate_hom(n, m, cap=cap))
            res.expect(len(homs) == hom_size(n, m) == len(deltas) * len(group),
                       f"counting fails at ({n}, {m})")
            res.expect(set(images) == homs, f"pairs do not cover Hom([{n}], [{m}])")
            for f in homs:
                fac = factor_delta_h(f)
                res.expect(images.get(f) == (fac.phi, fac.g),
                           lambda f=f, fac=fac: f"factor_delta_h({f}) = {fac}, unique pair is {images.get(f)}")
    rng = random.Random(seed)
    for _ in range(samples):
        n, m = rng.randint(0, sampled_n), rng.randint(0, sampled_n)
        f = random_morphism(n, m, rng)
        fac = factor_delta_h(f)
        res.expect(fac.reconstruct() == f and is_monotone_phi(fac.phi, m),
                   lambda f=f: f"reconstruction fails for {f}")
    return res


def is_monotone_phi(phi, m):
    return all(0 <= x <= m for x in phi) and all(a <= b for a, b in zip(phi, phi[1:]))


@_timed
def check_d_hplus(max_n: int = 4, cap: int = 10**6) -> CheckResult:
    """H = D o H+: every element, with uniqueness by brute force and counting."""
    res = CheckResult("d-hplus")
    for n in range(max_n + 1):
        hyper = enumerate_group(GroupFamily.HYPEROCTAHEDRAL, n, cap)
        dihedral = enumerate_group(GroupFamily.DIHEDRAL, n)
        based = enumerate_group(GroupFamily.BASED_HYPEROCTAHEDRAL, n, cap)
        res.expect(len(dihedral) * len(based) == len(hyper),
                   f"|D| |H+| != |H| at n={n}")
        res.expect(len(set(dihedral) & set(based)) == 1, f"|D & H+| != 1 at n={n}")
        for g in hyper:
            fac = factor_d_hplus(g)
            ok = (fac.reconstruct() == g and is_member(fac.d, GroupFamily.DIHEDRAL)
                  and is_member(fac.h, GroupFamily.BASED_HYPEROCTAHEDRAL))
            res.expect(ok, lambda g=g, fac=fac: f"bad factorisation of {g}: {fac}")
            hits = [d for d in dihedral
                    if is_member(G.compose(G.inverse(d), g), GroupFamily.BASED_HYPEROCTAHEDRAL)]
            res.expect(hits == [fac.d], lambda g=g, hits=hits: f"{g} has dihedral parts {hits}")
    res.notes.append(f"|H_{max_n + 1}| = {G.order(GroupFamily.HYPEROCTAHEDRAL, max_n)}")
    return res


@_timed
def check_reflexive_decomp(exhaustive_n: int = 2, sampled_n: int = 3, samples: int = 2000,
                           seed: int = DEFAULT_SEED) -> CheckResult:
    """IGamma(as) = DeltaR^op o H+, certified against the generated reflexive subcategory."""
    res = CheckResult("reflexive-decomp", seed=seed)
    top = max(exhaustive_n, sampled_n)
    generated = generate_reflexive_subcategory(top)
    for n in range(exhaustive_n + 1):
        based = enumerate_group(GroupFamily.BASED_HYPEROCTAHEDRAL, n)
        inverses = [(h, embed_group(G.inverse(h))) for h in based]
        for m in range(exhaustive_n + 1):
            n_rho = sum(1 for f in generated if f.source_n == n and f.target_m == m)
            homs = list(enumerate_hom(n, m, based=True))
            res.expect(len(homs) == n_rho * len(based),
                       f"|Hom_IGamma([{n}],[{m}])| = {len(homs)} != {n_rho} * {len(based)}")
            res.expect(n_rho == 2 * comb(n + m + 1, m + 1), f"|DeltaR^op([{n}],[{m}])| = {n_rho}")
            for f in homs:
                fac = factor_reflexive(f)
                res.expect(fac.reconstruct() == f and fac.rho in generated
                           and is_member(fac.h, GroupFamily.BASED_HYPEROCTAHEDRAL),
                           lambda f=f, fac=fac: f"bad reflexive factorisation of {f}: {fac}")
                hits = [h for h, hinv in inverses if compose(f, hinv) in generated]
                res.expect(hits == [fac.h], lambda f=f, hits=hits: f"{f} has H+ parts {hits}")
    rng = random.Random(seed)
    for _ in range(samples):
        n, m = rng.randint(0, sampled_n), rng.randint(0, sampled_n)
        f = random_morphism(n, m, rng, based=True)
        fac = factor_reflexive(f)
        res.expect(fac.reconstruct() == f and fac.rho in generated and is_reflexive_op(fac.rho),
                   lambda f=f: f"sampled factorisation fails for {f}")
    return res


@_timed
def check_b_functoriality(max_size: int = 3, samples: int = 1000,
                          seed: int = DEFAULT_SEED) -> CheckResult:
    """B(f2 o f1)(h) = B(f1)(B(f2)(h)) on random composable pairs."""
    res = CheckResult("b-functoriality", seed=seed)
    rng = random.Random(seed)
    for _ in range(samples):
        n, m, k = (rng.randint(0, max_size) for _ in range(3))
        f1 = random_morphism(n, m, rng)
        f2 = random_morphism(m, k, rng)
        based = G.random_element(k, rng)
        h = factor_d_hplus(based).h
        lhs = b_module_action(compose(f2, f1), h)
        rhs = b_module_action(f1, b_module_action(f2, h))
        res.expect(lhs == rhs, lambda: f"f1={f1}, f2={f2}, h={h}: {lhs} != {rhs}")
    return res


FUNCTORIALITY_ALGEBRAS = ("group_c2", "dual_numbers_minus")


@_timed
def check_bar_functoriality(max_size: int = 4, samples: int = 1000, seed: int = DEFAULT_SEED,
                            algebras=FUNCTORIALITY_ALGEBRAS, rings=(QQ, GF(2))) -> CheckResult:
    """H_A(g o f) = H_A(g) H_A(f) as exact matrices, per algebra and ring."""
    res = CheckResult("bar-functoriality", seed=seed)
    for name in algebras:
        for ring in rings:
            a = builtin(name, ring)
            rng = random.Random(f"{seed}:{name}:{ring}")
            for _ in range(samples):
                n, m, k = (rng.randint(0, max_size) for _ in range(3))
                f = random_morphism(n, m, rng)
                g = random_morphism(m, k, rng)
                ok = bar_matrix(a, compose(g, f)) == bar_matrix(a, g) @ bar_matrix(a, f)
                res.expect(ok, lambda: f"{name}/{ring}: f={f}, g={g}")
    return res


def reflection_matrix(a, mm, n: int) -> ExactMatrix:
    """Unsigned reflection ``(m, a_1..a_n) -> (m*, a_n*, ..., a_1*)``."""
    return operator_matrix(a.ring, mm.dim, a.dim, n, n, lambda idx: _reflection_basis(a, mm, idx))


def rotation_matrix(a, n: int) -> ExactMatrix:
    return cyclic_operator(a, n).scale(-1 if n % 2 else 1)


@_timed
def check_generator_identities(max_n: int = 3, max_dim: int = 4, rings=(QQ,),
                               names=None) -> CheckResult:
    """The bar constructions restrict to the Loday functors on generators.

    * ``H_A(T)`` is the rotation.
    * ``H_A(T R)`` is the reflection ``r``; ``T R`` is the based reflection, the
      image of ``r`` under the dihedral duality.  ``H_A(R)`` itself is ``r``
      after the rotation, i.e. the full reversal with involution.
    * ``R(A, M)`` on the face, degeneracy and reflection morphisms gives the
      Loday faces, degeneracies and ``r``.
    * With ``M = A``, ``R(A, A)`` is the restriction of ``H_A``.
    """
    res = CheckResult("generator-identities")
    for name in names or BUILTINS:
        for ring in rings:
            a, mm = builtin(name, ring, with_bimodule=True)
            if a.dim > max_dim:
                continue
            for n in range(max_n + 1):
                R, T = canonical_R(n), canonical_T(n)
                rot = rotation_matrix(a, n)
                refl = reflection_matrix(a, mm, n)
                tag = f"{name}/{ring} n={n}"
                res.expect(bar_matrix(a, embed_group(T)) == rot, f"H_A(T) != rotation, {tag}")
                res.expect(embed_group(T * R) == embed_reflection(n),
                           f"TR is not the based reflection, {tag}")
                res.expect(bar_matrix(a, embed_group(T * R)) == refl, f"H_A(TR) != r, {tag}")
                res.expect(bar_matrix(a, embed_group(R)) == refl @ rot,
                           f"H_A(R) != r o rotation, {tag}")
                res.expect(based_bar_matrix(a, mm, embed_reflection(n)) == refl,
                           f"R(A,M)(r) != r, {tag}")
                for i in range(n + 1):
                    if n >= 1:
                        res.expect(based_bar_matrix(a, mm, loday_face_morphism(i, n))
                                   == face_matrix(a, mm, i, n), f"face d_{i} differs, {tag}")
                    res.expect(based_bar_matrix(a, mm, loday_degeneracy_morphism(i, n))
                               == degeneracy_matrix(a, mm, i, n), f"degeneracy s_{i} differs, {tag}")
            for f in enumerate_hom(2, 1, based=True):
                res.expect(based_bar_matrix(a, mm, f) == bar_matrix(a, f),
                           f"R(A,A) != H_A on {f}, {name}/{ring}")
    return res


SELECTORS = ("dihedral-subgroup", "delta-h", "d-hplus", "reflexive-decomp",
             "b-functoriality", "bar-functoriality", "generator-identities")


def run_selector(selector: str, max_n: int, samples: int, seed: int) -> list[CheckResult]:
    """CLI mapping: ``max_n`` bounds exhaustive sweeps, samples go one or two sizes higher."""
    if selector == "all":
        out = []
        for s in SELECTORS:
            out.extend(run_selector(s, max_n, samples, seed))
        return out
    if selector == "dihedral-subgroup":
        return [check_dihedral_subgroup(max_n)]
    if selector == "delta-h":
        return [check_delta_h(max_n, max_n + 2, samples, seed)]
    if selector == "d-hplus":
        return [check_d_hplus(max_n)]
    if selector == "reflexive-decomp":
        return [check_reflexive_decomp(max_n, max_n + 1, samples, seed)]
    if selector == "b-functoriality":
        return [check_b_functoriality(max_n + 1, samples, seed)]
    if selector == "bar-functoriality":
        return [check_bar_functoriality(max_n + 2, samples, seed)]
    if selector == "generator-identities":
        return [check_generator_identities(max_n + 1)]
    raise ValueError(f"unknown selector {selector!r}")
