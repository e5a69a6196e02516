"""Acceptance suite: ten criteria, each reported on its own line in the summary."""

import time
from math import comb, factorial

import pytest

from ifas.barhom import (bprime_boundary, compute_homology, cyclic_operator,
                         hochschild_boundary, norm_operator, reflexive_operator)
from ifas.exactlinalg import GF, QQ, ZZ, ExactMatrix
from ifas.groups import GroupFamily, enumerate_group
from ifas.invalg import BUILTINS, builtin
from ifas.ncsets import enumerate_hom, generate_reflexive_subcategory
from ifas.verify import (DEFAULT_SEED, check_b_functoriality, check_bar_functoriality,
                         check_d_hplus, check_delta_h, check_dihedral_subgroup,
                         check_generator_identities, check_reflexive_decomp)

import oracles


def _run(check, limit, *args, **kwargs):
    t0 = time.perf_counter()
    res = check(*args, **kwargs)
    elapsed = time.perf_counter() - t0
    print(res.summary())
    assert res.passed, res.counterexample
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    return res


@pytest.mark.criterion(1, "dihedral relations R^2 = T^(n+1) = 1, RTR = T^-1 for n <= 8")
def test_c01_dihedral_relations():
    res = _run(check_dihedral_subgroup, 1.0, 8)
    assert res.checked >= 9


@pytest.mark.criterion(2, "IF(as) = Delta o H: exhaustive sizes <= 2, 10^4 samples sizes <= 4")
def test_c02_delta_h():
    res = _run(check_delta_h, 120, 2, 4, 10_000, DEFAULT_SEED)
    assert res.checked >= 10_000


@pytest.mark.criterion(3, "H = D o H+ for all of H_(n+1), n <= 4, with counting")
def test_c03_d_hplus():
    _run(check_d_hplus, 60, 4)
    for n in range(5):
        h = enumerate_group(GroupFamily.HYPEROCTAHEDRAL, n)
        d = enumerate_group(GroupFamily.DIHEDRAL, n)
        hp = enumerate_group(GroupFamily.BASED_HYPEROCTAHEDRAL, n)
        assert len(h) == 2 ** (n + 1) * factorial(n + 1)
        assert len(d) * len(hp) == len(h)
        assert set(d) & set(hp) == {h[0].identity(n + 1)}


@pytest.mark.criterion(4, "IGamma(as) = DeltaR^op o H+: exhaustive <= 2, sampled size 3, counting")
def test_c04_reflexive_decomposition():
    _run(check_reflexive_decomp, 120, 2, 3, 2000, DEFAULT_SEED)
    generated = generate_reflexive_subcategory(2)
    for n in range(3):
        hplus = len(enumerate_group(GroupFamily.BASED_HYPEROCTAHEDRAL, n))
        for m in range(3):
            refl = sum(1 for f in generated if (f.source_n, f.target_m) == (n, m))
            assert refl == 2 * comb(n + m + 1, m + 1)
            assert len(list(enumerate_hom(n, m, based=True))) == refl * hplus


@pytest.mark.criterion(5, "B-module action is contravariantly functorial, 10^3 pairs")
def test_c05_b_functoriality():
    res = _run(check_b_functoriality, 60, 3, 1000, DEFAULT_SEED)
    assert res.checked >= 1000


@pytest.mark.criterion(6, "H_A(g o f) = H_A(g) H_A(f), 10^3 pairs per algebra and ring")
def test_c06_bar_functoriality():
    res = _run(check_bar_functoriality, 120, 4, 1000, DEFAULT_SEED,
               ("group_c2", "dual_numbers_minus"), (QQ, GF(2)))
    assert res.checked >= 4000


@pytest.mark.criterion(7, "generators map to rotation, reflection, faces and degeneracies")
def test_c07_generator_identities():
    _run(check_generator_identities, 120, 3, 4, (QQ, GF(2)))


@pytest.mark.criterion(8, "b^2 = 0, y chain involution, cyclic identities, n <= 4")
def test_c08_chain_identities():
    t0 = time.perf_counter()
    for name in BUILTINS:
        for ring in (ZZ, GF(2)):
            a, mm = builtin(name, ring, with_bimodule=True)
            b = [hochschild_boundary(a, mm, n) for n in range(5)]
            bp = [bprime_boundary(a, n) for n in range(5)]
            y = [reflexive_operator(a, mm, n) for n in range(5)]
            t = [cyclic_operator(a, n) for n in range(5)]
            nm = [norm_operator(a, n) for n in range(5)]
            one = [ExactMatrix.identity(ring, a.dim ** (n + 1)) for n in range(5)]
            tag = f"{name}/{ring}"
            for n in range(5):
                assert y[n] @ y[n] == one[n], tag
                assert (one[n] - t[n]) @ nm[n] == ExactMatrix.zero(ring, *nm[n].shape), tag
                assert nm[n] @ (one[n] - t[n]) == ExactMatrix.zero(ring, *nm[n].shape), tag
                if n >= 1:
                    assert y[n - 1] @ b[n] == b[n] @ y[n], tag
                    assert b[n] @ (one[n] - t[n]) == (one[n - 1] - t[n - 1]) @ bp[n], tag
                    assert bp[n] @ nm[n] == nm[n - 1] @ b[n], tag
                if n >= 2:
                    assert (b[n - 1] @ b[n]).is_zero(), tag
                    assert (bp[n - 1] @ bp[n]).is_zero(), tag
    assert time.perf_counter() - t0 < 60


def _oracle_betti(builder, top, ring):
    dims, bds = builder(top + 1)
    assert oracles.square_is_zero(dims, bds)
    if ring == QQ:
        return oracles.betti(dims, bds, oracles.rank_q)
    return oracles.betti(dims, bds, lambda m, c: oracles.rank_mod_p(m, c, ring.p))


@pytest.mark.criterion(9, "ground ring homology with hand-assembled oracles")
def test_c09_ground_ring_homology():
    t0 = time.perf_counter()
    cases = [("hochschild", QQ, oracles.ground_hochschild, [1, 0, 0, 0, 0]),
             ("reflexive", QQ, oracles.ground_reflexive, [1, 0, 0, 0, 0]),
             ("cyclic", QQ, oracles.ground_cyclic, [1, 0, 1, 0, 1]),
             ("reflexive", GF(2), oracles.ground_reflexive, [1, 1, 1, 1, 1])]
    for theory, ring, builder, expected in cases:
        groups = compute_homology(theory, builtin("ground", ring), 4)
        got = [g.free_rank for g in groups]
        assert all(not g.torsion for g in groups)
        assert got == expected, (theory, ring, got)
        assert _oracle_betti(builder, 4, ring) == expected, (theory, ring, "oracle")
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(10, "Hochschild of dual numbers matches a dense oracle, degrees <= 3")
def test_c10_dense_oracle():
    t0 = time.perf_counter()
    a = builtin("dual_numbers_minus", QQ)
    table = {(i, j): {k: int(c) for k, c in enumerate(a.mult[i][j]) if c}
             for i in range(2) for j in range(2)}
    assert table == oracles.DUAL_NUMBERS
    dims, bds = oracles.hochschild_dense(oracles.DUAL_NUMBERS, 2, 4)
    expected = oracles.betti(dims, bds, oracles.rank_q)
    got = [g.free_rank for g in compute_homology("hochschild", a, 3)]
    assert expected == [2, 1, 1, 1]
    assert got == expected
    assert time.perf_counter() - t0 < 120
