import random

import pytest
from hypothesis import given, settings, strategies as st

from ifas.errors import NotBased, SizeMismatch
from ifas.factorize import (b_module_action, factor_d_hplus, factor_delta_h,
                            factor_reflexive)
from ifas.groups import GroupFamily, SignedPermutation as SP, canonical_T, compose as gcompose, \
    enumerate_group, is_member, random_element
from ifas.ncsets import (CategoryTag, NCMorphism, compose, embed_delta, embed_group,
                         embed_reflection, is_in, parse_morphism, random_morphism)

T, ONE = True, False
seeds = st.integers(0, 10**9)


def test_delta_h_examples():
    f = embed_delta((0, 0, 1), 1)
    dh = factor_delta_h(f)
    assert dh.g.is_identity() and tuple(dh.phi) == (0, 0, 1)
    g0 = SP((2, 0, 1), (True, False, True))
    dh = factor_delta_h(embed_group(g0))
    assert tuple(dh.phi) == (0, 1, 2) and dh.g == g0
    dh = factor_delta_h(parse_morphism("1 -> 0 ; 0: 1- 0+"))
    assert tuple(dh.phi) == (0, 0)
    assert dh.g(1) == (0, True) and dh.g(0) == (1, False)


@settings(deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), seeds)
def test_delta_h_reconstructs(n, m, seed):
    f = random_morphism(n, m, random.Random(seed))
    dh = factor_delta_h(f)
    assert dh.reconstruct() == f
    assert is_in(embed_delta(dh.phi, dh.target_m), CategoryTag.DELTA)


def test_d_hplus_examples():
    g = SP((0, 2, 1), (False, True, False))
    res = factor_d_hplus(g)
    assert res.d.is_identity() and res.h == g
    res = factor_d_hplus(SP((1, 0), (True, False)))
    assert res.d == canonical_T(1)
    assert res.h == SP((0, 1), (False, True))


@settings(deadline=None)
@given(st.integers(0, 5), seeds)
def test_d_hplus_components(n, seed):
    g = random_element(n, random.Random(seed))
    res = factor_d_hplus(g)
    assert res.reconstruct() == g
    assert is_member(res.d, GroupFamily.DIHEDRAL)
    assert is_member(res.h, GroupFamily.BASED_HYPEROCTAHEDRAL)


def test_reflexive_examples():
    for n in range(4):
        r = embed_reflection(n)
        res = factor_reflexive(r)
        assert res.rho == r and res.h.is_identity()
    f = embed_delta((0, 1, 1, 2), 2)
    res = factor_reflexive(f)
    assert res.rho == f and res.h.is_identity()
    with pytest.raises(NotBased):
        factor_reflexive(parse_morphism("1 -> 1 ; 0: 1+ ; 1: 0+"))


@settings(deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), seeds)
def test_reflexive_reconstructs(n, m, seed):
    f = random_morphism(n, m, random.Random(seed), based=True)
    res = factor_reflexive(f)
    assert res.reconstruct() == f
    assert is_in(res.rho, CategoryTag.DELTA_R_OP)
    assert is_member(res.h, GroupFamily.BASED_HYPEROCTAHEDRAL)


def test_b_module_examples():
    f = embed_delta((0, 0, 1), 1)
    assert b_module_action(f, SP.identity(2)).is_identity()
    for g in enumerate_group(GroupFamily.HYPEROCTAHEDRAL, 2):
        for h in enumerate_group(GroupFamily.BASED_HYPEROCTAHEDRAL, 2):
            expected = factor_d_hplus(gcompose(h, g)).h
            assert b_module_action(embed_group(g), h) == expected
    with pytest.raises(SizeMismatch):
        b_module_action(f, SP.identity(3))
    with pytest.raises(ValueError):
        b_module_action(f, SP((1, 0), (False, False)))


@settings(deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), seeds)
def test_b_module_contravariance(n, m, k, seed):
    rng = random.Random(seed)
    f = random_morphism(n, m, rng)
    g = random_morphism(m, k, rng)
    h = random_element(k, rng)
    h = factor_d_hplus(h).h
    assert b_module_action(compose(g, f), h) == b_module_action(f, b_module_action(g, h))
    assert b_module_action(NCMorphism.identity(k), h) == h
