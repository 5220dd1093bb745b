import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spherahall.arith import LaurentElement, RationalFunctionV
from spherahall.category import simple, zero_object
from spherahall.hall import HallElement, unit
from spherahall.ncpoly import NCPolynomial, WrongFamily, x, y, z, zj, zp
from spherahall.presentations import (basis_rank_check, jordan_coefficient, parity_pairs, phi_eval,
                                      random_word, relation_set, torus_char, torus_relations_check,
                                      verify_relations)

Q = RationalFunctionV.q()
V = RationalFunctionV.v()
C = V / (V * V - 1)
S, S1 = simple(3, 0), simple(3, -1)


def _find(rs, rid):
    (rel,) = [r for r in rs if r.rid == rid]
    return rel.poly


def test_relation_set_d3_contains_same_index_exchange():
    rs = relation_set(3, (0, 0))
    expected = NCPolynomial.word(y(0), x(0)) - NCPolynomial.word(x(0), y(0)) * Q + Q / (Q - 1)
    assert _find(rs, "yx-same i=0") == expected


def test_jordan_coefficient_table_examples():
    assert jordan_coefficient(1, 1, 1) == 1 / (Q - 1)
    assert jordan_coefficient(2, 1, 1) == RationalFunctionV.q_power(-1)
    assert jordan_coefficient(1, 2, 1) == RationalFunctionV.q_power(-1)
    assert jordan_coefficient(3, 3, 1) == (Q - 1) / RationalFunctionV.q_power(2)
    assert jordan_coefficient(2, 3, 0) == 1
    with pytest.raises(ValueError):
        jordan_coefficient(1, 2, 2)


def test_relation_set_d0_commutators():
    rs = relation_set(0, (0, 1))
    polys = {r.poly for r in rs}
    assert NCPolynomial.word(z(0), zp(1)) - NCPolynomial.word(zp(1), z(0)) in polys
    assert len(rs) == 6  # all pairs among four generators


def test_relation_set_needs_blocks_at_d1():
    with pytest.raises(ValueError):
        relation_set(1, (0, 0))
    with pytest.raises(ValueError):
        relation_set(3, (1, 0))


def test_d2_relations_carry_lower_order_terms():
    poly = _find(relation_set(2, (0, 0)), "serre-1 i=0")
    assert poly.as_dict()[(z(0),)] == -(Q * (Q + 1))


def test_phi_eval_examples():
    assert phi_eval(NCPolynomial.word(x(0)), 3, 2) == HallElement.basis(S, 2)
    assert phi_eval(NCPolynomial.scalar(1), 3, 2) == unit(3, 2)
    got = phi_eval(NCPolynomial.word(x(0), y(0)), 3, 2)
    assert got == HallElement(S.sphere, 2, {S + S1: Fraction(1, 2), zero_object(3): 1})


def test_phi_eval_rejects_foreign_generators():
    with pytest.raises(WrongFamily):
        phi_eval(NCPolynomial.word(zp(0)), 3, 2)
    with pytest.raises(WrongFamily):
        phi_eval(NCPolynomial.word(z(0)), 1, 2)
    with pytest.raises(WrongFamily):
        phi_eval(NCPolynomial.word(x(0)), 4, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_d3_relations_small_window(q):
    rep = verify_relations(3, (0, 1), q)
    assert rep.results and rep.all_passed, [r.rid for r in rep.failures]


@pytest.mark.parametrize("d", [4, 5, 2, -1, -2, -3])
def test_other_spherical_relations(d):
    rep = verify_relations(d, (0, 0), 2)
    assert rep.results and rep.all_passed, [r.rid for r in rep.failures]


def test_d1_relations_small_blocks():
    rep = verify_relations(1, (0, 0), 2, blocks=2)
    assert rep.all_passed, [r.rid for r in rep.failures]


def test_report_is_sorted_and_lists_residuals():
    rep = verify_relations(0, (0, 1), 2)
    assert [r.rid for r in rep.results] == sorted(r.rid for r in rep.results)
    # same-branch generators in adjacent degrees do not commute
    bad = {r.rid for r in rep.failures}
    assert bad == {"commute z[0] z[1]", "commute z'[0] z'[1]"}
    assert all(not r.residual.is_zero() for r in rep.failures)


@pytest.mark.parametrize("q", [2, 3])
def test_d0_observed_same_branch_relations(q):
    for a in (z, zp):
        adjacent = NCPolynomial.word(a(0), a(1)) - NCPolynomial.word(a(1), a(0)) * Fraction(1, q) \
            - Fraction(1, q - 1)
        assert phi_eval(adjacent, 0, q).is_zero()
        for k in (2, 3):
            far = NCPolynomial.word(a(0), a(k)) - NCPolynomial.word(a(k), a(0)) * Fraction(q) ** ((-1) ** k)
            assert phi_eval(far, 0, q).is_zero()
    assert phi_eval(NCPolynomial.word(z(0), zp(1)) - NCPolynomial.word(zp(1), z(0)), 0, q).is_zero()


def test_basis_rank_examples():
    rep = basis_rank_check((-2, 0), 0, 2)
    assert (rep.pairs, rep.rank) == (1, 1)
    rep = basis_rank_check((-2, 0), 2, 2)
    assert rep.full_rank and rep.pairs == 21


def test_basis_rank_detects_duplicates():
    pairs = parity_pairs((-2, 0), 2)
    rep = basis_rank_check((-2, 0), 2, 2, pairs=pairs + [pairs[3]])
    assert not rep.full_rank
    assert rep.rank == rep.pairs - 1


def test_torus_examples():
    assert torus_char(NCPolynomial.word(x(5))) == LaurentElement.monomial(1, C)
    assert torus_char(NCPolynomial.word(x(0), y(0))) == LaurentElement.monomial(0, Q / ((Q - 1) * (Q - 1)))
    assert torus_char(_find(relation_set(3, (0, 0)), "yx-same i=0")).is_zero()
    assert torus_char(_find(relation_set(3, (0, 0)), "x-serre-1 i=0")).is_zero()
    comm = NCPolynomial.word(x(0), y(1)) - NCPolynomial.word(y(1), x(0))
    assert torus_char(comm).is_zero()
    with pytest.raises(WrongFamily):
        torus_char(NCPolynomial.word(zj(0, 1)))


def test_torus_relations_check():
    rep = torus_relations_check()
    assert rep.all_passed
    assert rep.commutators == 20 and rep.relations > 100


@given(st.integers(0, 2 ** 32), st.integers(0, 4), st.integers(0, 4))
def test_torus_char_is_multiplicative(seed, la, lb):
    rng = random.Random(seed)
    u = NCPolynomial.word(*random_word(rng, la))
    w = NCPolynomial.word(*random_word(rng, lb))
    assert torus_char(u * w) == torus_char(u) * torus_char(w)
