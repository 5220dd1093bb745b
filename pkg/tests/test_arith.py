from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spherahall.arith import (QQ, FieldMatrix, LaurentElement, OddPowerResidue, PrimeField, RationalFunctionV,
                              format_rational, is_prime, parse_rational, rank, rf_eval_at_q, solve_nullspace)

F2, F3 = PrimeField(2), PrimeField(3)
v = RationalFunctionV.v()
q = RationalFunctionV.q()


def test_rank_examples():
    assert rank(FieldMatrix.zeros(0, 0, F2)) == 0
    assert rank(FieldMatrix.identity(3, F2)) == 3
    assert rank(FieldMatrix.from_rows([[1, 1], [1, 1]], F2)) == 1


def test_nullspace_examples():
    assert solve_nullspace(FieldMatrix.identity(2, QQ)) == []
    assert len(solve_nullspace(FieldMatrix.zeros(2, 3, QQ))) == 3
    (vec,) = solve_nullspace(FieldMatrix.from_rows([[1, 1]], F2))
    assert tuple(vec) == (1, 1)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)
    assert [n for n in range(12) if is_prime(n)] == [2, 3, 5, 7, 11]


def test_rational_strings_round_trip():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert parse_rational("-3/9") == Fraction(-1, 3)
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_eval_at_q_examples():
    assert rf_eval_at_q(q / (q - 1), 2) == 2
    assert rf_eval_at_q(RationalFunctionV.const(1), 7) == 1
    with pytest.raises(OddPowerResidue):
        rf_eval_at_q(v, 2)


def test_normalisation_is_canonical():
    a = (v * v - 1) / (v - 1)
    assert a == v + 1
    assert a.den == (Fraction(1),)
    assert (q + 1) / (q * q - 1) == RationalFunctionV.const(1) / (q - 1)


def test_laurent_products_cancel():
    c = v / (v * v - 1)
    x = LaurentElement.monomial(1, c)
    xinv = LaurentElement.monomial(-1, c)
    prod = x * xinv
    assert prod.as_dict() == {0: q / ((q - 1) * (q - 1))}
    assert (x * xinv - xinv * x).is_zero()


small = st.integers(-3, 3)
polys = st.lists(small, min_size=1, max_size=3)
nonzero_polys = polys.filter(lambda c: any(c))


@given(polys, nonzero_polys, polys, nonzero_polys)
def test_rational_function_field_axioms(n1, d1, n2, d2):
    a = RationalFunctionV(tuple(n1), tuple(d1))
    b = RationalFunctionV(tuple(n2), tuple(d2))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a * b) / b == a
    assert hash(a + b - b) == hash(a)


def _matrices(field_values):
    return st.integers(0, 4).flatmap(
        lambda r: st.integers(0, 4).flatmap(
            lambda c: st.lists(st.lists(field_values, min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: (rows, r, c))))


@given(_matrices(st.integers(0, 1)))
def test_rank_transpose_f2(data):
    rows, r, c = data
    m = FieldMatrix.from_rows(rows, F2, cols=c)
    assert rank(m) == rank(m.transpose())
    assert len(solve_nullspace(m)) == c - rank(m)


@given(_matrices(st.integers(0, 2)))
def test_rank_transpose_f3(data):
    rows, r, c = data
    m = FieldMatrix.from_rows(rows, F3, cols=c)
    assert rank(m) == rank(m.transpose())


@given(_matrices(st.fractions(min_value=-3, max_value=3, max_denominator=3)))
def test_rank_transpose_rationals(data):
    rows, r, c = data
    m = FieldMatrix.from_rows(rows, QQ, cols=c)
    assert rank(m) == rank(m.transpose())
    for vec in solve_nullspace(m):
        assert all(sum(a * b for a, b in zip(row, vec)) == 0 for row in rows)
