"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected into an "acceptance criteria" section of the
terminal summary. Tests run in file order, so the orientation lock comes first.
"""

import itertools
import time
from fractions import Fraction

import pytest

from spherahall import hall, presentations
from spherahall.arith import LaurentElement, RationalFunctionV
from spherahall.category import aut_count, hom_dim_T, iter_objects, simple
from spherahall.hall import (HallElement, assoc_check, basis_product, express_in_spheres, hall_product,
                             sample_triples, unit)
from spherahall.ncpoly import NCPolynomial, x, y
from spherahall.oracle import brute_aut_count, hom_basis
from spherahall.presentations import (basis_rank_check, phi_eval, relation_set, torus_char,
                                      torus_relations_check, verify_relations)

S = simple(3, 0)
Q = RationalFunctionV.q()


def cold():
    hall.clear_caches()
    presentations.clear_caches()


def test_10_orientation_lock(criterion):
    cold()
    poly = NCPolynomial.word(y(0), x(0)) - NCPolynomial.word(x(0), y(0)) * Q + Q / (Q - 1)
    res = phi_eval(poly, 3, 2)
    criterion("10", res.is_zero(), f"y0 x0 - q x0 y0 + q/(q-1) at q=2 gives {res!r}")


def test_01_square_of_sphere(criterion):
    cold()
    t = time.perf_counter()
    ok = all(basis_product(S, S, q) == HallElement.basis(S + S, q).scale(q + 1) for q in (2, 3, 5))
    elapsed = time.perf_counter() - t
    criterion("1 (m=2)", ok and elapsed < 5, f"[S][S] = (q+1)[S+S] for q in 2,3,5 in {elapsed:.2f}s")


@pytest.mark.xfail(strict=True, reason="[S]^3 = (q+1)(q^2+q+1)[S^3]: the q-factorial, not (q^3-1)/(q-1)")
def test_01_cube_of_sphere(criterion):
    cold()
    t = time.perf_counter()
    found = {}
    for q in (2, 3, 5):
        cube = hall_product(basis_product(S, S, q), HallElement.basis(S, q))
        found[q] = dict(cube.items())
    elapsed = time.perf_counter() - t
    ok = elapsed < 5 and all(found[q] == {S + S + S: Fraction(q ** 3 - 1, q - 1)} for q in (2, 3, 5))
    detail = ", ".join(f"q={q}: [S]^3 = {found[q][S + S + S]}[S^3] (expected {(q ** 3 - 1) // (q - 1)})"
                       for q in (2, 3, 5))
    criterion("1 (m=3)", ok, detail)


def test_02_d3_presentation(criterion):
    cold()
    t = time.perf_counter()
    reports = [verify_relations(3, (-2, 2), q) for q in (2, 3)]
    elapsed = time.perf_counter() - t
    fails = [f"q={r.q} {f.rid}" for r in reports for f in r.failures]
    families = {res.rid.split(" ")[0] for res in reports[0].results}
    total = sum(len(r.results) for r in reports)
    ok = not fails and len(families) == 9 and elapsed < 300
    criterion("2", ok, f"{total - len(fails)}/{total} instances vanish over {len(families)} families "
                       f"in {elapsed:.1f}s {fails[:5]}")


def test_03_spherical_presentations(criterion):
    cold()
    reports = [verify_relations(d, (-1, 1), 2) for d in (4, 2, -1, -2)]
    fails = [f"d={r.d} {f.rid}" for r in reports for f in r.failures]
    lower = any(not r.poly.as_dict().get((presentations.z(0),), RationalFunctionV.const(0)).is_zero()
                for r in relation_set(2, (-1, 1)))
    total = sum(len(r.results) for r in reports)
    criterion("3 (d=4,2,-1,-2)", not fails and lower and all(r.results for r in reports),
              f"{total - len(fails)}/{total} instances vanish {fails[:5]}")


@pytest.mark.xfail(strict=True, reason="same-branch generators z_i, z_(i+k) do not commute at d = 0")
def test_03_d0_commutativity(criterion):
    cold()
    reports = [verify_relations(0, (-2, 2), q) for q in (2, 3)]
    fails = [f"q={r.q} {f.rid}" for r in reports for f in r.failures]
    total = sum(len(r.results) for r in reports)
    criterion("3 (d=0)", not fails, f"{total - len(fails)}/{total} commutators vanish; failing: {fails[:4]} ...")


def test_04_d1_jordan_table(criterion):
    cold()
    reports = [verify_relations(1, (-1, 0), q, blocks=3) for q in (2, 3)]
    jordan = [res for r in reports for res in r.results if res.rid.startswith("jordan")]
    fails = [f"q={r.q} {f.rid}" for r in reports for f in r.failures]
    ok = not fails and len(jordan) == 2 * 2 * 9
    criterion("4", ok, f"{len(jordan)} expansions z[i,j] z[i+1,j'] match the coefficient table, "
                       f"{sum(len(r.results) for r in reports)} relations checked {fails[:5]}")


def test_05_associativity_and_unit(criterion):
    cold()
    t = time.perf_counter()
    bad = []
    counts = {}
    for d, n in ((3, 100), (2, 25), (1, 25), (0, 25), (-1, 25)):
        triples = sample_triples(d, n, seed=7)
        counts[d] = len(triples)
        u = unit(d, 2)
        for a, b, c in triples:
            if not assoc_check(a, b, c, 2):
                bad.append((d, a, b, c))
            for obj in (a, b, c):
                e = HallElement.basis(obj, 2)
                if hall_product(u, e) != e or hall_product(e, u) != e:
                    bad.append((d, obj))
    elapsed = time.perf_counter() - t
    criterion("5", not bad and elapsed < 600,
              f"{sum(counts.values())} triples {counts} associate with unit [0] in {elapsed:.1f}s {bad[:3]}")


def test_06_oracle_formula_consistency(criterion):
    cold()
    checked, bad = 0, []
    for d in (3, 1, -1):
        objs = [o for o in iter_objects(d, 3, range(-4, 5)) if all(l.len <= 3 for l in o.summands)]
        for a, b in itertools.product(objs, repeat=2):
            checked += 1
            if len(hom_basis(a, b, 0, 2)) != hom_dim_T(a, b, 0):
                bad.append((a, b))
        bad += [o for o in objs if aut_count(o, 2) != brute_aut_count(o, 2)]
    criterion("6", not bad, f"{checked} hom spaces and all automorphism groups agree {bad[:3]}")


def test_07_basis_lemma(criterion):
    cold()
    rep = basis_rank_check((-3, 0), 3, 2)
    criterion("7", rep.full_rank, f"rank {rep.rank} of {rep.pairs} products over {rep.columns} isoclasses")


def test_08_torus_character(criterion):
    rep = torus_relations_check((-3, 3))
    const = LaurentElement.monomial(0, Q / ((Q - 1) * (Q - 1)))
    pairs_ok = all(torus_char(NCPolynomial.word(x(i + e), y(i))) == const for i in range(-3, 4) for e in (0, 1))
    criterion("8", rep.all_passed and pairs_ok,
              f"{rep.relations} relation images and {rep.commutators} commutators vanish; "
              f"chi(x_i y_i) = chi(x_(i+1) y_i) = q/(q-1)^2: {pairs_ok}")


def test_09_expression_round_trip(criterion):
    cold()
    objs = list(iter_objects(3, 4, range(-3, 4)))
    bad = [(o, q) for q in (2, 3) for o in objs
           if phi_eval(express_in_spheres(o, q), 3, q) != HallElement.basis(o, q)]
    criterion("9", not bad, f"{2 * len(objs)} round trips (q = 2, 3) {bad[:3]}")
