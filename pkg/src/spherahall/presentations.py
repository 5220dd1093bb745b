"""Generators and relations for the Hall algebra of every sphere dimension d.

Relation coefficients are stored symbolically in q = v^2 and only evaluated
at a prime q when a relation is pushed into the Hall algebra by ``phi_eval``.
Indexing follows the generator assignment in ``ncpoly.generator_object``.

Windows: a relation family with one free index i is instantiated for every
i in the window. Families with a second free index j = i + k are instantiated
for i in the window and every admissible offset k with |k| <= |d| + 2, so
that small windows still exercise each family (d = 0 is the exception: its
commutators use pairs of generators inside the window).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import QQ, LaurentElement, RationalFunctionV, rank_rows, rf_eval_at_q
from .category import ObjClass, SphereDim, iter_objects
from .hall import DEFAULT_CONFIG, HallConfig, HallElement, hall_product, unit
from .ncpoly import (GeneratorSymbol, NCPolynomial, WrongFamily, Word, gen, generator_object,
                     jordan_factor, x, y, z, zj, zp)

Q = RationalFunctionV.q()
ONE = RationalFunctionV.const(1)


def qp(k: int) -> RationalFunctionV:
    return RationalFunctionV.q_power(k)


@dataclass(frozen=True)
class Relation:
    rid: str
    poly: NCPolynomial

    def __str__(self) -> str:
        return f"{self.rid}: {self.poly}"


@dataclass
class RelationSet:
    sphere: SphereDim
    window: tuple[int, int]
    relations: list[Relation]
    blocks: int | None = None

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)


def _w(*gens: GeneratorSymbol) -> NCPolynomial:
    return NCPolynomial.word(*gens)


def serre_pair(a: GeneratorSymbol, b: GeneratorSymbol, mid, outer) -> tuple[NCPolynomial, NCPolynomial]:
    """a^2 b - mid a b a + outer b a^2 and a b^2 - mid b a b + outer b^2 a."""
    first = _w(a, a, b) - _w(a, b, a) * mid + _w(b, a, a) * outer
    second = _w(a, b, b) - _w(b, a, b) * mid + _w(b, b, a) * outer
    return first, second


def _offsets(cond, d: int) -> list[int]:
    reach = max(abs(d), 1) + 2
    return [k for k in range(-reach, reach + 1) if k != 0 and cond(k)]


def _relations_d3(lo: int, hi: int) -> list[Relation]:
    out = []
    inv = qp(-1)
    for i in range(lo, hi + 1):
        r1, r2 = serre_pair(x(i), x(i - 1), 1 + inv, inv)
        r7, r8 = serre_pair(y(i), y(i - 1), 1 + inv, inv)
        out += [Relation(f"x-serre-1 i={i}", r1), Relation(f"x-serre-2 i={i}", r2)]
        out.append(Relation(f"yx-same i={i}", _w(y(i), x(i)) - _w(x(i), y(i)) * Q + Q / (Q - 1)))
        out.append(Relation(f"yx-next i={i}", _w(y(i), x(i + 1)) - _w(x(i + 1), y(i)) * inv - ONE / (Q - 1)))
        out += [Relation(f"y-serre-1 i={i}", r7), Relation(f"y-serre-2 i={i}", r8)]
        for k in _offsets(lambda k: abs(k) > 1, 3):
            j = i + k
            out.append(Relation(f"x-commute i={i} j={j}", _w(x(i), x(j)) - _w(x(j), x(i))))
            out.append(Relation(f"y-commute i={i} j={j}", _w(y(i), y(j)) - _w(y(j), y(i))))
        for k in _offsets(lambda k: k not in (0, 1), 3):
            j = i + k
            out.append(Relation(f"yx-commute i={i} j={j}", _w(y(i), x(j)) - _w(x(j), y(i))))
    return out


def _relations_spherical(d: int, lo: int, hi: int) -> list[Relation]:
    """Families for d >= 3 and d <= -1, generated by z_i."""
    dp = d - 1
    sgn = (-1) ** (d % 2)
    if d >= 3:
        mid = (Q + 1) * qp(sgn)
        outer = qp(1 + 2 * sgn)
        const = ONE / (Q - 1)
        far = lambda k: -k <= -d            # i - j <= -d with k = j - i
        near = lambda k: -dp < -k < -1
    else:
        mid = (Q + 1) * qp(-1 - sgn)
        outer = qp(-1 - 2 * sgn)
        const = ONE / (qp(sgn) * (Q - 1))
        far = lambda k: -k < dp
        near = lambda k: d <= -k < -1
    out = []
    for i in range(lo, hi + 1):
        a, b = serre_pair(z(i), z(i - dp), mid, outer)
        out += [Relation(f"serre-1 i={i}", a), Relation(f"serre-2 i={i}", b)]
        out.append(Relation(f"adjacent i={i}", _w(z(i), z(i + 1)) - _w(z(i + 1), z(i)) * qp(-1) - const))
        for k in _offsets(far, d):
            e = (-1) ** (k % 2) * (1 + sgn)
            out.append(Relation(f"far i={i} j={i + k}", _w(z(i), z(i + k)) - _w(z(i + k), z(i)) * qp(e)))
        for k in _offsets(near, d):
            e = (-1) ** (k % 2)
            out.append(Relation(f"near i={i} j={i + k}", _w(z(i), z(i + k)) - _w(z(i + k), z(i)) * qp(e)))
    return out


def _relations_d2(lo: int, hi: int) -> list[Relation]:
    out = []
    lower = Q * (Q + 1)
    for i in range(lo, hi + 1):
        a, b = serre_pair(z(i), z(i - 1), (Q + 1) * Q, qp(3))
        out.append(Relation(f"serre-1 i={i}", a - gen(z(i)) * lower))
        out.append(Relation(f"serre-2 i={i}", b - gen(z(i - 1)) * lower))
        for k in _offsets(lambda k: -k <= -2, 2):
            e = 2 * (-1) ** (k % 2)
            out.append(Relation(f"far i={i} j={i + k}", _w(z(i), z(i + k)) - _w(z(i + k), z(i)) * qp(e)))
    return out


def jordan_coefficient(j: int, jp: int, l: int) -> RationalFunctionV:
    """Coefficient of z[i+1,j'-l] z[i,j-l] in z[i,j] z[i+1,j'] for d = 1."""
    m = min(j, jp)
    if not 0 <= l <= m:
        raise ValueError(f"l={l} outside [0, min({j},{jp})]")
    if l == 0:
        return ONE
    if l < m:
        return (Q - 1) / qp(l + 1)
    if l == jp < j:
        return qp(-jp)
    if l == j < jp:
        return qp(-j)
    return ONE / (qp(j - 1) * (Q - 1))


def _relations_d1(lo: int, hi: int, blocks: int) -> list[Relation]:
    out = []
    rng = range(1, blocks + 1)
    for i in range(lo, hi + 1):
        for k in _offsets(lambda k: abs(k) != 1, 1) + [0]:
            for j in rng:
                for jp in rng:
                    if k == 0 and jp <= j:
                        continue
                    a, b = zj(i, j), zj(i + k, jp)
                    out.append(Relation(f"commute i={i} j={j} i'={i + k} j'={jp}", _w(a, b) - _w(b, a)))
        for j in rng:
            for jp in rng:
                rhs = NCPolynomial()
                for l in range(min(j, jp) + 1):
                    rhs = rhs + jordan_factor(i + 1, jp - l) * jordan_factor(i, j - l) * jordan_coefficient(j, jp, l)
                out.append(Relation(f"jordan i={i} j={j} j'={jp}", _w(zj(i, j), zj(i + 1, jp)) - rhs))
    return out


def _relations_d0(lo: int, hi: int) -> list[Relation]:
    gens = [g for i in range(lo, hi + 1) for g in (z(i), zp(i))]
    out = []
    for a_i, a in enumerate(gens):
        for b in gens[a_i + 1:]:
            out.append(Relation(f"commute {a} {b}", _w(a, b) - _w(b, a)))
    return out


def relation_set(d: int | SphereDim, window: tuple[int, int], blocks: int | None = None) -> RelationSet:
    """Instantiate the defining relations of the presentation for this d."""
    sphere = d if isinstance(d, SphereDim) else SphereDim(d)
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {window}")
    dd = sphere.d
    if dd == 3:
        rels = _relations_d3(lo, hi)
    elif dd >= 3 or dd <= -1:
        rels = _relations_spherical(dd, lo, hi)
    elif dd == 2:
        rels = _relations_d2(lo, hi)
    elif dd == 1:
        if blocks is None or blocks < 1:
            raise ValueError("d = 1 needs a positive block bound")
        rels = _relations_d1(lo, hi, blocks)
    else:
        rels = _relations_d0(lo, hi)
    return RelationSet(sphere, (lo, hi), [r for r in rels if not r.poly.is_zero()],
                       blocks if dd == 1 else None)


# ---------------------------------------------------------------------------
# evaluation in the Hall algebra


@lru_cache(maxsize=None)
def _word_value(word: Word, sphere: SphereDim, q: int, config: HallConfig) -> HallElement:
    if not word:
        return unit(sphere, q)
    head = _word_value(word[:-1], sphere, q, config)
    last = HallElement.basis(generator_object(word[-1], sphere), q)
    return hall_product(head, last, config)


def phi_eval(w: NCPolynomial, d: int | SphereDim, q: int,
             config: HallConfig = DEFAULT_CONFIG) -> HallElement:
    """Image of w in the Hall algebra at q; words multiply left to right."""
    sphere = d if isinstance(d, SphereDim) else SphereDim(d)
    out = HallElement(sphere, q)
    for word, c in w.terms:
        for g in word:
            if not g.allowed_for(sphere.d):
                raise WrongFamily(f"{g} is not a generator for d={sphere.d}")
        out = out + _word_value(word, sphere, q, config).scale(rf_eval_at_q(c, q))
    return out


@dataclass
class RelationResult:
    rid: str
    relation: str
    passed: bool
    residual: HallElement


@dataclass
class RelationReport:
    d: int
    q: int
    window: tuple[int, int]
    results: list[RelationResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if not r.passed]


def verify_relations(d: int | SphereDim, window: tuple[int, int], q: int, blocks: int | None = None,
                     config: HallConfig = DEFAULT_CONFIG) -> RelationReport:
    rs = relation_set(d, window, blocks)
    report = RelationReport(rs.sphere.d, q, rs.window)
    for rel in rs:
        res = phi_eval(rel.poly, rs.sphere, q, config)
        report.results.append(RelationResult(rel.rid, str(rel.poly), res.is_zero(), res))
    report.results.sort(key=lambda r: r.rid)
    return report


# ---------------------------------------------------------------------------
# products [M][N] with M even and N odd


def _concentrated(x: ObjClass, parity: int, lo: int, hi: int) -> bool:
    return all(deg % 2 == parity and lo <= deg <= hi for deg in x.homology_degrees())


def parity_pairs(window: tuple[int, int], dim_bound: int) -> list[tuple[ObjClass, ObjClass]]:
    """Pairs (M, N) with H(M) in even and H(N) in odd degrees of the window."""
    lo, hi = window
    shifts = range(-hi, -lo + 1)
    objs = list(iter_objects(3, dim_bound, shifts))
    even = [o for o in objs if _concentrated(o, 0, lo, hi)]
    odd = [o for o in objs if _concentrated(o, 1, lo, hi)]
    return [(m, n) for m in sorted(even) for n in sorted(odd)]


@dataclass
class RankReport:
    pairs: int
    columns: int
    rank: int

    @property
    def full_rank(self) -> bool:
        return self.rank == self.pairs


def basis_rank_check(window: tuple[int, int], dim_bound: int, q: int,
                     pairs: list[tuple[ObjClass, ObjClass]] | None = None,
                     config: HallConfig = DEFAULT_CONFIG) -> RankReport:
    """Rank over Q of the products [M][N] written in the isoclass basis."""
    if pairs is None:
        pairs = parity_pairs(window, dim_bound)
    rows = []
    for m, n in pairs:
        rows.append(hall_product(HallElement.basis(m, q), HallElement.basis(n, q), config).terms)
    cols = sorted({k for r in rows for k in r})
    index = {k: i for i, k in enumerate(cols)}
    mat = []
    for r in rows:
        vec = [Fraction(0)] * len(cols)
        for k, c in r.items():
            vec[index[k]] = c
        mat.append(vec)
    return RankReport(len(pairs), len(cols), rank_rows(mat, len(cols), QQ) if mat else 0)


# ---------------------------------------------------------------------------
# torus character


def torus_char(w: NCPolynomial) -> LaurentElement:
    """Image in Q(v)[x, x^-1] under x_i -> c x, y_i -> c x^-1, c = v/(v^2-1)."""
    v = RationalFunctionV.v()
    c = v / (v * v - 1)
    out = LaurentElement()
    for word, coef in w.terms:
        term = LaurentElement.monomial(0, coef)
        for g in word:
            if g.family == "x":
                term = term * LaurentElement.monomial(1, c)
            elif g.family == "y":
                term = term * LaurentElement.monomial(-1, c)
            else:
                raise WrongFamily(f"torus character is defined on the d = 3 generators only, got {g}")
        out = out + term
    return out


@dataclass
class TorusReport:
    relations: int
    relation_failures: list[str]
    commutators: int
    commutator_failures: list[str]

    @property
    def all_passed(self) -> bool:
        return not self.relation_failures and not self.commutator_failures


def random_word(rng: random.Random, length: int, window: tuple[int, int] = (-3, 3)) -> Word:
    return tuple(rng.choice((x, y))(rng.randint(*window)) for _ in range(length))


def torus_relations_check(window: tuple[int, int] = (-3, 3), samples: int = 20, seed: int = 0) -> TorusReport:
    rels = relation_set(3, window)
    bad = [r.rid for r in rels if not torus_char(r.poly).is_zero()]
    rng = random.Random(seed)
    bad_comm = []
    for _ in range(samples):
        a = random_word(rng, rng.randint(1, 3), window)
        b = random_word(rng, rng.randint(1, 3), window)
        comm = NCPolynomial.word(*a, *b) - NCPolynomial.word(*b, *a)
        if not torus_char(comm).is_zero():
            bad_comm.append(f"{a} {b}")
    return TorusReport(len(rels), bad, samples, bad_comm)


def clear_caches() -> None:
    _word_value.cache_clear()
