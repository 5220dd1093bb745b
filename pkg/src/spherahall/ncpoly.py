"""Noncommutative polynomials in sphere generators with coefficients in Q(v)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arith import RationalFunctionV, format_rational
from .category import IndecLabel, ObjClass, SphereDim, make_object

FAMILIES = ("x", "y", "z", "zprime", "zjordan")


class WrongFamily(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    family: str
    index: int
    block: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise WrongFamily(f"unknown generator family {self.family!r}")
        if (self.family == "zjordan") != (self.block > 0):
            raise WrongFamily(f"block index only (and always) used by zjordan: {self}")

    def allowed_for(self, d: int) -> bool:
        if self.family in ("x", "y"):
            return d == 3
        if self.family == "z":
            return d != 1
        if self.family == "zprime":
            return d == 0
        return d == 1

    def __str__(self) -> str:
        if self.family == "zjordan":
            return f"z[{self.index},{self.block}]"
        name = "z'" if self.family == "zprime" else self.family
        return f"{name}[{self.index}]"


def x(i: int) -> GeneratorSymbol:
    return GeneratorSymbol("x", i)


def y(i: int) -> GeneratorSymbol:
    return GeneratorSymbol("y", i)


def z(i: int) -> GeneratorSymbol:
    return GeneratorSymbol("z", i)


def zp(i: int) -> GeneratorSymbol:
    return GeneratorSymbol("zprime", i)


def zj(i: int, j: int) -> GeneratorSymbol:
    return GeneratorSymbol("zjordan", i, j)


Word = tuple[GeneratorSymbol, ...]


def _coef(c) -> RationalFunctionV:
    return RationalFunctionV.coerce(c)


@dataclass(frozen=True)
class NCPolynomial:
    """Finite sum of coefficient * word; no zero coefficients are stored."""

    terms: tuple[tuple[Word, RationalFunctionV], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[Word, RationalFunctionV]) -> "NCPolynomial":
        items = [(w, _coef(c)) for w, c in d.items()]
        return cls(tuple(sorted(((w, c) for w, c in items if not c.is_zero()),
                                key=lambda t: (len(t[0]), t[0]))))

    @classmethod
    def word(cls, *gens: GeneratorSymbol, coef=1) -> "NCPolynomial":
        return cls.from_dict({tuple(gens): _coef(coef)})

    @classmethod
    def scalar(cls, c) -> "NCPolynomial":
        return cls.from_dict({(): _coef(c)})

    def as_dict(self) -> dict[Word, RationalFunctionV]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def symbols(self) -> set[GeneratorSymbol]:
        return {g for w, _ in self.terms for g in w}

    def __add__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            other = NCPolynomial.scalar(other)
        out = self.as_dict()
        for w, c in other.terms:
            out[w] = out.get(w, RationalFunctionV.const(0)) + c
        return NCPolynomial.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            other = NCPolynomial.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "NCPolynomial":
        return NCPolynomial.scalar(other) - self

    def __mul__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            c = _coef(other)
            return NCPolynomial.from_dict({w: a * c for w, a in self.terms})
        out: dict[Word, RationalFunctionV] = {}
        for w1, a in self.terms:
            for w2, b in other.terms:
                w = w1 + w2
                out[w] = out.get(w, RationalFunctionV.const(0)) + a * b
        return NCPolynomial.from_dict(out)

    def __rmul__(self, other) -> "NCPolynomial":
        c = _coef(other)
        return NCPolynomial.from_dict({w: c * a for w, a in self.terms})

    def __pow__(self, k: int) -> "NCPolynomial":
        out = NCPolynomial.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms:
            val = c.constant_value()
            cs = format_rational(val) if val is not None else repr(c)
            mono = "*".join(str(g) for g in w)
            if not w:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def gen(g: GeneratorSymbol) -> NCPolynomial:
    return NCPolynomial.word(g)


def product(gens: Iterable[GeneratorSymbol]) -> NCPolynomial:
    return NCPolynomial.word(*gens)


def generator_object(g: GeneratorSymbol, d: int | SphereDim) -> ObjClass:
    """Isoclass represented by a generator symbol.

    x_i -> Sigma^(-2i) S and y_i -> Sigma^(-2i-1) S for d = 3; z_i -> Sigma^(-i) S
    (Sigma^(-i) T when d = 0, with z'_i -> Sigma^(-i) T'); for d = 1,
    z[i,j] -> Sigma^(-i) of the length-j string.
    """
    sphere = d if isinstance(d, SphereDim) else SphereDim(d)
    if not g.allowed_for(sphere.d):
        raise WrongFamily(f"{g} is not a generator for d={sphere.d}")
    if g.family == "x":
        lab = IndecLabel(-2 * g.index)
    elif g.family == "y":
        lab = IndecLabel(-2 * g.index - 1)
    elif g.family == "z":
        lab = IndecLabel(-g.index)
    elif g.family == "zprime":
        lab = IndecLabel(-g.index, 1, 2)
    else:
        lab = IndecLabel(-g.index, g.block)
    return make_object(sphere, [lab])


def sphere_symbol(shift: int) -> GeneratorSymbol:
    """The d = 3 generator representing Sigma^shift S."""
    if shift % 2 == 0:
        return x(-shift // 2)
    return y((-shift - 1) // 2)


def jordan_factor(i: int, j: int) -> NCPolynomial:
    """z[i,j] as a polynomial, with z[i,0] read as the empty word."""
    return NCPolynomial.scalar(1) if j == 0 else gen(zj(i, j))

