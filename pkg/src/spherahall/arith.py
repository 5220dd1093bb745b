"""Exact scalar and linear-algebra substrate.

Rationals are :class:`fractions.Fraction`. Prime fields are handled as plain
Python ints reduced modulo ``p``; :class:`PrimeField` bundles the operations.
Everything here is exact; nothing in the package touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class OddPowerResidue(ValueError):
    """A rational function of v cannot be written as a function of q = v^2."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def format_rational(x: Scalar) -> str:
    """Serialize a rational as ``"a/b"`` (``"a"`` when b = 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        a, b = s.split("/", 1)
        if int(b) <= 0:
            raise ValueError(f"bad denominator in {s!r}")
        return Fraction(int(a), int(b))
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    zero = 0
    one = 1

    def __call__(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        return pow(x, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


@dataclass(frozen=True)
class RationalField:
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x: Scalar) -> Fraction:
        return Fraction(x)

    def inv(self, x: Fraction) -> Fraction:
        return 1 / Fraction(x)


QQ = RationalField()
Field = Union[PrimeField, RationalField]


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over a prime field or Q."""

    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]
    field: Field = QQ

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], field: Field = QQ,
                  cols: int | None = None) -> "FieldMatrix":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), ncols, data, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "FieldMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "FieldMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], field, cols)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.cols, self.rows,
                           tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                 for j in range(self.cols)), self.field)


def _reduce(rows: list[list], ncols: int, field: Field) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    if isinstance(field, PrimeField):
        p = field.p
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if rows[i][c] % p), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], -1, p)
            pr = [(x * inv) % p for x in rows[r]]
            rows[r] = pr
            for i in range(nrows):
                if i != r:
                    f = rows[i][c] % p
                    if f:
                        rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    else:
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / Fraction(rows[r][c])
            pr = [x * inv for x in rows[r]]
            rows[r] = pr
            for i in range(nrows):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
    return pivots


def rank_rows(rows: Iterable[Sequence[Scalar]], ncols: int, field: Field) -> int:
    work = [list(r) for r in rows]
    if not work or ncols == 0:
        return 0
    return len(_reduce(work, ncols, field))


def nullspace_rows(rows: Iterable[Sequence[Scalar]], ncols: int, field: Field) -> list[list]:
    """Basis of {x : A x = 0} for the matrix with the given rows."""
    work = [list(r) for r in rows]
    pivots = _reduce(work, ncols, field) if work else []
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, c in enumerate(pivots):
            v[c] = field(-work[i][free])
        basis.append(v)
    return basis


def rank(m: FieldMatrix) -> int:
    """Rank by exact Gaussian elimination."""
    return rank_rows(m.entries, m.cols, m.field)


def solve_nullspace(m: FieldMatrix) -> list[tuple]:
    """Basis of the right nullspace; its length is ``cols - rank(m)``."""
    return [tuple(v) for v in nullspace_rows(m.entries, m.cols, m.field)]


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of F_p^n."""

    def __init__(self, ncols: int, p: int) -> None:
        self.ncols = ncols
        self.p = p
        self.rows: dict[int, list[int]] = {}  # leading column -> normalized row

    def reduce(self, v: Sequence[int]) -> list[int]:
        p = self.p
        w = [x % p for x in v]
        for c in sorted(self.rows):
            f = w[c]
            if f:
                row = self.rows[c]
                w = [(a - f * b) % p for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; returns False when it already lies in the span."""
        w = self.reduce(v)
        lead = next((i for i, x in enumerate(w) if x), None)
        if lead is None:
            return False
        inv = pow(w[lead], -1, self.p)
        self.rows[lead] = [(x * inv) % self.p for x in w]
        return True

    def __len__(self) -> int:
        return len(self.rows)


def complement_basis(sub: list[list], vectors: list[list], ncols: int, field: Field) -> list[list]:
    """Vectors from ``vectors`` extending a basis of span(sub) to span(sub + vectors)."""
    if isinstance(field, PrimeField):
        ech = EchelonBasis(ncols, field.p)
        for s in sub:
            ech.add(s)
        return [list(v) for v in vectors if ech.add(v)]
    chosen: list[list] = []
    base = rank_rows(sub, ncols, field)
    cur = [list(s) for s in sub]
    for v in vectors:
        trial = cur + [list(v)]
        r = rank_rows(trial, ncols, field)
        if r > base:
            cur = trial
            base = r
            chosen.append(list(v))
    return chosen


# ---------------------------------------------------------------------------
# univariate polynomials over Q in v, and the field Q(v)

Poly = tuple  # coefficients low -> high, no trailing zeros


def _trim(c: Sequence[Fraction]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            r[i + k] -= f * y
        r = list(_trim(r))
    return _trim(q), _trim(r)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    return tuple(x / a[-1] for x in a)


def _peval(a: Poly, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


@dataclass(frozen=True)
class RationalFunctionV:
    """Element of Q(v), kept reduced with monic denominator."""

    num: Poly
    den: Poly = (Fraction(1),)

    def __post_init__(self) -> None:
        num = _trim([Fraction(x) for x in self.num])
        den = _trim([Fraction(x) for x in self.den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (Fraction(1),)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
            lead = den[-1]
            num = tuple(x / lead for x in num)
            den = tuple(x / lead for x in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c: Scalar) -> "RationalFunctionV":
        return cls((Fraction(c),))

    @classmethod
    def v(cls) -> "RationalFunctionV":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def q_power(cls, k: int) -> "RationalFunctionV":
        """q^k = v^(2k)."""
        mono = tuple([Fraction(0)] * (2 * abs(k)) + [Fraction(1)])
        return cls(mono) if k >= 0 else cls((Fraction(1),), mono)

    @classmethod
    def q(cls) -> "RationalFunctionV":
        return cls.q_power(1)

    @staticmethod
    def coerce(x) -> "RationalFunctionV":
        if isinstance(x, RationalFunctionV):
            return x
        return RationalFunctionV.const(x)

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other) -> "RationalFunctionV":
        o = RationalFunctionV.coerce(other)
        return RationalFunctionV(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                                 _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self) -> "RationalFunctionV":
        return RationalFunctionV(_pneg(self.num), self.den)

    def __sub__(self, other) -> "RationalFunctionV":
        return self + (-RationalFunctionV.coerce(other))

    def __rsub__(self, other) -> "RationalFunctionV":
        return RationalFunctionV.coerce(other) - self

    def __mul__(self, other) -> "RationalFunctionV":
        o = RationalFunctionV.coerce(other)
        return RationalFunctionV(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunctionV":
        o = RationalFunctionV.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        return RationalFunctionV(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other) -> "RationalFunctionV":
        return RationalFunctionV.coerce(other) / self

    def __pow__(self, k: int) -> "RationalFunctionV":
        if k < 0:
            return RationalFunctionV.const(1) / (self ** (-k))
        out = RationalFunctionV.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunctionV):
            try:
                other = RationalFunctionV.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_even(self) -> bool:
        """True when the reduced fraction only involves even powers of v."""
        return all(c == 0 for i, c in enumerate(self.num) if i % 2) and \
            all(c == 0 for i, c in enumerate(self.den) if i % 2)

    def constant_value(self) -> Fraction | None:
        if len(self.den) == 1 and len(self.num) <= 1:
            return self.num[0] if self.num else Fraction(0)
        return None

    def __repr__(self) -> str:
        def show(p: Poly) -> str:
            if not p:
                return "0"
            terms = []
            for i, c in enumerate(p):
                if c == 0:
                    continue
                cs = format_rational(c)
                if i == 0:
                    terms.append(cs)
                else:
                    mono = "v" if i == 1 else f"v^{i}"
                    terms.append(mono if c == 1 else f"{cs}*{mono}")
            return " + ".join(terms)
        if self.den == (Fraction(1),):
            return f"({show(self.num)})"
        return f"({show(self.num)})/({show(self.den)})"


def rf_eval_at_q(f: RationalFunctionV, q: int) -> Fraction:
    """Value of ``f`` at v = sqrt(q), for f a function of v^2."""
    if not f.is_even():
        raise OddPowerResidue(f"{f!r} involves odd powers of v")
    num = _trim(f.num[::2])
    den = _trim(f.den[::2])
    d = _peval(den, Fraction(q))
    if d == 0:
        raise ZeroDivisionError(f"{f!r} has a pole at q={q}")
    return _peval(num, Fraction(q)) / d


# ---------------------------------------------------------------------------
# Laurent polynomials over Q(v)


@dataclass(frozen=True)
class LaurentElement:
    """Finite sum of c_k x^k with c_k in Q(v); zero coefficients never stored."""

    terms: tuple[tuple[int, RationalFunctionV], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, RationalFunctionV]) -> "LaurentElement":
        return cls(tuple(sorted((k, c) for k, c in d.items() if not c.is_zero())))

    @classmethod
    def monomial(cls, k: int, c) -> "LaurentElement":
        return cls.from_dict({k: RationalFunctionV.coerce(c)})

    def as_dict(self) -> dict[int, RationalFunctionV]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out.get(k, RationalFunctionV.const(0)) + c
        return LaurentElement.from_dict(out)

    def __neg__(self) -> "LaurentElement":
        return LaurentElement(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "LaurentElement") -> "LaurentElement":
        return self + (-other)

    def __mul__(self, other) -> "LaurentElement":
        if not isinstance(other, LaurentElement):
            c = RationalFunctionV.coerce(other)
            return LaurentElement.from_dict({k: a * c for k, a in self.terms})
        out: dict[int, RationalFunctionV] = {}
        for k, a in self.terms:
            for l, b in other.terms:
                out[k + l] = out.get(k + l, RationalFunctionV.const(0)) + a * b
        return LaurentElement.from_dict(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c!r}*x^{k}" for k, c in self.terms)
