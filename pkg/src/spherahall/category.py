"""Objects of the category generated by a d-spherical object.

Isoclasses are multisets of indecomposable labels ``(shift, len, branch)``.
For d != 0 the label ``(s, n)`` stands for the suspension Sigma^s of the
cyclic module k[t]/(t^n), where t has degree 1 - d. For d = 0 the category
is semisimple with two simples T, T' and every label has ``len == 1`` and a
branch tag 1 (T) or 2 (T').

Grading conventions: (M[1])^i = M^{i+1} and F(Sigma X) = F(X)[1], so the
homology generator of Sigma^s(k[t]/t^n) sits in degree -s and the remaining
basis vectors sit in degrees -s + r(1 - d), r = 1, ..., n - 1.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .arith import PrimeField, nullspace_rows, rank_rows


class InvalidLabel(ValueError):
    pass


class HomBoundViolation(RuntimeError):
    """A nonzero Hom survived past the computed vanishing bound."""


@dataclass(frozen=True, order=True)
class SphereDim:
    d: int

    @property
    def d_prime(self) -> int:
        return self.d - 1

    @property
    def t_degree(self) -> int:
        return 1 - self.d

    @property
    def semisimple(self) -> bool:
        return self.d == 0


@dataclass(frozen=True, order=True)
class IndecLabel:
    shift: int
    len: int = 1
    branch: int = 1

    def check(self, d: int) -> None:
        if self.len < 1:
            raise InvalidLabel(f"length must be positive: {self}")
        if d == 0:
            if self.len != 1:
                raise InvalidLabel(f"d = 0 objects are semisimple, got len {self.len}")
            if self.branch not in (1, 2):
                raise InvalidLabel(f"branch must be 1 or 2 for d = 0: {self}")
        elif self.branch != 1:
            raise InvalidLabel(f"branch {self.branch} only allowed when d = 0")


@dataclass(frozen=True)
class ObjClass:
    """Isomorphism class of an object: a sorted multiset of labels."""

    sphere: SphereDim
    summands: tuple[IndecLabel, ...] = ()

    @property
    def d(self) -> int:
        return self.sphere.d

    def __bool__(self) -> bool:
        return bool(self.summands)

    def __lt__(self, other: "ObjClass") -> bool:
        return (self.d, self.summands) < (other.d, other.summands)

    def __add__(self, other: "ObjClass") -> "ObjClass":
        """Direct sum."""
        if self.sphere != other.sphere:
            raise ValueError("direct sum of objects with different d")
        return ObjClass(self.sphere, tuple(sorted(self.summands + other.summands)))

    @property
    def total_dim(self) -> int:
        return sum(lab.len for lab in self.summands)

    def multiplicities(self) -> Counter:
        return Counter(self.summands)

    def homology_degrees(self) -> list[int]:
        """Degrees of a homogeneous basis of F(X), with repetition."""
        tau = self.sphere.t_degree
        return [-lab.shift + r * tau for lab in self.summands for r in range(lab.len)]

    def euler_char(self) -> int:
        return sum(-1 if deg % 2 else 1 for deg in self.homology_degrees())

    def __repr__(self) -> str:
        if not self.summands:
            return f"0<d={self.d}>"
        parts = []
        for lab in self.summands:
            if self.d == 0:
                parts.append(f"T{'′' if lab.branch == 2 else ''}[{lab.shift}]")
            else:
                parts.append(f"M{lab.len}[{lab.shift}]")
        return "+".join(parts) + f"<d={self.d}>"


def make_object(d: int | SphereDim, labels: Iterable = ()) -> ObjClass:
    """Canonical isoclass from labels given as IndecLabel or tuples."""
    sphere = d if isinstance(d, SphereDim) else SphereDim(d)
    out = []
    for lab in labels:
        if not isinstance(lab, IndecLabel):
            lab = IndecLabel(*lab)
        lab.check(sphere.d)
        out.append(lab)
    return ObjClass(sphere, tuple(sorted(out)))


def zero_object(d: int | SphereDim) -> ObjClass:
    return make_object(d, ())


def simple(d: int, shift: int = 0, branch: int = 1) -> ObjClass:
    return make_object(d, [IndecLabel(shift, 1, branch)])


def shift_obj(x: ObjClass, k: int) -> ObjClass:
    return ObjClass(x.sphere, tuple(IndecLabel(lab.shift + k, lab.len, lab.branch)
                                    for lab in x.summands))


# ---------------------------------------------------------------------------
# graded modules over the cohomology algebra

Key = tuple[int, int]  # (degree, branch)


@dataclass(frozen=True)
class GradedTModule:
    """Finite-dimensional graded module with nilpotent operator t over F_p.

    ``dims`` maps (degree, branch) to a dimension. ``tmaps`` maps a source key
    (a, b) to the matrix (rows = dim at (a + 1 - d, b), cols = dim at (a, b))
    of t. For d = 0 there is no operator and ``tmaps`` is empty.
    """

    sphere: SphereDim
    dims: dict[Key, int]
    tmaps: dict[Key, list[list[int]]] = field(default_factory=dict)
    p: int = 2

    def dim(self, key: Key) -> int:
        return self.dims.get(key, 0)

    def t_matrix(self, key: Key) -> list[list[int]]:
        tau = self.sphere.t_degree
        tgt = (key[0] + tau, key[1])
        m = self.tmaps.get(key)
        if m is None:
            return [[0] * self.dim(key) for _ in range(self.dim(tgt))]
        return m

    def t_power(self, key: Key, m: int) -> list[list[int]]:
        """Matrix of t^m out of the component ``key``."""
        tau = self.sphere.t_degree
        n = self.dim(key)
        mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        cur = key
        p = self.p
        for _ in range(m):
            step = self.t_matrix(cur)
            mat = [[sum(step[i][k] * mat[k][j] for k in range(len(mat))) % p
                    for j in range(n)] for i in range(len(step))]
            cur = (cur[0] + tau, cur[1])
        return mat

    def t_power_rank(self, key: Key, m: int) -> int:
        mat = self.t_power(key, m)
        return rank_rows(mat, self.dim(key), PrimeField(self.p))

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def shifted(self, k: int) -> "GradedTModule":
        """M[k], with (M[k])^i = M^{i+k}."""
        return GradedTModule(self.sphere,
                             {(a - k, b): n for (a, b), n in self.dims.items()},
                             {(a - k, b): m for (a, b), m in self.tmaps.items()}, self.p)


def f_image(x: ObjClass, p: int = 2) -> GradedTModule:
    """Total homology of ``x`` as a graded module."""
    tau = x.sphere.t_degree
    dims: dict[Key, int] = defaultdict(int)
    # basis vector -> (key, index within component)
    positions: list[list[tuple[Key, int]]] = []
    for lab in x.summands:
        chain = []
        for r in range(lab.len):
            key = (-lab.shift + r * tau, lab.branch)
            chain.append((key, dims[key]))
            dims[key] += 1
        positions.append(chain)
    tmaps: dict[Key, list[list[int]]] = {}
    if not x.sphere.semisimple:
        for key in dims:
            tgt = (key[0] + tau, key[1])
            tmaps[key] = [[0] * dims[key] for _ in range(dims.get(tgt, 0))]
        for chain in positions:
            for (k1, i1), (k2, i2) in zip(chain, chain[1:]):
                tmaps[k1][i2][i1] = 1
    return GradedTModule(x.sphere, dict(dims), tmaps, p)


def decompose(m: GradedTModule) -> ObjClass:
    """Isoclass whose image is ``m``, by rank counts of powers of t.

    The number of t-strings starting in degree a with length > j equals
    rank(t^j on M^a) - rank(t^(j+1) on M^(a - tau)).
    """
    sphere = m.sphere
    labels: list[IndecLabel] = []
    if sphere.semisimple:
        for (a, b), n in m.dims.items():
            labels.extend([IndecLabel(-a, 1, b)] * n)
        return make_object(sphere, labels)
    tau = sphere.t_degree
    total = m.total_dim()
    for (a, b), n in m.dims.items():
        if n == 0:
            continue
        prev = (a - tau, b)

        def starts_longer_than(j: int) -> int:
            r1 = m.t_power_rank((a, b), j)
            r2 = m.t_power_rank(prev, j + 1) if m.dim(prev) else 0
            return r1 - r2

        g = [starts_longer_than(j) for j in range(total + 1)]
        for length in range(1, total + 1):
            mult = g[length - 1] - g[length]
            labels.extend([IndecLabel(-a, length, b)] * mult)
    return make_object(sphere, labels)


def hom_dim_graded(m: GradedTModule, n: GradedTModule) -> int:
    """Dimension of degree-preserving module maps m -> n commuting with t."""
    if m.sphere != n.sphere:
        raise ValueError("modules over different algebras")
    fld = PrimeField(m.p)
    tau = m.sphere.t_degree
    var_index: dict[tuple[Key, int, int], int] = {}
    for key, dm in m.dims.items():
        dn = n.dim(key)
        for i in range(dn):
            for j in range(dm):
                var_index[(key, i, j)] = len(var_index)
    nvars = len(var_index)
    if nvars == 0:
        return 0
    if m.sphere.semisimple:
        return nvars
    rows = []
    for key, dm in m.dims.items():
        tgt = (key[0] + tau, key[1])
        dn_t = n.dim(tgt)
        if dn_t == 0 or dm == 0:
            continue
        tn = n.t_matrix(key) if n.dim(key) else None
        tm = m.t_matrix(key)
        dm_t = m.dim(tgt)
        for r in range(dn_t):
            for c in range(dm):
                row = [0] * nvars
                # (t_N phi_key)[r][c]
                if tn is not None:
                    for k in range(n.dim(key)):
                        if tn[r][k]:
                            row[var_index[(key, k, c)]] += tn[r][k]
                # -(phi_tgt t_M)[r][c]
                for k in range(dm_t):
                    if tm[k][c]:
                        row[var_index[(tgt, r, k)]] -= tm[k][c]
                rows.append([x % m.p for x in row])
    return len(nullspace_rows(rows, nvars, fld)) if rows else nvars


def ext1_dim_graded(m: GradedTModule, n: GradedTModule) -> int:
    """dim Ext^1 in graded modules, from the two-term free resolution of m."""
    if m.sphere.semisimple:
        return 0
    tau = m.sphere.t_degree
    total = 0
    for lab in decompose(m).summands:
        a = -lab.shift
        src = (a, lab.branch)
        tgt = (a + lab.len * tau, lab.branch)
        dt = n.dim(tgt)
        if dt == 0:
            continue
        r = n.t_power_rank(src, lab.len) if n.dim(src) else 0
        total += dt - r
    return total


@lru_cache(maxsize=None)
def _hom_indec(d: int, x: IndecLabel, y: IndecLabel) -> int:
    """dim Hom_T(x, y) for indecomposables."""
    sphere = SphereDim(d)
    ox, oy = ObjClass(sphere, (x,)), ObjClass(sphere, (y,))
    fx, fy = f_image(ox), f_image(oy)
    return hom_dim_graded(fx, fy) + ext1_dim_graded(f_image(shift_obj(ox, 1)), fy)


@lru_cache(maxsize=None)
def hom_dim_T(x: ObjClass, y: ObjClass, k: int = 0) -> int:
    """dim Hom_T(x, Sigma^k y) = dim Hom_gr(Fx, Fy') + dim Ext^1(Fx[1], Fy')."""
    if x.sphere != y.sphere:
        raise ValueError("objects with different d")
    total = 0
    for lx, mx in x.multiplicities().items():
        for ly, my in y.multiplicities().items():
            ly_k = IndecLabel(ly.shift + k, ly.len, ly.branch)
            total += mx * my * _hom_indec(x.d, lx, ly_k)
    return total


def gl_order(m: int, q: int) -> int:
    out = 1
    for i in range(m):
        out *= q ** m - q ** i
    return out


@lru_cache(maxsize=None)
def aut_count(x: ObjClass, q: int) -> int:
    """|Aut(x)| over F_q: End is local-by-blocks with residue algebra prod M_{m_c}(k)."""
    e = hom_dim_T(x, x, 0)
    mult = x.multiplicities()
    out = q ** (e - sum(m * m for m in mult.values()))
    for m in mult.values():
        out *= gl_order(m, q)
    return out


@lru_cache(maxsize=None)
def neg_hom_bound(x: ObjClass, y: ObjClass) -> int:
    """i0 with Hom_T(x, Sigma^{-i} y) = 0 for every i >= i0."""
    if not x or not y:
        return 0
    tau = x.sphere.t_degree
    lo_y = min(y.homology_degrees())
    hi_x = max(x.homology_degrees())
    reach = hi_x - lo_y
    if not x.sphere.semisimple:
        for lab in x.summands:
            # string of F(x)[1] generated in degree -shift - 1
            reach = max(reach, -lab.shift - 1 + lab.len * tau - lo_y)
    i0 = max(0, reach + 1)
    span = max(y.homology_degrees()) - lo_y + abs(tau) * max(l.len for l in x.summands) + 2
    for i in range(i0, i0 + span + 1):
        if hom_dim_T(x, y, -i):
            raise HomBoundViolation(f"Hom({x}, Sigma^-{i} {y}) != 0 past bound {i0}")
    return i0


def iter_objects(d: int, max_dim: int, shifts: range, max_len: int | None = None) -> Iterator[ObjClass]:
    """All isoclasses with total dimension <= max_dim and shifts in the range."""
    sphere = SphereDim(d)
    if d == 0:
        labels = [IndecLabel(s, 1, b) for s in shifts for b in (1, 2)]
    else:
        top = max_dim if max_len is None else min(max_len, max_dim)
        labels = [IndecLabel(s, n) for s in shifts for n in range(1, top + 1)]

    def rec(start: int, budget: int, acc: list[IndecLabel]) -> Iterator[ObjClass]:
        yield ObjClass(sphere, tuple(acc))
        for i in range(start, len(labels)):
            lab = labels[i]
            if lab.len <= budget:
                acc.append(lab)
                yield from rec(i, budget - lab.len, acc)
                acc.pop()

    yield from rec(0, max_dim, [])
