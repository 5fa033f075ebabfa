"""2x2 matrix groups over exact fields, and their automorphisms.

SL(2,q) is closed from transvections; for an extension field GF(p^f) the
generator set includes a transvection per basis element, since the two
integer transvections alone only reach the prime-field subgroup.  PSL
elements are sign-canonicalized matrices: of M and -M we keep the one whose
first nonzero entry in reading order is smaller in the field's total order
(in characteristic 2 the two coincide).

Groups built here carry their matrices on the side (``.matrices``), which
is what entrywise maps like the squaring automorphism operate on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import (
    NoMatrixLabels,
    NonPrime,
    NotCharTwo,
    NotNormal,
    OrderCapExceeded,
    PreconditionFailed,
)
from .fields import (
    FieldScalar,
    FieldSpec,
    format_scalar,
    frobenius,
    make_field,
    op_tables,
)
from .fields import _is_prime
from .groups import FiniteGroup, SubgroupSet, close_generators

__all__ = [
    "Mat2",
    "ProjMat2",
    "GroupAutomorphism",
    "psl2_order",
    "sl2_group",
    "psl2_group",
    "matrix_index",
    "commutes",
    "char0_ct_counterexample",
    "gaussian_tuv_example",
    "inner_automorphism",
    "frobenius_automorphism",
    "compose",
    "equal_automorphisms",
    "conjugation_kernel",
    "scalar_centralizer_check",
]


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix over one of the exact fields."""

    a: FieldScalar
    b: FieldScalar
    c: FieldScalar
    d: FieldScalar

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @staticmethod
    def identity(spec: FieldSpec) -> "Mat2":
        one, zero = spec.one(), spec.zero()
        return Mat2(one, zero, zero, one)

    @staticmethod
    def of(spec: FieldSpec, rows: Sequence[Sequence]) -> "Mat2":
        (a, b), (c, d) = rows
        conv = lambda v: v if isinstance(v, FieldScalar) else spec.from_int(v)
        return Mat2(conv(a), conv(b), conv(c), conv(d))

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> FieldScalar:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det_inv = self.det().inv()
        return Mat2(
            self.d * det_inv, -self.b * det_inv, -self.c * det_inv, self.a * det_inv
        )

    def entries(self) -> tuple[FieldScalar, ...]:
        return (self.a, self.b, self.c, self.d)

    def label(self) -> str:
        a, b, c, d = (format_scalar(e) for e in self.entries())
        return f"[[{a},{b}],[{c},{d}]]"


@dataclass(frozen=True)
class ProjMat2:
    """A matrix up to sign, stored as its canonical representative."""

    rep: Mat2

    @staticmethod
    def of(m: Mat2) -> "ProjMat2":
        spec = m.spec
        if spec.kind == "finite" and spec.p == 2:
            return ProjMat2(m)  # -M = M, nothing to choose
        neg = -m
        for e, ne in zip(m.entries(), neg.entries()):
            if not e.is_zero:
                return ProjMat2(m if e < ne else neg)
        return ProjMat2(m)  # zero matrix; never a group element

    @property
    def spec(self) -> FieldSpec:
        return self.rep.spec

    def __mul__(self, o: "ProjMat2") -> "ProjMat2":
        return ProjMat2.of(self.rep * o.rep)

    def inverse(self) -> "ProjMat2":
        return ProjMat2.of(self.rep.inverse())

    def label(self) -> str:
        plain = self.rep.label()
        if self.spec.kind == "finite" and self.spec.p == 2:
            return plain
        return "±" + plain


def commutes(x, y) -> bool:
    """Whether x and y commute (for ProjMat2, up to sign by construction)."""
    return x * y == y * x


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not _is_prime(p):
        raise NonPrime(f"{q} is not a prime power")
    f = 0
    while q % p == 0:
        q //= p
        f += 1
    if q != 1:
        raise NonPrime("not a prime power")
    return p, f


def _transvection_generators(spec: FieldSpec) -> list[Mat2]:
    one, zero = spec.one(), spec.zero()
    gens = [Mat2(one, one, zero, one), Mat2(one, zero, one, one)]
    for k in range(1, spec.f):
        w = spec.from_index(spec.p**k)  # k-th power basis element
        gens.append(Mat2(one, w, zero, one))
        gens.append(Mat2(one, zero, w, one))
    return gens


def sl2_group(q: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    """SL(2,q) as an indexed group; element matrices ride along."""
    p, f = _prime_power(q)
    spec = make_field("finite", p, f)
    gens = _transvection_generators(spec)
    group = close_generators(
        gens,
        lambda x, y: x * y,
        lambda x: x.inverse(),
        label=lambda m: m.label(),
        order_cap=order_cap,
        provenance=f"sl2:{q}",
    )
    group.matrices = group.closure_elements
    group.field_spec = spec
    return group


def psl2_group(q: int, *, order_cap: Optional[int] = None) -> FiniteGroup:
    """PSL(2,q); coincides with SL(2,q) in characteristic 2."""
    p, f = _prime_power(q)
    spec = make_field("finite", p, f)
    gens = [ProjMat2.of(m) for m in _transvection_generators(spec)]
    group = close_generators(
        gens,
        lambda x, y: x * y,
        lambda x: x.inverse(),
        label=lambda m: m.label(),
        order_cap=order_cap,
        provenance=f"psl2:{q}",
    )
    group.matrices = group.closure_elements
    group.field_spec = spec
    return group


def matrix_index(group: FiniteGroup, m) -> int:
    """Index of a matrix (Mat2 or ProjMat2) in a matrix-built group."""
    mats = getattr(group, "matrices", None)
    if mats is None:
        raise NoMatrixLabels(f"{group.provenance} was not built from matrices")
    lookup = getattr(group, "_matrix_lookup", None)
    if lookup is None:
        lookup = {mat: i for i, mat in enumerate(mats)}
        group._matrix_lookup = lookup
    if isinstance(m, Mat2) and mats and isinstance(mats[0], ProjMat2):
        m = ProjMat2.of(m)
    try:
        return lookup[m]
    except KeyError:
        raise NoMatrixLabels(f"matrix {m} is not an element of {group.provenance}")


# ---------------------------------------------------------------------------
# characteristic-0 witness triples


def char0_ct_counterexample(spec: FieldSpec, x: FieldScalar, y: FieldScalar):
    """The projective triple A, B, C with AB = BA, BC = CB, AC != CA.

    Requires x^2 + y^2 = -1 in a characteristic-0 exact field; A is built
    from (x, y), B is the quarter-turn, C is the 3/5-4/5 rotation.
    """
    if spec.kind not in ("rational", "gaussian-rational"):
        raise PreconditionFailed("witness construction needs a characteristic-0 field")
    if x.spec != spec or y.spec != spec:
        raise PreconditionFailed("x and y must belong to the given field")
    if x * x + y * y != -spec.one():
        raise PreconditionFailed(
            f"x^2 + y^2 must be -1, got {format_scalar(x * x + y * y)}"
        )
    one = spec.one()
    a = ProjMat2.of(Mat2(-x, y, y, x))
    b = ProjMat2.of(Mat2(spec.zero(), one, -one, spec.zero()))
    c = ProjMat2.of(
        Mat2(
            spec.from_fraction(3, 5),
            spec.from_fraction(4, 5),
            spec.from_fraction(-4, 5),
            spec.from_fraction(3, 5),
        )
    )
    for m in (a, b, c):
        if m.rep.det() != one:
            raise PreconditionFailed("witness matrix fell outside the determinant-1 group")
    assert commutes(a, b)
    assert commutes(b, c)
    assert not commutes(a, c)
    return a, b, c


def gaussian_tuv_example():
    """The diagonal/rotation triple over Q(i): U commutes with T and with V,
    yet T and V do not commute even up to sign."""
    qi = make_field("gaussian-rational")
    one, zero = qi.one(), qi.zero()
    t = ProjMat2.of(Mat2(zero, one, -one, zero))
    u = ProjMat2.of(Mat2(qi.i(), zero, zero, -qi.i()))
    v = ProjMat2.of(Mat2(qi.from_int(2), zero, zero, qi.from_fraction(1, 2)))
    for m in (t, u, v):
        assert m.rep.det() == one
    assert commutes(u, t)
    assert commutes(u, v)
    assert not commutes(t, v)
    return t, u, v


# ---------------------------------------------------------------------------
# automorphisms as index permutations


class GroupAutomorphism:
    """A bijection of group indices that respects the table."""

    def __init__(self, parent: FiniteGroup, image: np.ndarray, provenance: str):
        image = np.asarray(image, dtype=np.int32)
        if image.shape != (parent.n,):
            raise NoMatrixLabels(f"image must have length {parent.n}")
        if np.bincount(image, minlength=parent.n).max() != 1:
            raise PreconditionFailed("image is not a bijection")
        if image[0] != 0:
            raise PreconditionFailed("image must fix the identity")
        t = parent.table
        if parent.n <= 600:
            ok = (image[t] == t[image[:, None], image[None, :]]).all()
        else:
            rng = np.random.default_rng(6789)
            xs, ys = rng.integers(0, parent.n, size=(2, 100_000))
            ok = (image[t[xs, ys]] == t[image[xs], image[ys]]).all()
        if not ok:
            raise PreconditionFailed("image does not respect the table")
        self.parent = parent
        self.image = image
        self.image.setflags(write=False)
        self.provenance = provenance

    def __call__(self, i: int) -> int:
        return int(self.image[i])

    def is_identity(self) -> bool:
        return bool((self.image == np.arange(self.parent.n)).all())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAutomorphism)
            and other.parent is self.parent
            and np.array_equal(other.image, self.image)
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.image.tobytes()))

    def __repr__(self) -> str:
        return f"GroupAutomorphism({self.provenance} on {self.parent.provenance})"


def inner_automorphism(group: FiniteGroup, g: int) -> GroupAutomorphism:
    """Conjugation x -> g x g^-1."""
    image = group.table[group.table[g], group.inv[g]]
    return GroupAutomorphism(group, image, f"inner:{group.labels[g]}")


def frobenius_automorphism(group: FiniteGroup) -> GroupAutomorphism:
    """Entrywise squaring on a matrix group over GF(2^f)."""
    mats = getattr(group, "matrices", None)
    spec = getattr(group, "field_spec", None)
    if mats is None or spec is None:
        raise NoMatrixLabels(f"{group.provenance} was not built from matrices")
    if spec.kind != "finite" or spec.p != 2:
        raise NotCharTwo("entrywise squaring needs characteristic 2")
    image = np.empty(group.n, dtype=np.int32)
    for i, m in enumerate(mats):
        rep = m.rep if isinstance(m, ProjMat2) else m
        sq = Mat2(*(frobenius(e) for e in rep.entries()))
        image[i] = matrix_index(group, sq if isinstance(m, Mat2) else ProjMat2.of(sq))
    return GroupAutomorphism(group, image, "frobenius")


def compose(f: GroupAutomorphism, g: GroupAutomorphism) -> GroupAutomorphism:
    """(f o g)(x) = f(g(x))."""
    if f.parent is not g.parent:
        raise PreconditionFailed("automorphisms of different groups")
    return GroupAutomorphism(
        f.parent, f.image[g.image], f"({f.provenance})o({g.provenance})"
    )


def equal_automorphisms(f: GroupAutomorphism, g: GroupAutomorphism) -> bool:
    return f == g


def conjugation_kernel(group: FiniteGroup, sub: SubgroupSet) -> SubgroupSet:
    """Elements acting trivially on a normal subgroup by conjugation."""
    if sub.parent is not group:
        raise NotNormal("subgroup belongs to a different group")
    if not sub.is_normal():
        raise NotNormal("conjugation kernel needs a normal subgroup")
    mask = np.ones(group.n, dtype=bool)
    for m in sub.indices:
        mask &= group.table[:, m] == group.table[m, :]
    return SubgroupSet(group, np.flatnonzero(mask))


# ---------------------------------------------------------------------------
# exhaustive scalar-centralizer scan over GL(2,q)


def _mm_idx(t, m1, m2):
    """Index-level 2x2 matrix product via field op tables; entries are arrays."""
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (
        t.add[t.mul[a1, a2], t.mul[b1, c2]],
        t.add[t.mul[a1, b2], t.mul[b1, d2]],
        t.add[t.mul[c1, a2], t.mul[d1, c2]],
        t.add[t.mul[c1, b2], t.mul[d1, d2]],
    )


def scalar_centralizer_check(q: int) -> bool:
    """Exhaustively verify in GL(2,q): commuting with both [[1,1],[0,1]]
    and [[0,1],[1,0]] forces a scalar matrix."""
    p, f = _prime_power(q)
    spec = make_field("finite", p, f)
    t = op_tables(spec)
    qq = spec.order
    if qq**4 > 20_000_000:
        raise OrderCapExceeded(f"GL(2,{q}) scan too large", qq)
    rng = np.arange(qq, dtype=np.int32)
    a, b, c, d = np.meshgrid(rng, rng, rng, rng, indexing="ij")
    a, b, c, d = (v.ravel() for v in (a, b, c, d))
    det = t.add[t.mul[a, d], t.neg[t.mul[b, c]]]
    one_i = spec.to_index(spec.one())
    x = tuple(
        np.full_like(a, spec.to_index(v))
        for v in (spec.one(), spec.one(), spec.zero(), spec.one())
    )
    y = tuple(
        np.full_like(a, spec.to_index(v))
        for v in (spec.zero(), spec.one(), spec.one(), spec.zero())
    )
    m = (a, b, c, d)
    mx, xm = _mm_idx(t, m, x), _mm_idx(t, x, m)
    my, ym = _mm_idx(t, m, y), _mm_idx(t, y, m)
    comm_both = np.ones(a.shape, dtype=bool)
    for u, v in zip(mx + my, xm + ym):
        comm_both &= u == v
    invertible = det != 0
    scalar = (b == 0) & (c == 0) & (a == d)
    candidates = invertible & comm_both
    return bool((scalar[candidates]).all() and candidates.sum() == qq - 1)
