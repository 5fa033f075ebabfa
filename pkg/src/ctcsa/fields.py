"""Exact scalar arithmetic for the fields the matrix families live over.

Three kinds of field are supported:

  * ``finite``            -- GF(p^f), elements stored as coefficient vectors
                             over GF(p) modulo a fixed irreducible monic
                             polynomial (little-endian: index i holds the
                             coefficient of x^i);
  * ``rational``          -- Q, elements stored as ``fractions.Fraction``
                             (always reduced, denominator positive);
  * ``gaussian-rational`` -- Q(i), elements stored as a pair of Fractions
                             (real part, imaginary part).

All arithmetic is exact; nothing here ever rounds.  Every field carries a
total order on its scalars so that downstream canonicalization (choosing a
sign for a projective matrix, picking the first witness) is deterministic.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Tuple, Union

import numpy as np

from .errors import (
    DivisionByZero,
    FieldTooLarge,
    InfiniteFieldUnsupported,
    NoModulusAvailable,
    NonPrime,
    NotCharTwoFinite,
    SpecMismatch,
)

__all__ = [
    "FieldSpec",
    "FieldScalar",
    "make_field",
    "add",
    "mul",
    "neg",
    "inv",
    "frobenius",
    "is_sum_of_two_squares",
    "parse_scalar",
    "format_scalar",
    "op_tables",
    "MAX_FIELD_ORDER",
]

MAX_FIELD_ORDER = 65536

# Fixed moduli for the most used characteristic-2 extensions.  Each equals
# the polynomial the general search below would find first, so the table is
# a fast path, not a second convention.
_FIXED_MODULI = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
}

Payload = Union[Tuple[int, ...], Fraction, Tuple[Fraction, Fraction]]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), little-endian coefficient lists


def _poly_trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], p - 2, p) if p > 2 else b[-1]
    q = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        coef = (r[-1] * lead_inv) % p
        q[shift] = coef
        for i, bi in enumerate(b):
            r[i + shift] = (r[i + shift] - coef * bi) % p
        _poly_trim(r)
    return _poly_trim(q), r


def _poly_ext_gcd(a: list[int], b: list[int], p: int):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = _poly_trim(list(a)), _poly_trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
    return r0, s0, t0


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _poly_trim(out)


def _poly_is_irreducible(m: list[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= f/2."""
    f = len(m) - 1
    for d in range(1, f // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]
            _, r = _poly_divmod(m, cand, p)
            if not r:
                return False
    return True


def _find_modulus(p: int, f: int) -> tuple[int, ...]:
    """First irreducible monic of degree f, ordered by the base-p encoding
    of the non-leading coefficients (constant term least significant)."""
    if f == 1:
        return (0, 1)
    fixed = _FIXED_MODULI.get((p, f))
    if fixed is not None:
        return fixed
    for k in range(p**f):
        tail, n = [], k
        for _ in range(f):
            tail.append(n % p)
            n //= p
        cand = tail + [1]
        if _poly_is_irreducible(cand, p):
            return tuple(cand)
    raise NoModulusAvailable(f"no irreducible monic of degree {f} over GF({p})")


# ---------------------------------------------------------------------------
# field specification


@dataclass(frozen=True)
class FieldSpec:
    """Identity of a supported exact field."""

    kind: str  # 'finite' | 'rational' | 'gaussian-rational'
    p: Optional[int] = None
    f: Optional[int] = None
    modulus: Optional[Tuple[int, ...]] = None

    @property
    def order(self) -> Optional[int]:
        return self.p**self.f if self.kind == "finite" else None

    @property
    def char(self) -> int:
        return self.p if self.kind == "finite" else 0

    def zero(self) -> "FieldScalar":
        if self.kind == "finite":
            return FieldScalar(self, (0,) * self.f)
        if self.kind == "rational":
            return FieldScalar(self, Fraction(0))
        return FieldScalar(self, (Fraction(0), Fraction(0)))

    def one(self) -> "FieldScalar":
        if self.kind == "finite":
            return FieldScalar(self, (1 % self.p,) + (0,) * (self.f - 1))
        if self.kind == "rational":
            return FieldScalar(self, Fraction(1))
        return FieldScalar(self, (Fraction(1), Fraction(0)))

    def from_int(self, k: int) -> "FieldScalar":
        """Embedding of the integer k (k times the unit)."""
        if self.kind == "finite":
            return FieldScalar(self, (k % self.p,) + (0,) * (self.f - 1))
        if self.kind == "rational":
            return FieldScalar(self, Fraction(k))
        return FieldScalar(self, (Fraction(k), Fraction(0)))

    def from_fraction(self, num: int, den: int = 1) -> "FieldScalar":
        if self.kind == "rational":
            return FieldScalar(self, Fraction(num, den))
        if self.kind == "gaussian-rational":
            return FieldScalar(self, (Fraction(num, den), Fraction(0)))
        raise SpecMismatch("fractions only embed into characteristic-0 fields")

    def gaussian(self, re: Fraction, im: Fraction) -> "FieldScalar":
        if self.kind != "gaussian-rational":
            raise SpecMismatch(f"not a gaussian-rational field: {self.kind}")
        return FieldScalar(self, (Fraction(re), Fraction(im)))

    def i(self) -> "FieldScalar":
        return self.gaussian(Fraction(0), Fraction(1))

    def from_coeffs(self, coeffs) -> "FieldScalar":
        if self.kind != "finite":
            raise SpecMismatch(f"coefficient vectors only name finite scalars")
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.f:
            raise SpecMismatch(f"coefficient vector longer than degree {self.f}")
        cs += [0] * (self.f - len(cs))
        return FieldScalar(self, tuple(cs))

    def from_index(self, k: int) -> "FieldScalar":
        """k-th element in enumeration order (base-p digits of k)."""
        if self.kind != "finite":
            raise InfiniteFieldUnsupported("enumeration requires a finite field")
        if not 0 <= k < self.order:
            raise SpecMismatch(f"index {k} outside field of order {self.order}")
        digits = []
        for _ in range(self.f):
            digits.append(k % self.p)
            k //= self.p
        return FieldScalar(self, tuple(digits))

    def to_index(self, a: "FieldScalar") -> int:
        if self.kind != "finite":
            raise InfiniteFieldUnsupported("enumeration requires a finite field")
        k = 0
        for c in reversed(a.payload):
            k = k * self.p + c
        return k

    def elements(self) -> Iterator["FieldScalar"]:
        if self.kind != "finite":
            raise InfiniteFieldUnsupported("cannot enumerate an infinite field")
        for k in range(self.order):
            yield self.from_index(k)


@functools.lru_cache(maxsize=None)
def make_field(kind: str, p: int | None = None, f: int | None = None) -> FieldSpec:
    """Construct (and cache) a field specification.

    finite fields need p prime and p^f <= MAX_FIELD_ORDER; the other kinds
    take no parameters.
    """
    if kind == "finite":
        if p is None:
            raise NonPrime("finite field needs a characteristic p")
        f = 1 if f is None else f
        if f < 1:
            raise SpecMismatch(f"extension degree must be positive, got {f}")
        if not _is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if p**f > MAX_FIELD_ORDER:
            raise FieldTooLarge(f"GF({p}^{f}) exceeds the cap of {MAX_FIELD_ORDER}")
        return FieldSpec("finite", p, f, _find_modulus(p, f))
    if kind == "rational":
        return FieldSpec("rational")
    if kind == "gaussian-rational":
        return FieldSpec("gaussian-rational")
    raise SpecMismatch(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# scalars


@functools.total_ordering
@dataclass(frozen=True)
class FieldScalar:
    """One element of a field, tagged with the field it belongs to."""

    spec: FieldSpec
    payload: Payload

    def _need_same(self, other: "FieldScalar") -> None:
        if not isinstance(other, FieldScalar) or other.spec != self.spec:
            raise SpecMismatch(f"mixed-field arithmetic: {self!r} vs {other!r}")

    @property
    def is_zero(self) -> bool:
        return self == self.spec.zero()

    def __add__(self, other: "FieldScalar") -> "FieldScalar":
        self._need_same(other)
        k = self.spec.kind
        if k == "finite":
            p = self.spec.p
            return FieldScalar(
                self.spec,
                tuple((a + b) % p for a, b in zip(self.payload, other.payload)),
            )
        if k == "rational":
            return FieldScalar(self.spec, self.payload + other.payload)
        (ar, ai), (br, bi) = self.payload, other.payload
        return FieldScalar(self.spec, (ar + br, ai + bi))

    def __neg__(self) -> "FieldScalar":
        k = self.spec.kind
        if k == "finite":
            p = self.spec.p
            return FieldScalar(self.spec, tuple((-a) % p for a in self.payload))
        if k == "rational":
            return FieldScalar(self.spec, -self.payload)
        re, im = self.payload
        return FieldScalar(self.spec, (-re, -im))

    def __sub__(self, other: "FieldScalar") -> "FieldScalar":
        return self + (-other)

    def __mul__(self, other: "FieldScalar") -> "FieldScalar":
        self._need_same(other)
        k = self.spec.kind
        if k == "finite":
            p = self.spec.p
            prod = _poly_mul(list(self.payload), list(other.payload), p)
            _, rem = _poly_divmod(prod, list(self.spec.modulus), p)
            rem += [0] * (self.spec.f - len(rem))
            return FieldScalar(self.spec, tuple(rem))
        if k == "rational":
            return FieldScalar(self.spec, self.payload * other.payload)
        (ar, ai), (br, bi) = self.payload, other.payload
        return FieldScalar(self.spec, (ar * br - ai * bi, ar * bi + ai * br))

    def inv(self) -> "FieldScalar":
        if self.is_zero:
            raise DivisionByZero(f"inverse of zero in {self.spec.kind} field")
        k = self.spec.kind
        if k == "finite":
            p = self.spec.p
            g, s, _ = _poly_ext_gcd(list(self.payload), list(self.spec.modulus), p)
            # g is a nonzero constant because the modulus is irreducible
            c_inv = pow(g[0], p - 2, p) if p > 2 else g[0]
            s = [(c * c_inv) % p for c in s]
            s += [0] * (self.spec.f - len(s))
            return FieldScalar(self.spec, tuple(s[: self.spec.f]))
        if k == "rational":
            return FieldScalar(self.spec, 1 / self.payload)
        re, im = self.payload
        n = re * re + im * im
        return FieldScalar(self.spec, (re / n, -im / n))

    def __truediv__(self, other: "FieldScalar") -> "FieldScalar":
        return self * other.inv()

    def __pow__(self, e: int) -> "FieldScalar":
        if e < 0:
            return self.inv() ** (-e)
        out = self.spec.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _sort_key(self):
        if self.spec.kind == "finite":
            return self.payload
        if self.spec.kind == "rational":
            return self.payload
        return self.payload  # (re, im) tuple of Fractions compares lexicographically

    def __lt__(self, other: "FieldScalar") -> bool:
        self._need_same(other)
        return self._sort_key() < other._sort_key()

    def __repr__(self) -> str:
        return f"FieldScalar({format_scalar(self)!r})"


def add(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a + b


def mul(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a * b


def neg(a: FieldScalar) -> FieldScalar:
    return -a


def inv(a: FieldScalar) -> FieldScalar:
    return a.inv()


def frobenius(a: FieldScalar) -> FieldScalar:
    """Squaring map x -> x^2, defined on finite fields of characteristic 2."""
    if a.spec.kind != "finite" or a.spec.p != 2:
        raise NotCharTwoFinite("frobenius needs a finite field of characteristic 2")
    return a * a


def is_sum_of_two_squares(
    a: FieldScalar,
) -> tuple[bool, Optional[tuple[FieldScalar, FieldScalar]]]:
    """Decide whether a = x^2 + y^2 for some x, y in this finite field.

    Scans x in enumeration order and returns the first witness pair.
    """
    spec = a.spec
    if spec.kind != "finite":
        raise InfiniteFieldUnsupported("sum-of-two-squares scan needs a finite field")
    squares: dict[FieldScalar, FieldScalar] = {}
    for x in spec.elements():
        sq = x * x
        if sq not in squares:
            squares[sq] = x  # first square root in enumeration order
    for x in spec.elements():
        rest = a - x * x
        y = squares.get(rest)
        if y is not None:
            return True, (x, y)
    return False, None


# ---------------------------------------------------------------------------
# literals

_FRACTION_RE = r"-?\d+(?:/\d+)?"


def format_scalar(a: FieldScalar) -> str:
    """Render a scalar in the literal syntax parse_scalar accepts."""
    k = a.spec.kind
    if k == "finite":
        if a.spec.f == 1:
            return str(a.payload[0])
        return "[" + ",".join(str(c) for c in a.payload) + "]"
    if k == "rational":
        return str(a.payload)
    re_, im_ = a.payload
    if im_ == 0:
        return str(re_)
    if im_ == 1:
        im_txt = "i"
    elif im_ == -1:
        im_txt = "-i"
    else:
        im_txt = f"{im_}*i"
    if re_ == 0:
        return im_txt
    sign = "+" if im_ > 0 else ""
    return f"{re_}{sign}{im_txt}"


def parse_scalar(spec: FieldSpec, text: str) -> FieldScalar:
    """Parse a scalar literal for the given field.

    finite:            "3" or a coefficient vector "[0,1]"
    rational:          "3/5", "-2"
    gaussian-rational: "3/5+4/5*i", "i", "-i", "2-i", "1/2*i", plain rationals
    """
    text = text.strip()
    if spec.kind == "finite":
        if text.startswith("["):
            if not text.endswith("]"):
                raise SpecMismatch(f"unterminated coefficient vector: {text!r}")
            body = text[1:-1].strip()
            coeffs = [int(c) for c in body.split(",")] if body else []
            return spec.from_coeffs(coeffs)
        return spec.from_int(int(text))
    if spec.kind == "rational":
        m = re.fullmatch(_FRACTION_RE, text)
        if not m:
            raise SpecMismatch(f"bad rational literal: {text!r}")
        return FieldScalar(spec, Fraction(text))
    if spec.kind == "gaussian-rational":
        return _parse_gaussian(spec, text)
    raise SpecMismatch(f"unknown field kind {spec.kind!r}")


def _parse_gaussian(spec: FieldSpec, text: str) -> FieldScalar:
    s = text.replace(" ", "")
    unsigned = r"\d+(?:/\d+)?"
    if re.fullmatch(_FRACTION_RE, s):
        return spec.gaussian(Fraction(s), Fraction(0))
    m = re.fullmatch(rf"(?P<sign>-)?(?:(?P<im>{unsigned})\*)?i", s)
    if m:
        im_ = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        return spec.gaussian(Fraction(0), -im_ if m.group("sign") else im_)
    m = re.fullmatch(rf"(?P<re>{_FRACTION_RE})(?P<sign>[+-])(?:(?P<im>{unsigned})\*)?i", s)
    if m:
        im_ = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_ = -im_
        return spec.gaussian(Fraction(m.group("re")), im_)
    raise SpecMismatch(f"bad gaussian-rational literal: {text!r}")


# ---------------------------------------------------------------------------
# whole-field operation tables (used by exhaustive matrix scans)


@dataclass(frozen=True)
class OpTables:
    """Add/mul/neg/inv tables over element indices of a finite field."""

    spec: FieldSpec
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is a sentinel 0; zero has no inverse


@functools.lru_cache(maxsize=None)
def op_tables(spec: FieldSpec) -> OpTables:
    if spec.kind != "finite":
        raise InfiniteFieldUnsupported("operation tables need a finite field")
    q = spec.order
    els = [spec.from_index(k) for k in range(q)]
    add_t = np.zeros((q, q), dtype=np.int32)
    mul_t = np.zeros((q, q), dtype=np.int32)
    neg_t = np.zeros(q, dtype=np.int32)
    inv_t = np.zeros(q, dtype=np.int32)
    for a in range(q):
        neg_t[a] = spec.to_index(-els[a])
        if a:
            inv_t[a] = spec.to_index(els[a].inv())
        for b in range(q):
            add_t[a, b] = spec.to_index(els[a] + els[b])
            mul_t[a, b] = spec.to_index(els[a] * els[b])
    add_t.setflags(write=False)
    mul_t.setflags(write=False)
    neg_t.setflags(write=False)
    inv_t.setflags(write=False)
    return OpTables(spec, add_t, mul_t, neg_t, inv_t)
