"""Exact arithmetic in small finite fields F_q with q = p^k.

Elements of F_(p^k) are polynomials over F_p modulo a monic irreducible
modulus of degree k.  Coefficient lists are constant-term first.  Every
element is stored by its canonical integer value

    c0 + c1*p + ... + c_(k-1)*p^(k-1),

which doubles as the element's position in enumeration order: sorting by
value is sorting by enumeration order, and value 0 is the zero element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import FieldMismatchError, SizeLimitError

MAX_FIELD_SIZE = 2 ** 20  # guard on q = p^k
_SQRT_TABLE_BOUND = 2 ** 16  # below this, square roots come from a full table
_OP_TABLE_BOUND = 2 ** 10  # below this, extension fields cache q*q op tables


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p; coefficient lists are constant-first and the
# index equals the power of the variable


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)

def _poly_rem(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    # mod must be monic
    r = [c % p for c in a]
    d = len(mod) - 1
    while len(_poly_trim(r)) > d:
        shift = len(r) - 1 - d
        lead = r[-1]
        for i, mc in enumerate(mod):
            r[shift + i] = (r[shift + i] - lead * mc) % p
        r = _poly_trim(r)
    return _poly_trim(r)


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _poly_rem(modulus, g, p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # lexicographically smallest coefficient tuple (constant first), monic
    for tail in itertools.product(range(p), repeat=k):
        cand = tuple(tail) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_(p^k), prime subfield F_p in the k = 1 case.

    modulus is the defining polynomial, length k + 1, monic, constant-first;
    it stays empty for prime fields.  When omitted for k >= 2 the
    lexicographically smallest monic irreducible polynomial is chosen, so
    equal (p, k) pairs always name the same field.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p ** self.k > MAX_FIELD_SIZE:
            raise SizeLimitError(f"field size {self.p}^{self.k} exceeds {MAX_FIELD_SIZE}")
        if self.k == 1:
            if self.modulus:
                raise ValueError("prime fields take no modulus")
            return
        if not self.modulus:
            object.__setattr__(self, "modulus", _smallest_irreducible(self.p, self.k))
            return
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.k + 1:
            raise ValueError(f"modulus must have {self.k + 1} coefficients")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.k

    # -- element construction ------------------------------------------------

    def from_value(self, value: int) -> "FieldElement":
        if not 0 <= value < self.q:
            raise ValueError(f"value {value} outside [0, {self.q})")
        return FieldElement(self, value)

    def element(self, x: "int | Sequence[int] | FieldElement") -> "FieldElement":
        """Coerce x into this field.

        Integers embed through the prime subfield (n times one); sequences
        are coefficient lists, constant-term first.
        """
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatchError("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FieldElement(self, x % self.p)
        coeffs = list(x)
        if len(coeffs) > self.k:
            raise ValueError(f"at most {self.k} coefficients expected")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, self.value_of(coeffs))

    def scalar(self, n: int) -> "FieldElement":
        # the integer n as n * 1 in the prime subfield
        return FieldElement(self, n % self.p)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1 % self.q)

    def elements(self) -> "list[FieldElement]":
        """All q elements, zero first, in canonical value order."""
        return [FieldElement(self, v) for v in range(self.q)]

    # -- value <-> coefficient conversions ------------------------------------

    def coeffs_of(self, value: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            value, c = divmod(value, self.p)
            out.append(c)
        return tuple(out)

    def value_of(self, coeffs: Iterable[int]) -> int:
        v = 0
        for c in reversed([c % self.p for c in coeffs]):
            v = v * self.p + c
        return v

    # -- arithmetic on canonical values ---------------------------------------
    # These are the workhorses; FieldElement operators delegate here.  Prime
    # fields use plain modular arithmetic, small extensions use cached q*q
    # tables, large extensions fall back to per-op polynomial arithmetic.

    def add_val(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        tables = _op_tables(self)
        if tables is not None:
            return tables[0][a][b]
        return self.value_of(x + y for x, y in zip(self.coeffs_of(a), self.coeffs_of(b)))

    def neg_val(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.value_of(-x for x in self.coeffs_of(a))

    def sub_val(self, a: int, b: int) -> int:
        return self.add_val(a, self.neg_val(b))

    def mul_val(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        tables = _op_tables(self)
        if tables is not None:
            return tables[1][a][b]
        prod = _poly_mul(self.coeffs_of(a), self.coeffs_of(b), self.p)
        return self.value_of(_poly_rem(prod, self.modulus, self.p))

    def inv_val(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.q}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow_val(a, self.q - 2)

    def pow_val(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_val(a), -e
        result = 1 % self.q
        base = a
        while e:
            if e & 1:
                result = self.mul_val(result, base)
            base = self.mul_val(base, base)
            e >>= 1
        return result

    def sqrt_vals(self, a: int) -> tuple[int, ...]:
        """All square roots of the value a, sorted, possibly empty."""
        if self.q <= _SQRT_TABLE_BOUND:
            return _sqrt_table(self)[a]
        return _sqrt_algebraic(self, a)

    # -- formatting -----------------------------------------------------------

    def format_element(self, a: "FieldElement") -> str:
        if self.k == 1:
            return str(a.value)
        return ".".join(str(c) for c in self.coeffs_of(a.value))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.k})"


@lru_cache(maxsize=None)
def _op_tables(spec: FieldSpec):
    """(add, mul) lookup tables for small extension fields, else None."""
    q = spec.q
    if q > _OP_TABLE_BOUND:
        return None
    p, mod = spec.p, spec.modulus
    coeffs = [spec.coeffs_of(v) for v in range(q)]
    add = tuple(
        tuple(spec.value_of(x + y for x, y in zip(coeffs[a], coeffs[b])) for b in range(q))
        for a in range(q)
    )
    mul = tuple(
        tuple(
            spec.value_of(_poly_rem(_poly_mul(coeffs[a], coeffs[b], p), mod, p))
            for b in range(q)
        )
        for a in range(q)
    )
    return add, mul


@lru_cache(maxsize=None)
def _sqrt_table(spec: FieldSpec) -> tuple[tuple[int, ...], ...]:
    # exhaustive: square every element once and bucket the roots
    roots: list[list[int]] = [[] for _ in range(spec.q)]
    for r in range(spec.q):
        roots[spec.mul_val(r, r)].append(r)
    return tuple(tuple(sorted(rs)) for rs in roots)


def _sqrt_algebraic(spec: FieldSpec, a: int) -> tuple[int, ...]:
    """Square roots in fields too large for the table: Frobenius inverse in
    characteristic 2, Tonelli-Shanks otherwise."""
    q = spec.q
    if a == 0:
        return (0,)
    if spec.p == 2:
        # squaring is the Frobenius automorphism, so it is a bijection
        return (spec.pow_val(a, q // 2),)
    if spec.pow_val(a, (q - 1) // 2) != 1:
        return ()
    if q % 4 == 3:
        r = spec.pow_val(a, (q + 1) // 4)
    else:
        # Tonelli-Shanks in the cyclic group of order q - 1
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = 2 % q
        while z == 0 or spec.pow_val(z, (q - 1) // 2) == 1:
            z += 1
        c = spec.pow_val(z, t)
        r = spec.pow_val(a, (t + 1) // 2)
        w = spec.pow_val(a, t)
        m = s
        while w != 1:
            i, ww = 0, w
            while ww != 1:
                ww = spec.mul_val(ww, ww)
                i += 1
            b = spec.pow_val(c, 1 << (m - i - 1))
            r = spec.mul_val(r, b)
            c = spec.mul_val(b, b)
            w = spec.mul_val(w, c)
            m = i
    return tuple(sorted({r, spec.neg_val(r)}))


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec, held by canonical integer value."""

    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs_of(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def _same_field(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"mixed fields {self.spec} and {other.spec}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.spec, self.spec.add_val(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.spec, self.spec.sub_val(self.value, other.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.neg_val(self.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.spec, self.spec.mul_val(self.value, other.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv_val(self.value))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.pow_val(self.value, e))

    def __str__(self) -> str:
        return self.spec.format_element(self)

    def __repr__(self) -> str:
        return f"<{self} in {self.spec!r}>"


def sqrt(a: FieldElement) -> set[FieldElement]:
    """The set of square roots of a: empty, one, or two elements."""
    return {FieldElement(a.spec, r) for r in a.spec.sqrt_vals(a.value)}


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All elements of the field, zero first, in canonical order."""
    return spec.elements()


# ---------------------------------------------------------------------------
# text forms used by the command line and by serialized configs


def parse_field(text: str) -> FieldSpec:
    """Parse 'p', 'p,k' or 'p,k,c0.c1...ck' (modulus constant-first)."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) == 1:
        return FieldSpec(int(parts[0]))
    if len(parts) == 2:
        return FieldSpec(int(parts[0]), int(parts[1]))
    if len(parts) == 3:
        modulus = tuple(int(c) for c in parts[2].split("."))
        return FieldSpec(int(parts[0]), int(parts[1]), modulus)
    raise ValueError(f"cannot parse field description {text!r}")


def field_str(spec: FieldSpec) -> str:
    if spec.k == 1:
        return str(spec.p)
    return f"{spec.p},{spec.k}," + ".".join(str(c) for c in spec.modulus)


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Parse an element: a bare integer (prime-subfield embedding) or a
    dot-separated coefficient list, constant term first."""
    text = text.strip()
    if "." in text:
        return spec.element([int(c) for c in text.split(".")])
    return spec.element(int(text))
