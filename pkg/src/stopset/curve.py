"""Short Weierstrass curves y^2 = x^3 + ax + b over fields of
characteristic >= 5, with exhaustive point enumeration and brute-force
discovery of the group structure Z/m1 x Z/m2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import FieldMismatchError, IntegrityError
from .ffield import FieldElement, FieldSpec, parse_element, sqrt


@dataclass(frozen=True)
class Point:
    """A curve point: affine coordinates, or the point at infinity when
    both coordinates are None."""

    x: FieldElement | None = None
    y: FieldElement | None = None

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise ValueError("affine points need both coordinates")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = Point()


@dataclass(frozen=True)
class EllipticCurve:
    field: FieldSpec
    a: FieldElement
    b: FieldElement

    def __post_init__(self) -> None:
        if self.field.p < 5:
            raise ValueError("short Weierstrass form needs characteristic >= 5")
        if self.a.spec != self.field or self.b.spec != self.field:
            raise FieldMismatchError("coefficients must live in the curve's field")
        disc = self.field.scalar(4) * self.a ** 3 + self.field.scalar(27) * self.b ** 2
        if disc.is_zero():
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    def is_on_curve(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        if P.x.spec != self.field:
            return False
        return P.y * P.y == P.x ** 3 + self.a * P.x + self.b

    def __repr__(self) -> str:
        return f"E[y^2=x^3+{self.a}x+{self.b} over {self.field!r}]"


def curve(field: FieldSpec, a, b) -> EllipticCurve:
    """Convenience constructor coercing a and b into the field."""
    return EllipticCurve(field, field.element(a), field.element(b))


def _check_point(E: EllipticCurve, P: Point) -> None:
    if not E.is_on_curve(P):
        raise ValueError(f"{P!r} is not on {E!r}")


def _add_unchecked(E: EllipticCurve, P: Point, Q: Point) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        # tangent line; P == Q and y != 0 here
        num = E.field.scalar(3) * P.x * P.x + E.a
        lam = num * (E.field.scalar(2) * P.y).inverse()
    else:
        lam = (Q.y - P.y) * (Q.x - P.x).inverse()
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(x3, y3)


def add(E: EllipticCurve, P: Point, Q: Point) -> Point:
    """Chord-and-tangent addition."""
    _check_point(E, P)
    _check_point(E, Q)
    return _add_unchecked(E, P, Q)


def neg(E: EllipticCurve, P: Point) -> Point:
    _check_point(E, P)
    if P.is_infinity:
        return P
    return Point(P.x, -P.y)


def scalar_mul(E: EllipticCurve, n: int, P: Point) -> Point:
    """[n]P by double-and-add; n may be negative or zero."""
    _check_point(E, P)
    if n < 0:
        n, P = -n, neg(E, P)
    acc = INFINITY
    base = P
    while n:
        if n & 1:
            acc = _add_unchecked(E, acc, base)
        base = _add_unchecked(E, base, base)
        n >>= 1
    return acc


def sum_points(E: EllipticCurve, points: Iterable[Point]) -> Point:
    total = INFINITY
    for P in points:
        _check_point(E, P)
        total = _add_unchecked(E, total, P)
    return total


@lru_cache(maxsize=None)
def rational_points(E: EllipticCurve) -> tuple[Point, ...]:
    """All q-rational points in canonical order: infinity first, then the
    affine points sorted by (x, y) in field enumeration order."""
    pts = [INFINITY]
    for x in E.field.elements():
        rhs = x ** 3 + E.a * x + E.b
        for y in sorted(sqrt(rhs), key=lambda e: e.value):
            pts.append(Point(x, y))
    N = len(pts)
    q = E.field.q
    # Hasse: |N - q - 1| <= 2*sqrt(q); a violation means broken arithmetic
    if (N - q - 1) ** 2 > 4 * q:
        raise IntegrityError(f"point count {N} violates the Hasse bound for q={q}")
    return tuple(pts)


def point_order(E: EllipticCurve, P: Point) -> int:
    _check_point(E, P)
    n = 1
    acc = P
    while not acc.is_infinity:
        acc = _add_unchecked(E, acc, P)
        n += 1
    return n


@dataclass
class GroupStructure:
    """E(F_q) as Z/m1 x Z/m2 with m1 | m2.

    generators holds (g1, g2) with g1 of order m1 and g2 of order m2; g1 is
    Infinity when m1 = 1.  coordinate_map sends each point P to the unique
    (c1, c2) with P = [c1]g1 + [c2]g2, 0 <= c1 < m1, 0 <= c2 < m2.
    """

    m1: int
    m2: int
    generators: tuple[Point, Point]
    coordinate_map: dict[Point, tuple[int, int]]

    @property
    def order(self) -> int:
        return self.m1 * self.m2


def group_structure(E: EllipticCurve) -> GroupStructure:
    """Brute-force invariant factors by order census and generator search.

    The coordinate map is built by enumerating all m1*m2 combinations of the
    candidate generators; hitting every point exactly once certifies that the
    pair generates a direct sum, which makes the map a bijection and (by the
    uniqueness of representations) an isomorphism.
    """
    pts = rational_points(E)
    N = len(pts)
    orders = {P: point_order(E, P) for P in pts}
    m2 = 1
    for o in orders.values():
        m2 = math.lcm(m2, o)
    if N % m2:
        raise IntegrityError("exponent does not divide the group order")
    m1 = N // m2
    if m2 % m1:
        raise IntegrityError(f"invariant factors ({m1}, {m2}) fail m1 | m2")
    g2 = next(P for P in pts if orders[P] == m2)

    def build_map(g1: Point) -> dict[Point, tuple[int, int]] | None:
        table: dict[Point, tuple[int, int]] = {}
        row_start = INFINITY
        for c1 in range(m1):
            acc = row_start
            for c2 in range(m2):
                if acc in table:
                    return None
                table[acc] = (c1, c2)
                acc = _add_unchecked(E, acc, g2)
            row_start = _add_unchecked(E, row_start, g1)
        return table

    if m1 == 1:
        g1 = INFINITY
        coord = build_map(g1)
    else:
        coord = None
        g1 = INFINITY
        for cand in pts:
            if orders[cand] != m1:
                continue
            coord = build_map(cand)
            if coord is not None:
                g1 = cand
                break
    if coord is None or len(coord) != N:
        raise IntegrityError("no generator pair produced a full coordinate map")
    return GroupStructure(m1, m2, (g1, g2), coord)


# ---------------------------------------------------------------------------
# text forms


def parse_point(E: EllipticCurve, text: str) -> Point:
    """Parse 'x,y' (field-element syntax per coordinate) or 'inf'."""
    text = text.strip()
    if text.lower() in ("inf", "o"):
        return INFINITY
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"cannot parse point {text!r}")
    P = Point(parse_element(E.field, parts[0]), parse_element(E.field, parts[1]))
    _check_point(E, P)
    return P


def point_str(P: Point) -> str:
    if P.is_infinity:
        return "inf"
    return f"{P.x},{P.y}"
