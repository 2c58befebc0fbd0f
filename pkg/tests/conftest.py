from __future__ import annotations

import pytest

from stopset import EllipticCodeSpec, FieldSpec, Point, curve, scalar_mul


@pytest.fixture(scope="session")
def f5():
    return FieldSpec(5)


@pytest.fixture(scope="session")
def f7():
    return FieldSpec(7)


@pytest.fixture(scope="session")
def ref_curve(f5):
    # y^2 = x^3 + x + 1 over F_5: nine rational points, cyclic of order 9
    return curve(f5, 1, 1)


@pytest.fixture(scope="session")
def ref_spec(ref_curve, f5):
    """The reference code: D holds the successive multiples of the base
    point (0, 1), so position i carries [i]P and index arithmetic mirrors
    the group structure.  m = 3."""
    P1 = Point(f5.element(0), f5.element(1))
    D = tuple(scalar_mul(ref_curve, i, P1) for i in range(1, 9))
    return EllipticCodeSpec(ref_curve, D, 3)


def nonsingular_curves(field):
    """Every nonsingular short Weierstrass curve over the field."""
    out = []
    for av in range(field.q):
        for bv in range(field.q):
            try:
                out.append(
                    curve(field, field.from_value(av), field.from_value(bv))
                )
            except ValueError:
                continue
    return out
