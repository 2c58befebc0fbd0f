"""Residue codes on elliptic curves and their maximal parity-check matrix.

The code is C(D, m): the null space of the m x n evaluation matrix whose
rows are the pole-order-sorted monomial basis x^i y^j (j <= 1, 2i + 3j <= m)
evaluated on an ordered tuple D of n distinct affine points.  The maximal
parity-check matrix H* consists of *all* q^m - 1 nonzero words of the row
space of that evaluation matrix; H* is streamed, never stored.

A subset S of column indices (1-based) is a stopping set of H when no row
of H restricted to S has Hamming weight exactly 1.  The empty set counts
as a stopping set.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .curve import EllipticCurve, Point
from .errors import FieldMismatchError, SizeLimitError
from .ffield import FieldElement, FieldSpec

DEFAULT_ROW_LIMIT = 2 ** 22  # q^m guard for streaming the full dual codebook
ROW_LIMIT_ENV = "STOPSET_MAX_ROWS"
DEFAULT_SUBSET_LIMIT = 10 ** 6

ROLE_GENERATOR = "generator"
ROLE_PARITY = "parity-check"


def row_limit(override: int | None = None) -> int:
    """Effective bound on streamed dual rows; the environment variable
    STOPSET_MAX_ROWS replaces the default, an explicit argument wins."""
    if override is not None:
        return override
    env = os.environ.get(ROW_LIMIT_ENV)
    return int(env) if env else DEFAULT_ROW_LIMIT


@dataclass(frozen=True)
class EllipticCodeSpec:
    """An ordered evaluation set D of affine points plus the pole bound m."""

    curve: EllipticCurve
    D: tuple[Point, ...]
    m: int

    def __post_init__(self) -> None:
        n = len(self.D)
        if not 0 < self.m < n:
            raise ValueError(f"need 0 < m < n, got m={self.m}, n={n}")
        seen = set()
        for P in self.D:
            if P.is_infinity:
                raise ValueError("evaluation points must be affine")
            if not self.curve.is_on_curve(P):
                raise ValueError(f"{P!r} is not on the curve")
            if P in seen:
                raise ValueError(f"duplicate evaluation point {P!r}")
            seen.add(P)

    @property
    def n(self) -> int:
        return len(self.D)

    @property
    def field(self) -> FieldSpec:
        return self.curve.field


def spec_all_points(curve: EllipticCurve, m: int) -> EllipticCodeSpec:
    """The canonical spec: D = all rational points except infinity."""
    from .curve import rational_points

    D = tuple(P for P in rational_points(curve) if not P.is_infinity)
    return EllipticCodeSpec(curve, D, m)


@dataclass(frozen=True)
class CodeMatrix:
    spec: FieldSpec
    entries: tuple[tuple[FieldElement, ...], ...]
    role: str

    def __post_init__(self) -> None:
        if self.role not in (ROLE_GENERATOR, ROLE_PARITY):
            raise ValueError(f"unknown role {self.role!r}")
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.entries:
            for e in row:
                if e.spec != self.spec:
                    raise FieldMismatchError("entry outside the matrix field")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def values(self) -> list[tuple[int, ...]]:
        """Rows as canonical integer values; the fast-path representation."""
        return [tuple(e.value for e in row) for row in self.entries]


def _matrix_from_values(spec: FieldSpec, rows: Iterable[Sequence[int]], role: str) -> CodeMatrix:
    ent = tuple(tuple(FieldElement(spec, v) for v in row) for row in rows)
    return CodeMatrix(spec, ent, role)


def rr_basis(m: int) -> list[tuple[int, int]]:
    """Exponent pairs (i, j) for the monomials x^i y^j spanning the
    functions with pole order <= m at infinity: j in {0, 1}, 2i + 3j <= m,
    sorted by pole order 2i + 3j.  Exactly m pairs (order 1 is a gap)."""
    if m < 1:
        raise ValueError("pole bound must be >= 1")
    pairs = [(i, j) for j in (0, 1) for i in range((m - 3 * j) // 2 + 1) if 2 * i + 3 * j <= m]
    return sorted(pairs, key=lambda ij: 2 * ij[0] + 3 * ij[1])


def generator_matrix(spec: EllipticCodeSpec) -> CodeMatrix:
    """The m x n evaluation matrix of the monomial basis on D.

    Its row space is the full dual of the residue code, so it doubles as a
    (minimal) parity-check matrix of that code.
    """
    rows = []
    for i, j in rr_basis(spec.m):
        rows.append(tuple(P.x ** i * P.y ** j for P in spec.D))
    return CodeMatrix(spec.field, tuple(rows), ROLE_GENERATOR)


# ---------------------------------------------------------------------------
# streaming the dual codebook


def _combination_stream(
    spec: FieldSpec, rows: Sequence[Sequence[int]], normalized: bool
) -> Iterator[tuple[int, ...]]:
    """All linear combinations of `rows` as value tuples.

    normalized=True yields one representative per scalar class (first
    nonzero coefficient fixed to 1) and skips the zero combination; scaling
    by a nonzero constant never changes a word's support, so this is enough
    whenever only supports matter.  The full stream starts with zero and
    yields q^len(rows) words in coefficient-odometer order.
    """
    q = spec.q
    n = len(rows[0]) if rows else 0
    add = spec.add_val
    pre = [
        [tuple(spec.mul_val(c, v) for v in row) for c in range(q)]
        for row in rows
    ]

    def walk(level: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if level == len(rows):
            yield acc
            return
        for c in range(q):
            scaled = pre[level][c]
            nxt = acc if c == 0 else tuple(add(a, s) for a, s in zip(acc, scaled))
            yield from walk(level + 1, nxt)

    zero = (0,) * n
    if not normalized:
        yield from walk(0, zero)
        return
    for lead in range(len(rows)):
        base = pre[lead][1 % q]
        yield from walk(lead + 1, base)


def dual_rows(spec: EllipticCodeSpec, max_rows: int | None = None) -> Iterator[tuple[FieldElement, ...]]:
    """Stream all q^m words of the dual (the evaluation code), zero first."""
    limit = row_limit(max_rows)
    q = spec.field.q
    if q ** spec.m > limit:
        raise SizeLimitError(f"{q}^{spec.m} dual rows exceed the bound {limit}")
    G = generator_matrix(spec).values()
    f = spec.field
    for row in _combination_stream(f, G, normalized=False):
        yield tuple(FieldElement(f, v) for v in row)


def hstar_rows(spec: EllipticCodeSpec, max_rows: int | None = None) -> Iterator[tuple[FieldElement, ...]]:
    """Stream H*: the q^m - 1 nonzero dual words."""
    for row in dual_rows(spec, max_rows):
        if any(e.value for e in row):
            yield row


@lru_cache(maxsize=None)
def hstar_support_masks(spec: EllipticCodeSpec, max_rows: int | None = None) -> frozenset[int]:
    """Distinct support bitmasks of H* rows (bit j-1 = column j).

    Streams one representative per scalar class; scalar multiples share a
    support, so the mask set equals that of the full H*.
    """
    limit = row_limit(max_rows)
    q = spec.field.q
    if q ** spec.m > limit:
        raise SizeLimitError(f"{q}^{spec.m} dual rows exceed the bound {limit}")
    G = generator_matrix(spec).values()
    masks = set()
    for row in _combination_stream(spec.field, G, normalized=True):
        mask = 0
        for j, v in enumerate(row):
            if v:
                mask |= 1 << j
        masks.add(mask)
    return frozenset(masks)


# ---------------------------------------------------------------------------
# stopping-set oracle, straight from the definition


def subset_mask(S: Iterable[int]) -> int:
    """1-based column indices to a bitmask."""
    mask = 0
    for i in S:
        mask |= 1 << (i - 1)
    return mask


def is_stopping_set_oracle(rows: Iterable[Sequence], S: Iterable[int]) -> bool:
    """True when no row restricted to S has weight exactly 1.

    rows may contain FieldElement or plain integer entries; S holds 1-based
    positions.  Streams with early exit on the first weight-1 restriction.
    """
    positions = [i - 1 for i in set(S)]
    for row in rows:
        weight = 0
        for j in positions:
            if row[j]:
                weight += 1
                if weight > 1:
                    break
        if weight == 1:
            return False
    return True


def is_stopping_set_masks(masks: Iterable[int], s_mask: int) -> bool:
    """Mask-level form of the oracle: same definition, supports precomputed."""
    for r in masks:
        if (r & s_mask).bit_count() == 1:
            return False
    return True


def stopping_distribution_from_rows(rows: Iterable[Sequence], n: int) -> "Distribution":
    """T_i for i = 0..n by running the oracle over every subset of [n].

    Definitional and exponential; guarded at n <= 20.
    """
    if n > 20:
        raise SizeLimitError(f"2^{n} subsets exceed the oracle sweep bound")
    masks = set()
    for row in rows:
        mask = 0
        for j in range(n):
            if row[j]:
                mask |= 1 << j
        masks.add(mask)
    masks.discard(0)
    counts = [0] * (n + 1)
    for s in range(1 << n):
        if is_stopping_set_masks(masks, s):
            counts[s.bit_count()] += 1
    return Distribution(tuple(counts))


# ---------------------------------------------------------------------------
# linear algebra over the field, on value rows


def _rref(spec: FieldSpec, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = spec.inv_val(rows[r][c])
        rows[r] = [spec.mul_val(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [spec.sub_val(a, spec.mul_val(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def matrix_rank(M: CodeMatrix) -> int:
    return len(_rref(M.spec, M.values())[0])


def null_space(M: CodeMatrix) -> CodeMatrix:
    """A basis of the right null space of M, as a parity-check-role matrix:
    its rows span exactly the code checked by M."""
    spec = M.spec
    reduced, pivots = _rref(spec, M.values())
    n = M.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = spec.neg_val(reduced[r][fc])
        basis.append(tuple(vec))
    return _matrix_from_values(spec, basis, ROLE_PARITY)


def min_distance_bruteforce(M: CodeMatrix, max_words: int | None = None) -> int:
    """Minimum Hamming weight over the nonzero row space of M, found by
    enumerating one representative per scalar class (weight is invariant
    under scaling).  Guarded by q^rank <= the row bound."""
    spec = M.spec
    basis, _ = _rref(spec, M.values())
    if not basis:
        raise ValueError("zero code has no minimum distance")
    limit = row_limit(max_words)
    if spec.q ** len(basis) > limit:
        raise SizeLimitError(f"{spec.q}^{len(basis)} codewords exceed the bound {limit}")
    best = None
    for word in _combination_stream(spec, basis, normalized=True):
        w = sum(1 for v in word if v)
        if best is None or w < best:
            best = w
            if best == 1:
                break
    return best


def min_distance_dependent_columns(H: CodeMatrix, max_subsets: int | None = None) -> int:
    """Minimum distance of the code whose parity-check matrix is H.

    Searches, in ascending size w, for w columns carrying a dependency with
    all coefficients nonzero; the first hit is the minimum distance (such a
    dependency is a codeword of support exactly those columns).  Exhaustive
    per size, capped at rank + 1 by the Singleton bound.
    """
    spec = H.spec
    rows, _ = _rref(spec, H.values())
    n = H.ncols
    r = len(rows)
    if r == n:
        raise ValueError("zero code has no minimum distance")
    limit = max_subsets if max_subsets is not None else DEFAULT_SUBSET_LIMIT
    for w in range(1, r + 2):
        if math.comb(n, w) > limit:
            raise SizeLimitError(f"C({n},{w}) column subsets exceed the bound {limit}")
        for cols in combinations(range(n), w):
            sub = [[row[c] for c in cols] for row in rows]
            if _has_full_support_kernel(spec, sub, w):
                return w
    raise ValueError("unreachable: every code has distance <= rank + 1")


def _kernel_basis(spec: FieldSpec, rows: list[list[int]], width: int) -> list[tuple[int, ...]]:
    reduced, pivots = _rref(spec, rows) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * width
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = spec.neg_val(reduced[r][fc])
        basis.append(tuple(vec))
    return basis


def _has_full_support_kernel(spec: FieldSpec, rows: list[list[int]], width: int) -> bool:
    basis = _kernel_basis(spec, rows, width)
    if not basis:
        return False
    for vec in _combination_stream(spec, basis, normalized=True):
        if all(vec):
            return True
    return False


def residue_min_distance(spec: EllipticCodeSpec, strategy: str = "auto") -> int:
    """Minimum distance of the residue code, by pure linear algebra.

    'enumerate' walks the codeword space of the null-space basis;
    'columns' searches minimal dependent column sets of the evaluation
    matrix; 'auto' enumerates when q^(n-m) fits the row bound.
    """
    G = generator_matrix(spec)
    if strategy == "auto":
        feasible = spec.field.q ** (spec.n - spec.m) <= row_limit(None)
        strategy = "enumerate" if feasible else "columns"
    if strategy == "enumerate":
        return min_distance_bruteforce(null_space(G))
    if strategy == "columns":
        return min_distance_dependent_columns(G)
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# MDS reference family


def rs_code(field: FieldSpec, n: int, k: int) -> CodeMatrix:
    """Generator of the [n, k] Reed-Solomon code evaluating polynomials of
    degree < k at the first n field elements."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if n > field.q:
        raise ValueError(f"need n <= q = {field.q} distinct evaluation points")
    points = field.elements()[:n]
    rows = tuple(tuple(x ** i for x in points) for i in range(k))
    return CodeMatrix(field, rows, ROLE_GENERATOR)


def mds_distribution(n: int, k: int) -> "Distribution":
    """Stopping-set distribution of any MDS [n, k] code under its maximal
    parity-check matrix: nothing between the empty set and size n - k + 1,
    everything from there up."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    counts = [0] * (n + 1)
    counts[0] = 1
    for i in range(n - k + 1, n + 1):
        counts[i] = math.comb(n, i)
    return Distribution(tuple(counts))


def scale_columns(M: CodeMatrix, scalars: Sequence[FieldElement]) -> CodeMatrix:
    """Multiply column j by scalars[j]; scalars must be nonzero (a zero
    would change the code, not just its presentation)."""
    if len(scalars) != M.ncols:
        raise ValueError("one scalar per column required")
    for s in scalars:
        if s.spec != M.spec:
            raise FieldMismatchError("scalar outside the matrix field")
        if s.is_zero():
            raise ValueError("column scalars must be nonzero")
    ent = tuple(tuple(e * s for e, s in zip(row, scalars)) for row in M.entries)
    return CodeMatrix(M.spec, ent, M.role)


@dataclass(frozen=True)
class Distribution:
    """Stopping-set counts T_0..T_n; T_0 = 1 and T_i <= C(n, i)."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.counts or self.counts[0] != 1:
            raise ValueError("T_0 must be 1: the empty set is a stopping set")
        n = len(self.counts) - 1
        for i, t in enumerate(self.counts):
            if not 0 <= t <= math.comb(n, i):
                raise ValueError(f"T_{i} = {t} outside [0, C({n},{i})]")

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)
