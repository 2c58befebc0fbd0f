"""Group-theoretic classification of stopping sets for codes whose
evaluation set lies on an elliptic curve.

For an evaluation set D = (P_1, ..., P_n) and pole bound m, a subset A of
positions (with respect to the maximal parity-check matrix) is stopping
exactly by the following size casework:

  |A| <= m - 1 (nonempty)  never stopping
  |A| =  m                 stopping iff the points of A sum to infinity
  |A| =  m + 1             stopping iff no interior point zeroes the rest:
                           for every i in A, sum over A minus {i} != O
  |A| >= m + 2             always stopping

and the empty set is a stopping set by definition.  Everything here is
checked against the matrix-level oracle elsewhere; this module is the
group-law route.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import agcode
from .agcode import Distribution, EllipticCodeSpec, hstar_support_masks, subset_mask
from .curve import INFINITY, EllipticCurve, GroupStructure, Point, _add_unchecked, group_structure, point_order, rational_points
from .errors import IntegrityError, SizeLimitError
from .groupcount import AbelianGroup, count_S_m, subset_sum_table

DEFAULT_ENUM_MAX_N = 24


class Verdict(enum.Enum):
    NOT_STOPPING_BY_SIZE = "NotStopping-BySize"
    STOPPING_BY_SIZE = "Stopping-BySize"
    STOPPING_SUM_ZERO = "Stopping-SumZero"
    NOT_STOPPING_SUM_NONZERO = "NotStopping-SumNonzero"
    STOPPING_NO_INTERIOR_ZERO = "Stopping-NoInteriorZero"
    NOT_STOPPING_INTERIOR_ZERO = "NotStopping-InteriorZero"


_STOPPING = {
    Verdict.STOPPING_BY_SIZE,
    Verdict.STOPPING_SUM_ZERO,
    Verdict.STOPPING_NO_INTERIOR_ZERO,
}


@dataclass(frozen=True)
class StoppingStatus:
    verdict: Verdict
    witness: int | None = None  # the interior index i with sum(A \ {i}) = O

    def __post_init__(self) -> None:
        if (self.witness is not None) != (self.verdict == Verdict.NOT_STOPPING_INTERIOR_ZERO):
            raise ValueError("witness accompanies exactly the interior-zero verdict")

    @property
    def is_stopping(self) -> bool:
        return self.verdict in _STOPPING


@lru_cache(maxsize=None)
def _sum_context(spec: EllipticCodeSpec):
    """Per-spec fast addition context: every rational point gets an index,
    addition becomes a table lookup, D maps to point indices."""
    pts = rational_points(spec.curve)
    index = {P: i for i, P in enumerate(pts)}  # infinity gets index 0
    table = tuple(
        tuple(index[_add_unchecked(spec.curve, P, Q)] for Q in pts) for P in pts
    )
    d_idx = tuple(index[P] for P in spec.D)
    return d_idx, table


def _subset_sum_index(spec: EllipticCodeSpec, A: Sequence[int]) -> int:
    d_idx, table = _sum_context(spec)
    acc = 0  # index of infinity
    for i in A:
        acc = table[acc][d_idx[i - 1]]
    return acc


def _check_indices(spec: EllipticCodeSpec, A: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(A)))
    if out and (out[0] < 1 or out[-1] > spec.n):
        raise ValueError(f"indices must lie in [1, {spec.n}]")
    return out


def classify(spec: EllipticCodeSpec, A: Iterable[int]) -> StoppingStatus:
    """Size casework on the subset A of positions (1-based).

    The empty set is stopping by definition and reports Stopping-BySize.
    """
    A = _check_indices(spec, A)
    m = spec.m
    if len(A) == 0:
        return StoppingStatus(Verdict.STOPPING_BY_SIZE)
    if len(A) <= m - 1:
        return StoppingStatus(Verdict.NOT_STOPPING_BY_SIZE)
    if len(A) >= m + 2:
        return StoppingStatus(Verdict.STOPPING_BY_SIZE)
    d_idx, _ = _sum_context(spec)
    total = _subset_sum_index(spec, A)
    if len(A) == m:
        if total == 0:
            return StoppingStatus(Verdict.STOPPING_SUM_ZERO)
        return StoppingStatus(Verdict.NOT_STOPPING_SUM_NONZERO)
    # size m + 1: sum(A \ {i}) = O exactly when P_i equals the full sum
    for i in A:
        if d_idx[i - 1] == total:
            return StoppingStatus(Verdict.NOT_STOPPING_INTERIOR_ZERO, witness=i)
    return StoppingStatus(Verdict.STOPPING_NO_INTERIOR_ZERO)


def enumerate_S_m(spec: EllipticCodeSpec, max_n: int = DEFAULT_ENUM_MAX_N) -> list[tuple[int, ...]]:
    """All size-m stopping sets, in lexicographic order."""
    if spec.n > max_n:
        raise SizeLimitError(f"n = {spec.n} exceeds the enumeration bound {max_n}")
    d_idx, table = _sum_context(spec)
    out = []
    for A in combinations(range(1, spec.n + 1), spec.m):
        acc = 0
        for i in A:
            acc = table[acc][d_idx[i - 1]]
        if acc == 0:
            out.append(A)
    return out


def build_S_m_plus(spec: EllipticCodeSpec, S_m: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """S+(m): every size-m stopping set extended by one extra position.

    The union is provably disjoint, so the count must equal
    (n - m) * #S(m); any collision is reported as an integrity failure.
    """
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for A in S_m:
        base = set(A)
        for i in range(1, spec.n + 1):
            if i in base:
                continue
            ext = tuple(sorted(base | {i}))
            if ext in seen:
                raise IntegrityError(f"extension {ext} arises from both {seen[ext]} and {A}")
            seen[ext] = A
    if len(seen) != (spec.n - spec.m) * len(S_m):
        raise IntegrityError("extension count disagrees with (n - m) * #S(m)")
    return sorted(seen)


def enumerate_S_m1(spec: EllipticCodeSpec, max_n: int = DEFAULT_ENUM_MAX_N) -> list[tuple[int, ...]]:
    """All size-(m+1) stopping sets: the complement of S+(m) among all
    (m+1)-subsets."""
    if spec.n > max_n:
        raise SizeLimitError(f"n = {spec.n} exceeds the enumeration bound {max_n}")
    blocked = set(build_S_m_plus(spec, enumerate_S_m(spec, max_n)))
    return [A for A in combinations(range(1, spec.n + 1), spec.m + 1) if A not in blocked]


def enumerate_S_m1_direct(spec: EllipticCodeSpec, max_n: int = DEFAULT_ENUM_MAX_N) -> list[tuple[int, ...]]:
    """Size-(m+1) stopping sets by filtering every subset through classify;
    the slow cross-check for enumerate_S_m1."""
    if spec.n > max_n:
        raise SizeLimitError(f"n = {spec.n} exceeds the enumeration bound {max_n}")
    return [
        A
        for A in combinations(range(1, spec.n + 1), spec.m + 1)
        if classify(spec, A).is_stopping
    ]


def recover_S_m(spec: EllipticCodeSpec, S_plus: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Invert the extension map: each member I of S+(m) sums to one of its
    own points P_j, and dropping that j returns the size-m stopping set."""
    d_idx, _ = _sum_context(spec)
    out = set()
    for I in S_plus:
        total = _subset_sum_index(spec, I)
        j = next((i for i in I if d_idx[i - 1] == total), None)
        if j is None:
            raise IntegrityError(f"{I} does not sum to any of its own points")
        out.add(tuple(i for i in I if i != j))
    return sorted(out)


def count_S_m_of_spec(spec: EllipticCodeSpec, enum_threshold: int = 10 ** 6) -> int:
    """#S(m) for the spec's own evaluation set: direct enumeration when
    C(n, m) is small, else a subset-sum DP over the points' coordinates in
    the curve group."""
    if math.comb(spec.n, spec.m) <= enum_threshold and spec.n <= DEFAULT_ENUM_MAX_N:
        return len(enumerate_S_m(spec))
    gs = group_structure(spec.curve)
    G = AbelianGroup.from_cyclic_factors((gs.m1, gs.m2))
    coords = []
    for P in spec.D:
        pair = gs.coordinate_map[P]
        coords.append(G.element(c for c, d in zip(pair, (gs.m1, gs.m2)) if d != 1))
    table = subset_sum_table(coords)
    return table[spec.m].get(G.identity().coords, 0)


def stopping_distance(spec: EllipticCodeSpec) -> int:
    """m when a size-m stopping set exists, else m + 1."""
    return spec.m if count_S_m_of_spec(spec) > 0 else spec.m + 1


def distribution(spec: EllipticCodeSpec, source: str = "enumerate") -> Distribution:
    """The full stopping-set distribution T_0..T_n.

    Only #S(m) needs real work: T_(m+1) follows from the disjoint-extension
    identity, smaller sizes are forced, larger sizes are all subsets.
    source='formula' demands that D be a subgroup minus the identity and
    counts via the Moebius formula instead of the curve.
    """
    n, m = spec.n, spec.m
    if source == "enumerate":
        s_m = count_S_m_of_spec(spec)
    elif source == "formula":
        G = is_subgroup_minus_O(spec.curve, spec.D)
        if G is None:
            raise ValueError("formula source needs D = (subgroup minus identity)")
        s_m = count_S_m(G, m)
    else:
        raise ValueError(f"unknown source {source!r}")
    counts = [0] * (n + 1)
    counts[0] = 1
    counts[m] = s_m
    counts[m + 1] = math.comb(n, m + 1) - (n - m) * s_m
    for i in range(m + 2, n + 1):
        counts[i] = math.comb(n, i)
    return Distribution(tuple(counts))


def is_subgroup_minus_O(curve: EllipticCurve, D: Sequence[Point]) -> AbelianGroup | None:
    """If D together with infinity is closed under addition, return that
    subgroup's invariant factors, else None."""
    pts = set(D)
    if INFINITY in pts:
        return None
    full = pts | {INFINITY}
    for P in pts:
        for Q in pts:
            if _add_unchecked(curve, P, Q) not in full:
                return None
    h = len(full)
    exponent = 1
    for P in pts:
        exponent = math.lcm(exponent, point_order(curve, P))
    if h % exponent:
        raise IntegrityError("subgroup exponent does not divide its order")
    m1 = h // exponent
    if exponent % m1:
        raise IntegrityError("subgroup is not of rank <= 2")
    return AbelianGroup.from_cyclic_factors((m1, exponent))


# ---------------------------------------------------------------------------
# the two routes side by side


def sample_subsets(n: int, size: int, cap: int, rng: random.Random) -> list[tuple[int, ...]]:
    """All size-subsets of [1..n], or `cap` distinct ones sampled when the
    census is too large."""
    total = math.comb(n, size)
    if total <= cap:
        return list(combinations(range(1, n + 1), size))
    out = set()
    while len(out) < cap:
        out.add(tuple(sorted(rng.sample(range(1, n + 1), size))))
    return sorted(out)


def oracle_agreement_check(
    spec: EllipticCodeSpec,
    sizes: Sequence[int] | None = None,
    sample_cap: int = 5000,
    seed: int = 0,
    max_rows: int | None = None,
) -> list[dict]:
    """Compare classify against the parity-check oracle on subsets of the
    given sizes (default m-1..m+2); returns one record per disagreement."""
    masks = hstar_support_masks(spec, max_rows)
    if sizes is None:
        sizes = [s for s in range(spec.m - 1, spec.m + 3) if 0 <= s <= spec.n]
    rng = random.Random(seed)
    mismatches = []
    for size in sizes:
        for A in sample_subsets(spec.n, size, sample_cap, rng):
            by_rule = classify(spec, A).is_stopping
            by_matrix = agcode.is_stopping_set_masks(masks, subset_mask(A))
            if by_rule != by_matrix:
                mismatches.append(
                    {"subset": list(A), "classify": by_rule, "oracle": by_matrix}
                )
    return mismatches


@dataclass
class StoppingReport:
    spec: EllipticCodeSpec
    group: GroupStructure
    S_m: list[tuple[int, ...]] | None
    S_m_count: int
    distribution: Distribution
    stopping_distance: int
    oracle_agreement: bool | None

    def __post_init__(self) -> None:
        n, m = self.spec.n, self.spec.m
        expect = math.comb(n, m + 1) - (n - m) * self.S_m_count
        if self.distribution[m + 1] != expect:
            raise IntegrityError("T_(m+1) breaks the disjoint-extension identity")
        if self.stopping_distance not in (m, m + 1):
            raise IntegrityError("stopping distance must be m or m + 1")


def build_report(
    spec: EllipticCodeSpec,
    include_sets: bool = True,
    set_limit: int = 10 ** 4,
    oracle_check: bool | None = None,
    sample_cap: int = 2000,
    seed: int = 0,
) -> StoppingReport:
    """Assemble the census: distribution, #S(m), the sets themselves when
    small, and (when the dual codebook is streamable) the oracle flag."""
    dist = distribution(spec)
    s_m_count = dist[spec.m]
    sets = None
    if include_sets and s_m_count <= set_limit and spec.n <= DEFAULT_ENUM_MAX_N:
        sets = enumerate_S_m(spec)
    if oracle_check is None:
        oracle_check = spec.field.q ** spec.m <= agcode.row_limit(None)
    agreement = None
    if oracle_check:
        agreement = not oracle_agreement_check(spec, sample_cap=sample_cap, seed=seed)
    return StoppingReport(
        spec=spec,
        group=group_structure(spec.curve),
        S_m=sets,
        S_m_count=s_m_count,
        distribution=dist,
        stopping_distance=spec.m if s_m_count else spec.m + 1,
        oracle_agreement=agreement,
    )
