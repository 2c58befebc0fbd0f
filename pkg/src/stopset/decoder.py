"""Iterative peeling decoder for erasures.

Each pass streams the parity-check rows; any row meeting the erased set in
exactly one position solves that position.  The decoder stalls exactly on
the maximal stopping subset of the erased set when run over the full dual
codebook, which is what ties decoding behaviour to stopping sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .agcode import EllipticCodeSpec, generator_matrix, is_stopping_set_oracle
from .errors import IntegrityError
from .ffield import FieldElement


@dataclass(frozen=True)
class ErasureInstance:
    codeword: tuple[FieldElement, ...]
    erased: frozenset[int]  # 1-based positions

    def __post_init__(self) -> None:
        for i in self.erased:
            if not 1 <= i <= len(self.codeword):
                raise ValueError(f"erased position {i} outside [1, {len(self.codeword)}]")


def make_instance(spec: EllipticCodeSpec, codeword: Sequence[FieldElement], erased: Iterable[int]) -> ErasureInstance:
    """Validate membership: the word must be orthogonal to every row of the
    evaluation matrix, i.e. lie in the residue code."""
    word = tuple(codeword)
    if len(word) != spec.n:
        raise ValueError(f"codeword length {len(word)} != n = {spec.n}")
    f = spec.field
    for row in generator_matrix(spec).entries:
        syndrome = 0
        for h, c in zip(row, word):
            syndrome = f.add_val(syndrome, f.mul_val(h.value, c.value))
        if syndrome:
            raise IntegrityError("word is not in the code (nonzero syndrome)")
    return ErasureInstance(word, frozenset(erased))


def _each_pass(rows) -> Iterable[Sequence[FieldElement]]:
    return rows() if callable(rows) else rows


def peel(
    rows,
    instance: ErasureInstance,
    max_passes: int | None = None,
) -> tuple[list[FieldElement | None], frozenset[int]]:
    """Run peeling passes until stable.

    rows is a sequence of parity-check rows, or a zero-argument callable
    returning a fresh stream per pass.  Returns (recovered vector, residual
    erased positions); unrecovered slots hold None.  A fully known row with
    nonzero syndrome raises IntegrityError: the input was not a codeword.
    """
    n = len(instance.codeword)
    if max_passes is None:
        max_passes = n
    f = instance.codeword[0].spec
    values: list[int | None] = [
        None if (j + 1) in instance.erased else instance.codeword[j].value for j in range(n)
    ]
    erased = {j - 1 for j in instance.erased}
    for _ in range(max_passes):
        progressed = False
        for row in _each_pass(rows):
            unknown = [j for j in erased if row[j].value]
            if len(unknown) > 1:
                continue
            syndrome = 0
            for j, h in enumerate(row):
                if h.value and values[j] is not None:
                    syndrome = f.add_val(syndrome, f.mul_val(h.value, values[j]))
            if not unknown:
                if syndrome:
                    raise IntegrityError("known positions violate a parity check")
                continue
            j = unknown[0]
            values[j] = f.mul_val(f.neg_val(syndrome), f.inv_val(row[j].value))
            erased.discard(j)
            progressed = True
        if not progressed:
            break
    recovered: list[FieldElement | None] = [
        None if v is None else FieldElement(f, v) for v in values
    ]
    return recovered, frozenset(j + 1 for j in erased)


def residual_is_stopping(rows, residual: Iterable[int]) -> bool:
    """The stall certificate: the residual must be a stopping set of the
    rows the decoder ran over."""
    return is_stopping_set_oracle(_each_pass(rows), residual)
