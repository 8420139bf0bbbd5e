"""Set partitions, integer partitions, Bell polynomials and Stirling numbers.

Set partitions of ``{1..m}`` are enumerated through restricted-growth
strings, which is duplicate-free by construction and yields blocks
already sorted by their minimum element.  Integer partitions are kept in
multiplicity form ``(l_1, ..., l_m)`` with ``sum i*l_i = m``, the shape
in which they index Bell-polynomial terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .diffop import DiffOp, unit_op
from .multipoly import _join_signed

MAX_SET_PARTITION_SIZE = 12  # B(12) = 4,213,597 is the practical exhaustive bound


@dataclass(frozen=True)
class SetPartition:
    """Partition of ``{1..m}`` into disjoint non-empty blocks.

    Canonical form: elements ascending within a block, blocks sorted by
    minimum element.
    """

    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for block in blocks:
            if not block:
                raise ValueError("empty block")
            if seen & set(block):
                raise ValueError("blocks are not disjoint")
            seen |= set(block)
        if seen != set(range(1, self.m + 1)):
            raise ValueError(f"blocks do not cover 1..{self.m}")

    def signature(self) -> IntPartition:
        """Block-size signature as an integer partition in multiplicity form."""
        mults = [0] * self.m
        for block in self.blocks:
            mults[len(block) - 1] += 1
        return IntPartition(self.m, tuple(mults))

    def __str__(self) -> str:
        sep = "" if self.m <= 9 else ","
        return "-".join(sep.join(str(e) for e in block) for block in self.blocks)


@dataclass(frozen=True)
class IntPartition:
    """Integer partition of ``m`` in multiplicity form: l_i parts of size i."""

    m: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        mults = tuple(self.multiplicities)
        object.__setattr__(self, "multiplicities", mults)
        if len(mults) != self.m or any(l < 0 for l in mults):
            raise ValueError(f"need {self.m} non-negative multiplicities, got {mults}")
        if sum((i + 1) * l for i, l in enumerate(mults)) != self.m:
            raise ValueError(f"multiplicities {mults} do not sum to {self.m}")

    @property
    def length(self) -> int:
        """Number of parts."""
        return sum(self.multiplicities)

    def __str__(self) -> str:
        return " ".join(
            f"{i + 1}^{l}" for i, l in enumerate(self.multiplicities) if l > 0
        )


def set_partitions(m: int) -> list[SetPartition]:
    """All partitions of ``{1..m}``, duplicate-free, in restricted-growth order."""
    if m < 1:
        raise ValueError(f"ground set size must be positive, got {m}")
    if m > MAX_SET_PARTITION_SIZE:
        raise ValueError(f"set partitions capped at m <= {MAX_SET_PARTITION_SIZE}, got {m}")
    out: list[SetPartition] = []
    labels = [0] * m

    def grow(i: int, n_labels: int) -> None:
        if i == m:
            blocks: list[list[int]] = [[] for _ in range(n_labels)]
            for element, label in enumerate(labels, start=1):
                blocks[label].append(element)
            out.append(SetPartition(m, tuple(tuple(b) for b in blocks)))
            return
        for v in range(n_labels + 1):
            labels[i] = v
            grow(i + 1, n_labels + 1 if v == n_labels else n_labels)

    grow(0, 0)
    return out


def integer_partitions(m: int) -> list[IntPartition]:
    """All integer partitions of ``m`` in multiplicity form."""
    if m < 1:
        raise ValueError(f"partitioned integer must be positive, got {m}")
    out: list[IntPartition] = []
    mults = [0] * m

    def grow(remaining: int, max_part: int) -> None:
        if remaining == 0:
            out.append(IntPartition(m, tuple(mults)))
            return
        for part in range(min(remaining, max_part), 0, -1):
            mults[part - 1] += 1
            grow(remaining - part, part)
            mults[part - 1] -= 1

    grow(m, m)
    return out


def partition_class_count(mults: Sequence[int] | IntPartition) -> int:
    """Number of set partitions of ``{1..m}`` with the given block-size signature.

    For l_i blocks of size i this is ``m! / (prod l_i! * prod (i!)^l_i)``,
    which always divides evenly.
    """
    if isinstance(mults, IntPartition):
        mults = mults.multiplicities
    mults = tuple(mults)
    if any(l < 0 for l in mults):
        raise ValueError(f"multiplicities must be non-negative, got {mults}")
    m = sum((i + 1) * l for i, l in enumerate(mults))
    denom = 1
    for i, l in enumerate(mults, start=1):
        denom *= math.factorial(l) * math.factorial(i) ** l
    return math.factorial(m) // denom


@dataclass
class BellPoly:
    """Complete Bell polynomial: a map from integer partitions to counts.

    The coefficient of ``x_1^{l_1} ... x_m^{l_m}`` counts the set
    partitions with that block-size signature; the coefficients sum to
    the Bell number B(m).
    """

    m: int
    terms: dict[IntPartition, int] = field(default_factory=dict)

    def items(self) -> list[tuple[IntPartition, int]]:
        """Terms sorted by descending part count, then multiplicity vector."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0].length, kv[0].multiplicities),
            reverse=True,
        )

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def __str__(self) -> str:
        parts = []
        for part, count in self.items():
            mono = "*".join(
                f"x{i + 1}" if l == 1 else f"x{i + 1}^{l}"
                for i, l in enumerate(part.multiplicities)
                if l > 0
            )
            parts.append((False, mono if count == 1 else f"{count}*{mono}"))
        return _join_signed(parts)


def bell_polynomial(m: int) -> BellPoly:
    """The degree-m complete Bell polynomial with exact integer coefficients."""
    if m < 1:
        raise ValueError(f"degree must be positive, got {m}")
    return BellPoly(m, {p: partition_class_count(p) for p in integer_partitions(m)})


def bell_eval_bullet(m: int, op: DiffOp) -> DiffOp:
    """Bell polynomial evaluated on a first-order operator under the bullet product.

    Substitutes ``x_i -> (diamond power of op, i-1 times) circ op`` and takes
    every monomial product with ``bullet``.  ``m = 0`` gives the unit
    operator (empty product).
    """
    if m < 0:
        raise ValueError(f"degree must be non-negative, got {m}")
    if not op.is_first_order():
        raise ValueError("operator must be first order")
    n = op.n
    if m == 0:
        return unit_op(n)
    powers = [unit_op(n)]
    for _ in range(m - 1):
        powers.append(powers[-1].diamond(op))
    generators = [p.circ(op) for p in powers]  # generators[i-1] = op^{i-1} o op
    total = DiffOp.zero(n)
    for part, count in bell_polynomial(m).terms.items():
        factor = unit_op(n)
        for size, mult in enumerate(part.multiplicities, start=1):
            for _ in range(mult):
                factor = factor.bullet(generators[size - 1])
        total = total + count * factor
    return total


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind via the standard recurrence.

    ``S(m,k) = k*S(m-1,k) + S(m-1,k-1)`` with ``S(0,0) = 1``; out-of-range
    arguments give 0.
    """
    if m < 0 or k < 0 or k > m:
        return 0
    row = [1]  # S(0, 0..0)
    for i in range(1, m + 1):
        new = [0] * (min(i, k) + 1)
        for j in range(1, len(new)):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row[k] if k < len(row) else 0
