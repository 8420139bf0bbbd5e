"""Differential operators with polynomial coefficients and their three products.

An operator is a finite sum of generators ``u * d^beta`` stored as a map
from the derivative multi-index ``beta`` to its polynomial coefficient
``u``.  Three bilinear products are defined on generators and extended
over sums:

* ``diamond`` -- genuine operator composition:
  ``u d^a <> v d^b = sum_{g <= a} (a choose g) u d^g(v) d^(a+b-g)``;
* ``circ`` -- the derivative part hits only the right coefficient:
  ``u d^a o v d^b = u d^a(v) d^b``;
* ``bullet`` -- coefficients multiply, derivative orders stack:
  ``u d^a . v d^b = u v d^(a+b)`` (commutative).

``diamond`` is grounded semantically by :meth:`DiffOp.apply`:
``(X <> Y).apply(p) == X.apply(Y.apply(p))`` for every polynomial ``p``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .multipoly import (
    MultiIndex,
    MultiPoly,
    Scalar,
    _join_signed,
    _monomial_str,
    index_add,
    index_binomial,
    sub_indices,
)


def _derivative_str(beta: MultiIndex) -> str:
    factors = []
    for i, e in enumerate(beta):
        if e == 1:
            factors.append(f"d{i + 1}")
        elif e > 1:
            factors.append(f"d{i + 1}^{e}")
    return "*".join(factors)


class DiffOp:
    """Immutable differential operator ``sum_beta u_beta d^beta``.

    Coefficients are :class:`MultiPoly` over the same variable count;
    zero coefficients are never stored, so ``==`` is canonical-map
    equality.  The zero operator is the empty sum.
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[MultiIndex, MultiPoly | Scalar] | None = None):
        if n < 1:
            raise ValueError(f"variable count must be positive, got {n}")
        clean: dict[MultiIndex, MultiPoly] = {}
        for beta, u in (terms or {}).items():
            beta = tuple(beta)
            if len(beta) != n or any(e < 0 or not isinstance(e, int) for e in beta):
                raise ValueError(f"bad derivative multi-index {beta} for {n} variables")
            if not isinstance(u, MultiPoly):
                u = MultiPoly.const(n, u)
            elif u.n != n:
                raise ValueError(f"coefficient in {u.n} variables inside operator with n={n}")
            if not u.is_zero():
                clean[beta] = u
        self._n = n
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def zero(cls, n: int) -> DiffOp:
        return cls(n)

    @classmethod
    def single(cls, coeff: MultiPoly, beta: MultiIndex) -> DiffOp:
        """The generator ``coeff * d^beta``."""
        return cls(coeff.n, {tuple(beta): coeff})

    @classmethod
    def vector_field(cls, coeffs: Sequence[MultiPoly]) -> DiffOp:
        """First-order operator ``sum_j u_j d_j`` from its coefficient list."""
        n = len(coeffs)
        if n < 1:
            raise ValueError("a vector field needs at least one coefficient")
        terms: dict[MultiIndex, MultiPoly] = {}
        for j, u in enumerate(coeffs):
            if u.n != n:
                raise ValueError(f"coefficient in {u.n} variables for a field in {n}")
            terms[tuple(1 if i == j else 0 for i in range(n))] = u
        return cls(n, terms)

    @property
    def n(self) -> int:
        return self._n

    def items(self) -> list[tuple[MultiIndex, MultiPoly]]:
        """Terms sorted by descending derivative order, then graded-lex."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def coefficient(self, beta: MultiIndex) -> MultiPoly:
        return self._terms.get(tuple(beta), MultiPoly.zero(self._n))

    def is_zero(self) -> bool:
        return not self._terms

    def orders(self) -> frozenset[int]:
        """Derivative orders |beta| present; empty for the zero operator."""
        return frozenset(sum(b) for b in self._terms)

    def is_first_order(self) -> bool:
        """True when every stored term has |beta| = 1 (vacuously so for zero)."""
        return all(sum(b) == 1 for b in self._terms)

    def _check_same_space(self, other: DiffOp) -> None:
        if self._n != other._n:
            raise ValueError(f"variable-count mismatch: {self._n} vs {other._n}")

    def __add__(self, other: DiffOp) -> DiffOp:
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check_same_space(other)
        out = dict(self._terms)
        for beta, u in other._terms.items():
            prev = out.get(beta)
            out[beta] = u if prev is None else prev + u
        return DiffOp(self._n, out)

    def __sub__(self, other: DiffOp) -> DiffOp:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> DiffOp:
        return DiffOp(self._n, {b: -u for b, u in self._terms.items()})

    def __mul__(self, scalar: Scalar) -> DiffOp:
        if isinstance(scalar, (int, Fraction)):
            return DiffOp(self._n, {b: u * scalar for b, u in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def diamond(self, other: DiffOp) -> DiffOp:
        """Operator composition (associative)."""
        self._check_same_space(other)
        acc: dict[MultiIndex, MultiPoly] = {}
        for alpha, u in self._terms.items():
            for beta, v in other._terms.items():
                for gamma in sub_indices(alpha):
                    dv = v.partial(gamma)
                    if dv.is_zero():
                        continue
                    w = index_binomial(alpha, gamma)
                    coeff = u * dv
                    if w != 1:
                        coeff = coeff * w
                    key = tuple(a + b - g for a, b, g in zip(alpha, beta, gamma))
                    prev = acc.get(key)
                    acc[key] = coeff if prev is None else prev + coeff
        return DiffOp(self._n, acc)

    def circ(self, other: DiffOp) -> DiffOp:
        """White product: the left derivative acts on the right coefficient only."""
        self._check_same_space(other)
        acc: dict[MultiIndex, MultiPoly] = {}
        for alpha, u in self._terms.items():
            for beta, v in other._terms.items():
                dv = v.partial(alpha)
                if dv.is_zero():
                    continue
                coeff = u * dv
                prev = acc.get(beta)
                acc[beta] = coeff if prev is None else prev + coeff
        return DiffOp(self._n, acc)

    def bullet(self, other: DiffOp) -> DiffOp:
        """Black product: coefficients multiply, derivative orders add (commutative)."""
        self._check_same_space(other)
        acc: dict[MultiIndex, MultiPoly] = {}
        for alpha, u in self._terms.items():
            for beta, v in other._terms.items():
                key = index_add(alpha, beta)
                coeff = u * v
                prev = acc.get(key)
                acc[key] = coeff if prev is None else prev + coeff
        return DiffOp(self._n, acc)

    def apply(self, p: MultiPoly) -> MultiPoly:
        """Act on a polynomial: ``sum_beta u_beta * d^beta(p)``."""
        if p.n != self._n:
            raise ValueError(f"variable-count mismatch: {self._n} vs {p.n}")
        out = MultiPoly.zero(self._n)
        for beta, u in self._terms.items():
            dp = p.partial(beta)
            if not dp.is_zero():
                out = out + u * dp
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        parts = []
        for beta, u in self.items():
            dpart = _derivative_str(beta)
            terms = u.items()
            if len(terms) == 1:
                alpha, c = terms[0]
                mono = _monomial_str(alpha)
                factors = []
                if abs(c) != 1 or (not mono and not dpart):
                    factors.append(str(abs(c)))
                if mono:
                    factors.append(mono)
                if dpart:
                    factors.append(dpart)
                parts.append((c < 0, "*".join(factors)))
            else:
                body = f"({u})*{dpart}" if dpart else f"({u})"
                parts.append((False, body))
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"DiffOp({self._n}, {self})"


def unit_op(n: int) -> DiffOp:
    """The operator ``1 * d^0``: two-sided identity for diamond, left identity for circ."""
    return DiffOp(n, {(0,) * n: MultiPoly.const(n, 1)})


def _check_op_list(ops: Sequence[DiffOp]) -> int:
    if not ops:
        raise ValueError("operator list must be non-empty")
    n = ops[0].n
    for k, op in enumerate(ops, start=1):
        if op.n != n:
            raise ValueError("all operators must share the same variable count")
        if not op.is_first_order():
            raise ValueError(f"operator {k} is not first order")
    return n


def _check_subset(indices: Iterable[int], m: int) -> list[int]:
    picked = sorted(set(indices))
    if not picked:
        raise ValueError("index subset must be non-empty")
    if picked[0] < 1 or picked[-1] > m:
        raise ValueError(f"indices must lie in 1..{m}, got {picked}")
    return picked


def diamond_chain(ops: Sequence[DiffOp], indices: Iterable[int]) -> DiffOp:
    """Compose the selected operators, largest index leftmost.

    For indices ``i_1 < ... < i_s`` this is ``L_{i_s} <> ... <> L_{i_1}``;
    a singleton just returns that operator.  Indices are 1-based.
    """
    _check_op_list(ops)
    picked = _check_subset(indices, len(ops))
    out = ops[picked[-1] - 1]
    for i in reversed(picked[:-1]):
        out = out.diamond(ops[i - 1])
    return out


def subset_operator(ops: Sequence[DiffOp], indices: Iterable[int]) -> DiffOp:
    """Chain the non-minimal selected operators, then circ onto the minimal one.

    For indices ``i_1 < ... < i_s``: ``(L_{i_s} <> ... <> L_{i_2}) o L_{i_1}``.
    A singleton reduces to the operator itself (empty chain = unit, and the
    unit is a left identity for circ).
    """
    n = _check_op_list(ops)
    picked = _check_subset(indices, len(ops))
    head, rest = picked[0], picked[1:]
    chain = diamond_chain(ops, rest) if rest else unit_op(n)
    return chain.circ(ops[head - 1])


def partition_operator(ops: Sequence[DiffOp], partition) -> DiffOp:
    """Bullet product of :func:`subset_operator` over the partition's blocks.

    ``partition`` is either a ``SetPartition`` or any iterable of blocks
    (iterables of 1-based indices) that partition ``1..len(ops)``.
    Block order does not matter since the bullet product is commutative.
    """
    n = _check_op_list(ops)
    m = len(ops)
    blocks = [tuple(sorted(b)) for b in getattr(partition, "blocks", partition)]
    seen: set[int] = set()
    for block in blocks:
        if not block:
            raise ValueError("empty block in partition")
        if seen & set(block):
            raise ValueError("blocks are not disjoint")
        seen |= set(block)
    if seen != set(range(1, m + 1)):
        raise ValueError(f"blocks do not partition 1..{m}")
    out = unit_op(n)
    for block in blocks:
        out = out.bullet(subset_operator(ops, block))
    return out


def power_diamond(op: DiffOp, m: int) -> DiffOp:
    """m-fold composition power; the empty product is the unit operator."""
    if m < 0:
        raise ValueError(f"power must be non-negative, got {m}")
    out = unit_op(op.n)
    for _ in range(m):
        out = out.diamond(op)
    return out
