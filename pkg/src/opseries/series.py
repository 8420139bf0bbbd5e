"""Truncated univariate power series with exponential coefficients.

A series of order ``N`` stores the exact rational coefficients
``b_0 .. b_N`` of ``sum b_m x^m / m!``.  The order is the highest index
guaranteed correct and is tracked explicitly through every operation:
differentiation drops it by one, binary operations take the minimum,
and nothing is ever silently zero-padded.

Products use the binomial convolution ``(fg)_m = sum_k C(m,k) f_k g_{m-k}``;
``exp``/``ln`` are computed by the triangular recurrences coming from the
defining ODEs ``g' = f'g`` and ``fg' = f'``.

Four compositional-inverse algorithms are provided for series with zero
constant term and invertible linear coefficient:

* :func:`classical_inverse` -- read ``b_n`` off the (n-1)-th coefficient
  of the n-th power of ``x/f``;
* :func:`operator_inverse` -- iterate ``s -> (1/f') * s'`` starting from
  ``1/f'`` and collect constant terms;
* :func:`log_form_inverse` -- iterate the same operator starting from
  ``e^x``, then take the log of the collected constant-term series;
* :func:`newton_inverse` -- triangular coefficient-by-coefficient solve
  of ``f(g(x)) = x`` (the independent cross-check).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .multipoly import Scalar, _join_signed


class EgfSeries:
    """Immutable truncated series ``sum_{m<=N} b_m x^m/m!`` over the rationals."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar | str]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series carries at least its constant term")
        self._coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> EgfSeries:
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> EgfSeries:
        return cls([1] + [0] * order)

    @classmethod
    def identity(cls, order: int) -> EgfSeries:
        """The series x, the unit for composition."""
        if order < 1:
            raise ValueError("the identity series needs order >= 1")
        return cls([0, 1] + [0] * (order - 1))

    @classmethod
    def exp_x(cls, order: int) -> EgfSeries:
        """e^x truncated at the given order (all coefficients 1)."""
        return cls([1] * (order + 1))

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, m: int) -> Fraction:
        if not 0 <= m <= self.order:
            raise IndexError(f"index {m} outside valid order {self.order}")
        return self._coeffs[m]

    def truncate(self, order: int) -> EgfSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        if order < 0:
            raise ValueError("order must be non-negative")
        return EgfSeries(self._coeffs[: order + 1])

    def agrees_with(self, other: EgfSeries, order: int | None = None) -> bool:
        """Coefficientwise equality up to ``order`` (default: the smaller order)."""
        upto = min(self.order, other.order)
        if order is not None:
            if order > upto:
                raise ValueError(f"order {order} exceeds shared valid order {upto}")
            upto = order
        return self._coeffs[: upto + 1] == other._coeffs[: upto + 1]

    def __add__(self, other: EgfSeries) -> EgfSeries:
        if not isinstance(other, EgfSeries):
            return NotImplemented
        upto = min(self.order, other.order)
        return EgfSeries(a + b for a, b in zip(self._coeffs, other._coeffs[: upto + 1]))

    def __sub__(self, other: EgfSeries) -> EgfSeries:
        if not isinstance(other, EgfSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> EgfSeries:
        return EgfSeries(-c for c in self._coeffs)

    def __mul__(self, other: EgfSeries | Scalar) -> EgfSeries:
        if isinstance(other, (int, Fraction)):
            return EgfSeries(c * other for c in self._coeffs)
        if not isinstance(other, EgfSeries):
            return NotImplemented
        upto = min(self.order, other.order)
        a, b = self._coeffs, other._coeffs
        return EgfSeries(
            sum(math.comb(m, k) * a[k] * b[m - k] for k in range(m + 1))
            for m in range(upto + 1)
        )

    def __rmul__(self, other: Scalar) -> EgfSeries:
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def derivative(self) -> EgfSeries:
        """Shift coefficients down one slot; costs one order of validity."""
        if self.order < 1:
            raise ValueError("cannot differentiate a series of order 0")
        return EgfSeries(self._coeffs[1:])

    def reciprocal(self) -> EgfSeries:
        """Multiplicative inverse, by the triangular convolution recurrence."""
        if self._coeffs[0] == 0:
            raise ValueError("reciprocal needs a nonzero constant term")
        inv0 = 1 / self._coeffs[0]
        out = [inv0]
        for m in range(1, self.order + 1):
            s = sum(math.comb(m, k) * self._coeffs[k] * out[m - k] for k in range(1, m + 1))
            out.append(-inv0 * s)
        return EgfSeries(out)

    def compose(self, inner: EgfSeries) -> EgfSeries:
        """Substitute ``inner`` (which must vanish at 0) into this series."""
        if not isinstance(inner, EgfSeries):
            raise TypeError("compose expects another series")
        if inner._coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        upto = min(self.order, inner.order)
        g = inner.truncate(upto)
        acc = EgfSeries.zero(upto)
        for k in range(upto, -1, -1):
            acc = acc * g
            ck = self._coeffs[k] / math.factorial(k)
            if ck:
                acc = EgfSeries((acc._coeffs[0] + ck,) + acc._coeffs[1:])
        return acc

    def exp(self) -> EgfSeries:
        """Exponential; requires zero constant term."""
        if self._coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        out = [Fraction(1)]
        for m in range(self.order):
            out.append(
                sum(math.comb(m, k) * self._coeffs[k + 1] * out[m - k] for k in range(m + 1))
            )
        return EgfSeries(out)

    def ln(self) -> EgfSeries:
        """Logarithm; requires constant term one."""
        if self._coeffs[0] != 1:
            raise ValueError("ln needs constant term one")
        out = [Fraction(0)]
        for m in range(self.order):
            s = self._coeffs[m + 1] - sum(
                math.comb(m, k) * self._coeffs[m - k] * out[k + 1] for k in range(m)
            )
            out.append(s)
        return EgfSeries(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EgfSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __str__(self) -> str:
        parts = []
        for m, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if m == 0:
                body = str(mag)
            elif m == 1:
                body = "x" if mag == 1 else f"{mag} x"
            else:
                power = f"x^{m}/{m}!"
                body = power if mag == 1 else f"{mag} {power}"
            parts.append((c < 0, body))
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"EgfSeries([{', '.join(str(c) for c in self._coeffs)}])"


class InvertibleSeries:
    """Series with b_0 = 0 and b_1 != 0: the ones invertible under composition."""

    __slots__ = ("_series",)

    def __init__(self, series: EgfSeries):
        if series.order < 1:
            raise ValueError("an invertible series needs order >= 1")
        if series[0] != 0:
            raise ValueError("constant term must be zero")
        if series[1] == 0:
            raise ValueError("a1 must be nonzero")
        self._series = series

    @property
    def series(self) -> EgfSeries:
        return self._series


def _as_invertible(f: EgfSeries | InvertibleSeries) -> EgfSeries:
    if isinstance(f, InvertibleSeries):
        return f.series
    return InvertibleSeries(f).series


def _require_order(f: EgfSeries, needed: int) -> None:
    if f.order < needed:
        raise ValueError(f"input series must be valid to order {needed}, has {f.order}")


def classical_inverse(f: EgfSeries | InvertibleSeries, order: int) -> EgfSeries:
    """Compositional inverse coefficients from powers of x/f.

    ``b_n`` is the (n-1)-th coefficient of ``(x/f)^n``.  The removable
    singularity in ``x/f`` is handled structurally: ``f/x`` comes from the
    coefficient shift ``(f/x)_m = a_{m+1}/(m+1)``, then one reciprocal.
    Needs ``f`` valid to ``order + 1``.
    """
    f = _as_invertible(f)
    if order < 1:
        raise ValueError("order must be >= 1")
    _require_order(f, order + 1)
    shifted = EgfSeries(f.coeffs[m + 1] / (m + 1) for m in range(order + 1))
    w = shifted.reciprocal()  # x/f, valid to `order`
    out = [Fraction(0)] * (order + 1)
    power = EgfSeries.one(order)
    for n in range(1, order + 1):
        power = power * w
        out[n] = power[n - 1]
    return EgfSeries(out)


def operator_iterate(
    f: EgfSeries | InvertibleSeries, start: EgfSeries, count: int
) -> EgfSeries:
    """Apply ``s -> (1/f') * s'`` to ``start`` the given number of times.

    Each application consumes one order of validity, so the result has
    order ``start.order - count`` (provided ``f`` itself is valid far
    enough for the 1/f' factor not to be the binding truncation).
    """
    f = _as_invertible(f)
    if count < 0:
        raise ValueError("iteration count must be non-negative")
    if count > start.order:
        raise ValueError(
            f"series order exhausted: {count} applications need start order >= {count}, "
            f"have {start.order}"
        )
    if count == 0:
        return start
    w = f.derivative().reciprocal()
    s = start
    for _ in range(count):
        s = w * s.derivative()
    return s


def operator_inverse(f: EgfSeries | InvertibleSeries, order: int) -> EgfSeries:
    """Inverse coefficients as constant terms of operator iterates of 1/f'.

    ``b_n`` is the constant term after ``n-1`` applications of
    ``(1/f') d/dx`` to ``1/f'``.  Needs ``f`` valid to ``order + 1``.
    """
    f = _as_invertible(f)
    if order < 1:
        raise ValueError("order must be >= 1")
    _require_order(f, order + 1)
    w = f.derivative().reciprocal()
    out = [Fraction(0)] * (order + 1)
    s = w
    out[1] = s[0]
    for n in range(2, order + 1):
        s = w * s.derivative()
        out[n] = s[0]
    return EgfSeries(out)


def log_form_terms(f: EgfSeries | InvertibleSeries, order: int) -> EgfSeries:
    """Constant terms of operator iterates of e^x, as a series.

    Coefficient ``m`` is the constant term of ``((1/f') d/dx)^m e^x``;
    coefficient 0 is always 1, so the result is a valid ``ln`` input.
    Needs ``f`` valid to ``order + 1``.
    """
    f = _as_invertible(f)
    if order < 0:
        raise ValueError("order must be non-negative")
    _require_order(f, order + 1)
    w = f.derivative().reciprocal()
    out = [Fraction(1)]
    s = EgfSeries.exp_x(order)
    for _ in range(order):
        s = w * s.derivative()
        out.append(s[0])
    return EgfSeries(out)


def log_form_inverse(f: EgfSeries | InvertibleSeries, order: int) -> EgfSeries:
    """Compositional inverse as the log of the operator-iterate series."""
    return log_form_terms(f, order).ln()


def newton_inverse(f: EgfSeries | InvertibleSeries, order: int) -> EgfSeries:
    """Solve ``f(g(x)) = x`` coefficient by coefficient.

    The unknown ``b_n`` enters the n-th coefficient of ``f(g)`` only
    through the linear term ``a_1 b_n``, so each step is one exact
    division.  Independent of the other three algorithms; needs ``f``
    valid to ``order``.
    """
    f = _as_invertible(f)
    if order < 1:
        raise ValueError("order must be >= 1")
    _require_order(f, order)
    a1 = f[1]
    out = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        g = EgfSeries(out[: n + 1])  # b_n still zero here
        value = f.truncate(n).compose(g)[n]
        target = Fraction(1) if n == 1 else Fraction(0)
        out[n] = (target - value) / a1
    return EgfSeries(out)


INVERSE_METHODS = {
    "classical": classical_inverse,
    "operator": operator_inverse,
    "log": log_form_inverse,
    "newton": newton_inverse,
}


def ogf_to_egf(coeffs: Sequence[Scalar | str]) -> list[Fraction]:
    """Rescale ordinary coefficients c_m to exponential ones b_m = m! c_m."""
    return [Fraction(c) * math.factorial(m) for m, c in enumerate(coeffs)]


def egf_to_ogf(coeffs: Sequence[Scalar | str]) -> list[Fraction]:
    """Rescale exponential coefficients b_m to ordinary ones c_m = b_m / m!."""
    return [Fraction(c) / math.factorial(m) for m, c in enumerate(coeffs)]


def to_json_dict(series: EgfSeries, convention: str = "egf") -> dict:
    """Serialize a series: rationals as exact \"p/q\" strings."""
    if convention == "egf":
        coeffs = list(series.coeffs)
    elif convention == "ogf":
        coeffs = egf_to_ogf(series.coeffs)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return {
        "convention": convention,
        "order": series.order,
        "coeffs": [str(c) for c in coeffs],
    }


def from_json_dict(data: dict) -> EgfSeries:
    """Parse the JSON series object, converting ordinary coefficients if needed."""
    try:
        convention = data["convention"]
        order = data["order"]
        raw = data["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"series object needs convention/order/coeffs: {exc}") from exc
    coeffs = [Fraction(c) for c in raw]
    if len(coeffs) != order + 1:
        raise ValueError(f"order {order} needs {order + 1} coefficients, got {len(coeffs)}")
    if convention == "ogf":
        coeffs = ogf_to_egf(coeffs)
    elif convention != "egf":
        raise ValueError(f"unknown convention {convention!r}")
    return EgfSeries(coeffs)
