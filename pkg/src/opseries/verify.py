"""Executable verification of the package's algebraic identities.

Every checker renders both sides of an identity in canonical form and
reports pass/fail as literal string equality of the two renderings, so a
passing report certifies structural equality, not sampled agreement.
Random instances are drawn from seeded generators; a report carries its
seed and sizes, which is enough to regenerate the instance exactly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .combinat import bell_eval_bullet, set_partitions, stirling2
from .diffop import DiffOp, power_diamond, unit_op
from .multipoly import MultiIndex, MultiPoly
from .series import (
    EgfSeries,
    InvertibleSeries,
    classical_inverse,
    log_form_inverse,
    newton_inverse,
    operator_inverse,
)

DEFAULT_POOL = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
)
# leading coefficients for invertible series: nonzero by construction
LEAD_POOL = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2))

STIRLING_POWER_CAP = 10

SUITES = ("prop1", "corollary", "compos", "bellpower", "expid", "stirling", "inversion")


@dataclass(frozen=True)
class RandomSpec:
    """Deterministic recipe for one random instance."""

    seed: int
    n: int = 2
    max_degree: int = 2
    pool: tuple[Fraction, ...] = DEFAULT_POOL
    size: int = 3  # m or N, depending on the suite


@dataclass
class VerifyReport:
    """One checked identity: rendered sides, verdict, provenance."""

    theorem: str
    description: str
    left: str
    right: str
    passed: bool
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        # elapsed is intentionally left out: JSON output must be
        # byte-identical across runs with the same flags and seed
        return {
            "theorem": self.theorem,
            "description": self.description,
            "left": self.left,
            "right": self.right,
            "passed": self.passed,
        }


def _report(theorem: str, description: str, left, right, started: float) -> VerifyReport:
    ls, rs = str(left), str(right)
    return VerifyReport(theorem, description, ls, rs, ls == rs, time.perf_counter() - started)


def _trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def _indices_up_to(n: int, bound: int) -> list[MultiIndex]:
    return [t for t in product(range(bound + 1), repeat=n) if sum(t) <= bound]


def _poly_from_rng(rng: random.Random, n, max_degree, pool) -> MultiPoly:
    monomials = _indices_up_to(n, max_degree)
    chosen = rng.sample(monomials, rng.randint(1, min(3, len(monomials))))
    return MultiPoly(n, {alpha: rng.choice(pool) for alpha in chosen})


def _vector_field_from_rng(rng: random.Random, n, max_degree, pool) -> DiffOp:
    return DiffOp.vector_field([_poly_from_rng(rng, n, max_degree, pool) for _ in range(n)])


def _diffop_from_rng(rng: random.Random, n, max_degree, pool, max_order=2) -> DiffOp:
    betas = _indices_up_to(n, max_order)
    chosen = rng.sample(betas, rng.randint(1, 2))
    return DiffOp(n, {beta: _poly_from_rng(rng, n, max_degree, pool) for beta in chosen})


def random_vector_field(spec: RandomSpec) -> DiffOp:
    """First-order operator with random bounded-degree coefficients, seed-determined."""
    rng = random.Random(spec.seed)
    return _vector_field_from_rng(rng, spec.n, spec.max_degree, spec.pool)


def random_diffop(spec: RandomSpec, max_order: int = 2) -> DiffOp:
    """Operator with random terms of derivative order up to ``max_order``."""
    rng = random.Random(spec.seed)
    return _diffop_from_rng(rng, spec.n, spec.max_degree, spec.pool, max_order)


def random_op_list(spec: RandomSpec, m: int) -> list[DiffOp]:
    """m first-order operators drawn from one seeded stream."""
    rng = random.Random(spec.seed)
    return [_vector_field_from_rng(rng, spec.n, spec.max_degree, spec.pool) for _ in range(m)]


def random_invertible_series(spec: RandomSpec, order: int) -> EgfSeries:
    """Invertible series of the given order with pool coefficients."""
    rng = random.Random(spec.seed)
    coeffs = [Fraction(0), rng.choice(LEAD_POOL)]
    coeffs += [rng.choice(spec.pool) for _ in range(order - 1)]
    return EgfSeries(coeffs)


def _associator(x: DiffOp, y: DiffOp, z: DiffOp) -> DiffOp:
    return x.circ(y.circ(z)) - x.circ(y).circ(z)


def verify_product_identities(spec: RandomSpec, trials: int) -> list[VerifyReport]:
    """The five product identities on fresh random operators per trial.

    Composition associativity and bullet associativity/commutativity use
    operators of mixed derivative order; the associator identity, the
    Leibniz rule and associator symmetry take first-order operators where
    required.
    """
    reports: list[VerifyReport] = []
    for trial in range(trials):
        rng = random.Random(_trial_seed(spec.seed, trial))
        a = _diffop_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        b = _diffop_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        c = _diffop_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        u = _vector_field_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        v = _vector_field_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        desc = f"seed={spec.seed} trial={trial} n={spec.n} degree<={spec.max_degree}"

        started = time.perf_counter()
        lhs = a.diamond(b.diamond(c))
        rhs = a.diamond(b).diamond(c)
        reports.append(_report("prop1.diamond_assoc", desc, lhs, rhs, started))

        started = time.perf_counter()
        lhs = a.bullet(b.bullet(c))
        rhs = a.bullet(b).bullet(c)
        reports.append(_report("prop1.bullet_assoc", desc, lhs, rhs, started))

        started = time.perf_counter()
        reports.append(_report("prop1.bullet_comm", desc, a.bullet(b), b.bullet(a), started))

        started = time.perf_counter()
        lhs = _associator(u, b, c)
        rhs = u.bullet(b).circ(c)
        reports.append(_report("prop1.associator", desc, lhs, rhs, started))

        started = time.perf_counter()
        lhs = u.circ(b.bullet(c))
        rhs = u.circ(b).bullet(c) + b.bullet(u.circ(c))
        reports.append(_report("prop1.leibniz", desc, lhs, rhs, started))

        started = time.perf_counter()
        lhs = _associator(u, v, c)
        rhs = _associator(v, u, c)
        reports.append(_report("prop1.associator_symmetry", desc, lhs, rhs, started))
    return reports


def verify_composition_split(spec: RandomSpec, trials: int) -> list[VerifyReport]:
    """First-order corollaries: X o (Y o Z) = (X <> Y) o Z and X <> Y = X o Y + X . Y."""
    reports: list[VerifyReport] = []
    for trial in range(trials):
        rng = random.Random(_trial_seed(spec.seed, trial))
        u = _vector_field_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        b = _diffop_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        c = _diffop_from_rng(rng, spec.n, spec.max_degree, spec.pool)
        desc = f"seed={spec.seed} trial={trial} n={spec.n} degree<={spec.max_degree}"

        started = time.perf_counter()
        lhs = u.circ(b.circ(c))
        rhs = u.diamond(b).circ(c)
        reports.append(_report("corollary.compose_shift", desc, lhs, rhs, started))

        started = time.perf_counter()
        lhs = u.diamond(b)
        rhs = u.circ(b) + u.bullet(b)
        reports.append(_report("corollary.product_split", desc, lhs, rhs, started))
    return reports


def verify_partition_expansion(ops: Sequence[DiffOp], description: str = "") -> VerifyReport:
    """Iterated composition of first-order operators vs. its set-partition sum.

    The left side is ``L_m <> ... <> L_1``; the right side sums, over every
    partition of ``{1..m}``, the bullet product of per-block operators
    ``(chain of non-minimal elements) o (minimal element)``.  Block
    operators are assembled once per subset (they depend only on the
    subset), which keeps the sum near-linear in the partition count.
    """
    started = time.perf_counter()
    ops = list(ops)
    m = len(ops)
    if m < 1:
        raise ValueError("need at least one operator")
    n = ops[0].n
    for k, op in enumerate(ops, start=1):
        if op.n != n:
            raise ValueError("all operators must share the same variable count")
        if not op.is_first_order():
            raise ValueError(f"operator {k} is not first order")

    lhs = ops[m - 1]
    for i in range(m - 1, 0, -1):
        lhs = lhs.diamond(ops[i - 1])

    # chains[S] = L_{max S} <> ... <> L_{min S}; peel the minimum each step
    chains: dict[frozenset, DiffOp] = {frozenset(): unit_op(n)}
    block_ops: dict[frozenset, DiffOp] = {}
    for size in range(1, m + 1):
        for subset in combinations(range(1, m + 1), size):
            key = frozenset(subset)
            head = subset[0]  # combinations are sorted, so this is min
            rest = key - {head}
            chains[key] = chains[rest].diamond(ops[head - 1])
            block_ops[key] = chains[rest].circ(ops[head - 1])

    partitions = set_partitions(m)
    rhs = DiffOp.zero(n)
    for part in partitions:
        term = unit_op(n)
        for block in part.blocks:
            term = term.bullet(block_ops[frozenset(block)])
        rhs = rhs + term

    desc = f"{description} m={m} summands={len(partitions)}".strip()
    return _report("compos", desc, lhs, rhs, started)


def verify_bell_power(op: DiffOp, m: int, description: str = "") -> VerifyReport:
    """Composition power of a first-order operator vs. its Bell-polynomial form."""
    started = time.perf_counter()
    if not op.is_first_order():
        raise ValueError("operator must be first order")
    lhs = power_diamond(op, m)
    rhs = bell_eval_bullet(m, op)
    desc = f"{description} m={m}".strip()
    return _report("bellpower", desc, lhs, rhs, started)


def _bullet_series_exp(coeffs: list[DiffOp]) -> list[DiffOp]:
    # exponential of an operator-valued z-series under the bullet product,
    # in exponential z-convention; coeffs[0] must be the zero operator
    n = coeffs[0].n
    from math import comb

    out = [unit_op(n)]
    for m in range(len(coeffs) - 1):
        term = DiffOp.zero(n)
        for k in range(m + 1):
            term = term + comb(m, k) * coeffs[k + 1].bullet(out[m - k])
        out.append(term)
    return out


def _bullet_series_ln(coeffs: list[DiffOp]) -> list[DiffOp]:
    # logarithm under the bullet product; coeffs[0] must be the unit operator
    n = coeffs[0].n
    from math import comb

    out = [DiffOp.zero(n)]
    for m in range(len(coeffs) - 1):
        term = coeffs[m + 1]
        for k in range(m):
            term = term - comb(m, k) * coeffs[m - k].bullet(out[k + 1])
        out.append(term)
    return out


def verify_exp_identity(op: DiffOp, z_order: int, description: str = "") -> VerifyReport:
    """Generating-function identity for composition powers, checked per z-coefficient.

    Left: the composition powers ``op^m``.  Right: the bullet-exponential
    of the z-series with coefficients ``op^{m-1} o op``.  The matching
    bullet-logarithm round trip is checked alongside.
    """
    started = time.perf_counter()
    if not op.is_first_order():
        raise ValueError("operator must be first order")
    if z_order < 0:
        raise ValueError("z-order must be non-negative")
    n = op.n
    powers = [unit_op(n)]
    for _ in range(z_order):
        powers.append(powers[-1].diamond(op))
    inner = [DiffOp.zero(n)] + [powers[m - 1].circ(op) for m in range(1, z_order + 1)]
    exp_side = _bullet_series_exp(inner)
    ln_side = _bullet_series_ln(powers)

    left_lines = [f"z^{m}: {powers[m]}" for m in range(z_order + 1)]
    left_lines += [f"ln z^{m}: {inner[m]}" for m in range(z_order + 1)]
    right_lines = [f"z^{m}: {exp_side[m]}" for m in range(z_order + 1)]
    right_lines += [f"ln z^{m}: {ln_side[m]}" for m in range(z_order + 1)]
    desc = f"{description} z_order={z_order}".strip()
    return _report("expid", desc, "\n".join(left_lines), "\n".join(right_lines), started)


def verify_exp_identity_xd(z_order: int) -> VerifyReport:
    """Specialization to x*d in one variable.

    The right side expands ``sum_i x^i d^i (e^z - 1)^i / i!`` with scalar
    series arithmetic in z, so the comparison crosses from operator
    algebra to series algebra.
    """
    started = time.perf_counter()
    if z_order < 0:
        raise ValueError("z-order must be non-negative")
    xd = DiffOp.single(MultiPoly.variable(1, 0), (1,))
    powers = [unit_op(1)]
    for _ in range(z_order):
        powers.append(powers[-1].diamond(xd))

    em1 = EgfSeries([0] + [1] * z_order)  # e^z - 1
    rhs = [DiffOp.zero(1) for _ in range(z_order + 1)]
    power = EgfSeries.one(z_order)
    fact = 1
    for i in range(z_order + 1):
        if i > 0:
            power = power * em1
            fact *= i
        for m in range(z_order + 1):
            c = power[m] / fact
            if c:
                rhs[m] = rhs[m] + DiffOp(1, {(i,): MultiPoly(1, {(i,): c})})

    left = "\n".join(f"z^{m}: {powers[m]}" for m in range(z_order + 1))
    right = "\n".join(f"z^{m}: {rhs[m]}" for m in range(z_order + 1))
    return _report("expid.xd", f"z_order={z_order}", left, right, started)


def verify_stirling_power(m: int, description: str = "") -> VerifyReport:
    """Composition powers of x*d vs. the Stirling-weighted normal form."""
    started = time.perf_counter()
    if not 1 <= m <= STIRLING_POWER_CAP:
        raise ValueError(f"m must lie in 1..{STIRLING_POWER_CAP}, got {m}")
    xd = DiffOp.single(MultiPoly.variable(1, 0), (1,))
    lhs = power_diamond(xd, m)
    rhs = DiffOp(
        1,
        {
            (k,): MultiPoly(1, {(k,): stirling2(m, k)})
            for k in range(m + 1)
            if stirling2(m, k)
        },
    )
    desc = f"{description} m={m}".strip()
    return _report("stirling", desc, lhs, rhs, started)


def verify_inversion(
    f: EgfSeries | InvertibleSeries, order: int, description: str = ""
) -> VerifyReport:
    """All four inverse algorithms must agree and invert under composition.

    The expected side pins everything to the classical result and the
    identity series; the report passes exactly when the renderings match
    line for line.
    """
    started = time.perf_counter()
    f = InvertibleSeries(f).series if isinstance(f, EgfSeries) else f.series
    if f.order < order + 1:
        raise ValueError(f"input series must be valid to order {order + 1}, has {f.order}")
    g_classical = classical_inverse(f, order)
    g_operator = operator_inverse(f, order)
    g_log = log_form_inverse(f, order)
    g_newton = newton_inverse(f, order)
    ident = EgfSeries.identity(order)
    f_after_g = f.truncate(order).compose(g_classical)
    g_after_f = g_classical.compose(f.truncate(order))

    left = "\n".join(
        [
            f"classical: {g_classical}",
            f"operator: {g_classical}",
            f"log: {g_classical}",
            f"newton: {g_classical}",
            f"f(g): {ident}",
            f"g(f): {ident}",
        ]
    )
    right = "\n".join(
        [
            f"classical: {g_classical}",
            f"operator: {g_operator}",
            f"log: {g_log}",
            f"newton: {g_newton}",
            f"f(g): {f_after_g}",
            f"g(f): {g_after_f}",
        ]
    )
    desc = f"{description} order={order} a1={f[1]}".strip()
    return _report("inversion", desc, left, right, started)


def run_suite(
    name: str,
    *,
    seed: int = 0,
    trials: int = 1,
    n: int = 2,
    degree: int = 2,
    m: int | None = None,
    order: int | None = None,
) -> list[VerifyReport]:
    """Dispatch one named identity suite with seeded random instances.

    Suites: ``prop1`` (product identities), ``corollary`` (first-order
    composition splits), ``compos`` (set-partition expansion),
    ``bellpower`` (Bell-polynomial powers), ``expid`` (generating-function
    identity, plus the x*d specialization), ``stirling`` (normal form of
    powers of x*d), ``inversion`` (four-way inverse agreement).
    """
    spec = RandomSpec(seed=seed, n=n, max_degree=degree)
    if name == "prop1":
        return verify_product_identities(spec, trials)
    if name == "corollary":
        return verify_composition_split(spec, trials)
    if name == "compos":
        size = 3 if m is None else m
        return [
            verify_partition_expansion(
                random_op_list(replace(spec, seed=_trial_seed(seed, t)), size),
                description=f"seed={seed} trial={t} n={n} degree<={degree}",
            )
            for t in range(trials)
        ]
    if name == "bellpower":
        size = 4 if m is None else m
        return [
            verify_bell_power(
                random_vector_field(replace(spec, seed=_trial_seed(seed, t))),
                size,
                description=f"seed={seed} trial={t} n={n} degree<={degree}",
            )
            for t in range(trials)
        ]
    if name == "expid":
        z_order = 5 if order is None else order
        reports = [
            verify_exp_identity(
                random_vector_field(replace(spec, seed=_trial_seed(seed, t))),
                z_order,
                description=f"seed={seed} trial={t} n={n} degree<={degree}",
            )
            for t in range(trials)
        ]
        reports.append(verify_exp_identity_xd(z_order))
        return reports
    if name == "stirling":
        size = 6 if m is None else m
        return [verify_stirling_power(size)]
    if name == "inversion":
        size = 8 if order is None else order
        return [
            verify_inversion(
                random_invertible_series(replace(spec, seed=_trial_seed(seed, t)), size + 1),
                size,
                description=f"seed={seed} trial={t}",
            )
            for t in range(trials)
        ]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
