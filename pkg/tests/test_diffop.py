"""The three operator products, their identities, and the chain constructions."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opseries import (
    DiffOp,
    MultiPoly,
    diamond_chain,
    partition_operator,
    power_diamond,
    subset_operator,
    unit_op,
)

from test_multipoly import COEFFS, polys


def diffops(n=2, max_order=2, max_degree=2):
    betas = st.tuples(*(st.integers(0, max_order) for _ in range(n))).filter(
        lambda b: sum(b) <= max_order
    )
    return st.dictionaries(
        betas, polys(n, max_degree, max_terms=2), min_size=0, max_size=2
    ).map(lambda d: DiffOp(n, d))


def vector_fields(n=2, max_degree=2):
    return st.lists(
        polys(n, max_degree, max_terms=2), min_size=n, max_size=n
    ).map(DiffOp.vector_field)


def stirling_oracle(m, k):
    """Inclusion-exclusion count of surjections, divided by k! exactly."""
    if k == 0:
        return 1 if m == 0 else 0
    total = sum((-1) ** j * math.comb(k, j) * (k - j) ** m for j in range(k + 1))
    return total // math.factorial(k)


def xd():
    return DiffOp.single(MultiPoly.variable(1, 0), (1,))


def x1d1():
    return DiffOp.single(MultiPoly.variable(2, 0), (1, 0))


class TestUnit:
    def test_unit_diamond_identity(self):
        assert unit_op(2).diamond(x1d1()) == x1d1()
        assert x1d1().diamond(unit_op(2)) == x1d1()

    def test_unit_circ_left_identity(self):
        assert unit_op(2).circ(x1d1()) == x1d1()

    def test_circ_onto_unit_vanishes(self):
        assert x1d1().circ(unit_op(2)).is_zero()

    def test_unit_bullet_identity(self):
        assert unit_op(2).bullet(x1d1()) == x1d1()

    def test_apply_unit(self):
        p = MultiPoly(2, {(2, 1): Fraction(1, 2), (0, 0): 3})
        assert unit_op(2).apply(p) == p


class TestProducts:
    def test_diamond_generator_example(self):
        d1 = DiffOp(1, {(1,): MultiPoly.const(1, 1)})
        expected = d1 + DiffOp.single(MultiPoly.variable(1, 0), (2,))
        assert d1.diamond(xd()) == expected
        # semantic cross-check on monomials
        for k in range(4):
            p = MultiPoly(1, {(k,): 1})
            assert d1.diamond(xd()).apply(p) == d1.apply(xd().apply(p))

    def test_circ_examples(self):
        assert xd().circ(xd()) == xd()
        d1 = DiffOp(2, {(1, 0): MultiPoly.const(2, 1)})
        x2d2 = DiffOp.single(MultiPoly.variable(2, 1), (0, 1))
        assert d1.circ(x2d2).is_zero()

    def test_bullet_example(self):
        assert xd().bullet(xd()) == DiffOp(1, {(2,): MultiPoly(1, {(2,): 1})})

    def test_first_order_diamond_splits(self):
        u = DiffOp.vector_field(
            [MultiPoly(2, {(1, 0): 1, (0, 1): 2}), MultiPoly(2, {(0, 0): -1})]
        )
        y = DiffOp(2, {(1, 1): MultiPoly.variable(2, 0), (0, 1): MultiPoly.const(2, 3)})
        assert u.diamond(y) == u.circ(y) + u.bullet(y)

    def test_apply_scales_monomial(self):
        p = MultiPoly(1, {(2,): 1})
        assert xd().apply(p) == 2 * p

    def test_variable_count_mismatch(self):
        with pytest.raises(ValueError):
            xd().diamond(x1d1())
        with pytest.raises(ValueError):
            xd().apply(MultiPoly.variable(2, 0))

    def test_zero_is_first_order(self):
        assert DiffOp.zero(2).is_first_order()
        assert DiffOp.zero(2).orders() == frozenset()

    def test_rendering(self):
        op = xd() + xd().bullet(xd())
        assert str(op) == "x1^2*d1^2 + x1*d1"
        assert str(unit_op(2)) == "1"
        assert str(DiffOp.zero(1)) == "0"


class TestProductProperties:
    @given(diffops(), diffops(), polys(2, 2, 3))
    @settings(max_examples=40, deadline=None)
    def test_diamond_is_composition_of_actions(self, x, y, p):
        assert x.diamond(y).apply(p) == x.apply(y.apply(p))

    @given(diffops(), diffops())
    @settings(max_examples=40, deadline=None)
    def test_bullet_commutes(self, x, y):
        assert x.bullet(y) == y.bullet(x)

    @given(vector_fields(), diffops())
    @settings(max_examples=40, deadline=None)
    def test_first_order_split(self, u, y):
        assert u.diamond(y) == u.circ(y) + u.bullet(y)

    @given(diffops(), diffops())
    @settings(max_examples=30, deadline=None)
    def test_diamond_order_grading(self, x, y):
        product = x.diamond(y)
        if x.is_zero() or y.is_zero():
            assert product.is_zero()
            return
        bound = max(x.orders()) + max(y.orders())
        assert all(k <= bound for k in product.orders())

    @given(st.integers(0, 2), st.integers(0, 2), st.data())
    @settings(max_examples=30, deadline=None)
    def test_bullet_order_grading(self, j, k, data):
        x = data.draw(diffops(max_order=j).filter(lambda o: o.orders() == {j}))
        y = data.draw(diffops(max_order=k).filter(lambda o: o.orders() == {k}))
        product = x.bullet(y)
        assert product.orders() <= {j + k}


class TestChains:
    def make_ops(self, m=3):
        # fixed generic first-order operators in two variables
        ops = []
        for k in range(1, m + 1):
            u = MultiPoly(2, {(1, 0): k, (0, 1): Fraction(1, k)})
            v = MultiPoly(2, {(0, 0): -k, (1, 1): 1})
            ops.append(DiffOp.vector_field([u, v]))
        return ops

    def test_singleton_chain(self):
        ops = self.make_ops()
        assert diamond_chain(ops, {2}) == ops[1]

    def test_pair_chain_order(self):
        ops = self.make_ops()
        assert diamond_chain(ops, {1, 2}) == ops[1].diamond(ops[0])

    def test_chain_all_xd(self):
        ops = [xd(), xd(), xd()]
        result = diamond_chain(ops, {1, 2, 3})
        expected = DiffOp(
            1, {(k,): MultiPoly(1, {(k,): stirling_oracle(3, k)}) for k in (1, 2, 3)}
        )
        assert result == expected

    def test_subset_operator_singleton(self):
        ops = self.make_ops()
        assert subset_operator(ops, {3}) == ops[2]

    def test_subset_operator_pair(self):
        ops = self.make_ops()
        assert subset_operator(ops, {1, 2}) == ops[1].circ(ops[0])

    def test_subset_operator_triple(self):
        ops = self.make_ops()
        expected = ops[2].diamond(ops[1]).circ(ops[0])
        assert subset_operator(ops, {1, 2, 3}) == expected

    def test_partition_operator_blocks(self):
        ops = self.make_ops()
        l1, l2, l3 = ops
        assert partition_operator(ops, [{1}, {2}, {3}]) == l3.bullet(l2).bullet(l1)
        assert partition_operator(ops, [{1, 3}, {2}]) == l2.bullet(l3.circ(l1))
        assert partition_operator(ops, [{1, 2, 3}]) == l3.diamond(l2).circ(l1)

    def test_five_term_expansion(self):
        ops = self.make_ops()
        l1, l2, l3 = ops
        total = (
            l3.bullet(l2).bullet(l1)
            + l3.bullet(l2.circ(l1))
            + l2.bullet(l3.circ(l1))
            + l3.circ(l2).bullet(l1)
            + l3.diamond(l2).circ(l1)
        )
        assert l3.diamond(l2).diamond(l1) == total

    def test_power_diamond(self):
        assert power_diamond(xd(), 0) == unit_op(1)
        assert power_diamond(xd(), 2) == xd() + DiffOp(1, {(2,): MultiPoly(1, {(2,): 1})})
        expected = DiffOp(
            1, {(k,): MultiPoly(1, {(k,): stirling_oracle(4, k)}) for k in range(1, 5)}
        )
        assert power_diamond(xd(), 4) == expected

    def test_chain_errors(self):
        ops = self.make_ops()
        with pytest.raises(ValueError):
            diamond_chain(ops, set())
        with pytest.raises(ValueError):
            diamond_chain(ops, {0, 1})
        with pytest.raises(ValueError):
            diamond_chain(ops, {4})
        with pytest.raises(ValueError):
            partition_operator(ops, [{1, 2}])  # misses 3
        with pytest.raises(ValueError):
            partition_operator(ops, [{1, 2}, {2, 3}])  # overlap
        second_order = DiffOp(2, {(1, 1): MultiPoly.const(2, 1)})
        with pytest.raises(ValueError):
            diamond_chain([second_order], {1})
