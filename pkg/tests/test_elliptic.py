import logging

import numpy as np
import pytest

from pyrevol.domain import Grid, GridFunction, norm_Ym
from pyrevol.elliptic import (WeightedOperator, apply_A, solve_A, residual_linear,
                              derivative_bound, LinearSolveError, FLOOR_FACTOR)


def assemble(op):
    n = op.grid.size
    M = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.
        M[:, j] = op.apply_values(e.reshape(op.grid.shape)).ravel()
    return M


class test_operator(object):
    grid = Grid([2, 3], [3, 4])

    def test_constant(self):
        op = WeightedOperator(self.grid)
        c = self.grid.constant(2.)
        np.testing.assert_array_equal(apply_A(op, c).values, c.values)

    def test_symmetric_positive(self):
        for eps in [0., 0.1]:
            op = WeightedOperator(self.grid, eps)
            M = assemble(op)
            d = np.sqrt((op.weights*self.grid.volume).ravel())
            S = d[:, np.newaxis]*M/d[np.newaxis, :]
            np.testing.assert_allclose(S, S.T, atol=1e-12*np.abs(S).max())
            assert(np.linalg.eigvalsh(0.5*(S + S.T)).min() >= 1. - 1e-10)

    def test_energy_identity(self):
        rng = np.random.default_rng(1)
        op = WeightedOperator(self.grid)
        u = GridFunction(self.grid, rng.standard_normal(self.grid.shape))
        np.testing.assert_allclose(op.inner(op(u), u), norm_Ym(self.grid, u)**2, rtol=1e-12)

    def test_default_cap(self):
        assert(WeightedOperator(Grid([3], [64])).default_max_iter == 3200)
        assert(WeightedOperator(Grid([2, 2], [16, 16])).default_max_iter == 800)

    def test_errors(self):
        with pytest.raises(ValueError):
            WeightedOperator(self.grid, -1.)
        op = WeightedOperator(self.grid)
        with pytest.raises(ValueError):
            op(Grid([2, 3], [4, 3]).constant(1.))


class test_solve(object):
    grid = Grid([2, 3], [3, 4])

    def test_dense(self):
        rng = np.random.default_rng(2)
        op = WeightedOperator(self.grid)
        h = GridFunction(self.grid, rng.uniform(size=self.grid.shape))
        v = solve_A(op, h, tol=1e-13)
        ref = np.linalg.solve(assemble(op), h.values.ravel())
        np.testing.assert_allclose(v.values.ravel(), ref, rtol=1e-9)
        res, rel = residual_linear(op, v, h)
        assert(rel <= 1e-12)

    def test_constant_rhs(self):
        grid = Grid([3], [128])
        op = WeightedOperator(grid)
        v = solve_A(op, grid.constant(3.))
        np.testing.assert_allclose(v.values, 3., rtol=1e-12)

    def test_zero_rhs(self):
        op = WeightedOperator(self.grid)
        assert(solve_A(op, self.grid.zeros()).abs_max() == 0.)

    def test_iteration_cap(self):
        grid = Grid([3], [16])
        rng = np.random.default_rng(3)
        op = WeightedOperator(grid)
        with pytest.raises(LinearSolveError) as e:
            solve_A(op, GridFunction(grid, rng.standard_normal(16)), max_iter=1)
        assert(e.value.residual > 1e-10)

    def test_rounding_floor_quiet(self):
        records = []

        class Collect(logging.Handler):
            def emit(self, record):
                records.append(record)

        grid = Grid([2, 2], [64, 64])
        op = WeightedOperator(grid)
        h = grid.from_callable(lambda t1, t2: 1 + t1**2 + t1*t2)
        handler = Collect(level=logging.WARNING)
        logger = logging.getLogger("pyrevol.elliptic")
        logger.addHandler(handler)
        try:
            v = solve_A(op, h, tol=1e-12)
        finally:
            logger.removeHandler(handler)
        assert(records == [])
        assert(residual_linear(op, v, h)[1] <= FLOOR_FACTOR*1e-12)

    def test_bad_tolerance(self):
        op = WeightedOperator(self.grid)
        with pytest.raises(ValueError):
            solve_A(op, self.grid.constant(1.), tol=0.)

    def test_derivative_bound(self):
        grid = Grid([3], [64])
        op = WeightedOperator(grid)
        h = grid.from_callable(lambda t: 1 + t**2)
        v = solve_A(op, h, tol=1e-12)
        res = derivative_bound(op, v, h)
        assert(res['passed'])
        assert(0. <= res['ratio'] <= res['bound'])
