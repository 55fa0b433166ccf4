import numpy as np
import pytest
import sympy as sp

from pyrevol.domain import Grid
from pyrevol.manufactured import ManufacturedSolution, ConvergenceReport, convergence_study


class test_manufactured_solution(object):
    def test_ball(self):
        ms = ManufacturedSolution([3])
        t, = ms.symbols
        assert(sp.simplify(ms.h - (24*t + 3*t**2 - 2*t**3)) == 0)
        # zero derivative on the faces of the cube
        dv = sp.diff(ms.v, t)
        assert(dv.subs(t, 0) == 0 and dv.subs(t, 1) == 0)

    def test_expression(self):
        ms = ManufacturedSolution([1], 't_1**2*(3 - 2*t_1)')
        t, = ms.symbols
        assert(sp.simplify(ms.h - (12*t - 6 + 3*t**2 - 2*t**3)) == 0)
        grid = Grid([1], [8])
        np.testing.assert_allclose(ms.exact(grid).values, grid.coords[0]**2*(3 - 2*grid.coords[0]))

    def test_two_axes(self):
        ms = ManufacturedSolution([2, 3])
        t1, t2 = ms.symbols
        expected = 18*t1 + 3*t1**2 - 2*t1**3 + 24*t2 + 3*t2**2 - 2*t2**3 - 12
        assert(sp.simplify(ms.h - expected) == 0)
        grid = Grid([2, 3], [4, 6])
        assert(ms.rhs(grid).values.shape == (4, 6))

    def test_error(self):
        ms = ManufacturedSolution([3])
        e1 = ms.error(Grid([3], [32]))
        e2 = ms.error(Grid([3], [64]))
        assert(0 < e2 < e1 < 1e-2)


class test_convergence(object):
    @pytest.mark.parametrize('n', [[3], [1], [2, 2]])
    def test_second_order(self, n):
        cells = (32, 64, 128) if len(n) == 1 else (16, 32, 64)
        report = convergence_study(ManufacturedSolution(n), cells)
        assert(report.passed())
        assert(len(report.orders) == 2)
        for o in report.orders:
            assert(1.7 <= o <= 2.3)

    def test_regularized(self):
        report = convergence_study(ManufacturedSolution([3], eps=0.1), (32, 64, 128))
        assert(report.passed())

    def test_report(self):
        report = ConvergenceReport([10, 20, 40], [1., 0.25, 0.0625])
        np.testing.assert_allclose(report.orders, [2., 2.])
        assert(report.passed())
        assert(not ConvergenceReport([10, 20], [1., 0.5]).passed())
        assert(not ConvergenceReport([10], [1.]).passed())
        assert(report.to_dict()['cells'] == [10, 20, 40])
        assert('order' in report.__str__())
