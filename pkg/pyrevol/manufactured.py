# License: BSD 3 clause

"""
Manufactured solutions of the linear problem A v = h.

An exact v with zero normal derivative on the faces of the cube is chosen,
h = -Lap_t v - sum_k (n_k - 1)/(t_k + eps) v_{t_k} + v is computed by sympy,
and the error of the discrete solve is measured under grid refinement.
"""

import numpy as np
import sympy as sp

from .domain import Grid
from .elliptic import WeightedOperator, solve_A
from .geometry import RevolutionSpec
from .logs import setLogger


def default_expression(symbols):
    """
    return sum_k (3 t_k^2 - 2 t_k^3) + 18, which has zero derivatives at t_k = 0 and 1.
    """
    return sum(3*t**2 - 2*t**3 for t in symbols) + 18


class ManufacturedSolution(object):
    """
    Exact solution of A v = h on a domain of revolution.

    Parameters
    ----------

    spec : RevolutionSpec or list of int
    expr : sympy expression or string, optional
      the exact solution v written with the symbols t_1, ..., t_m
      (default: sum_k (3 t_k^2 - 2 t_k^3) + 18)
    eps : float
      regularization of the coefficients (default 0)

    Attributes
    ----------

    symbols : tuple of sympy symbols
    v : sympy expression
    h : sympy expression
      the right hand side A v

    Examples
    --------

    >>> ms = ManufacturedSolution([3])
    >>> ms.h
    -2*t_1**3 + 3*t_1**2 + 24*t_1

    """
    def __init__(self, spec, expr=None, eps=0.):
        self.log = setLogger(__name__)
        if not isinstance(spec, RevolutionSpec):
            spec = RevolutionSpec(spec)
        self.spec = spec
        self.eps = eps
        self.symbols = sp.symbols(','.join('t_{0:d}'.format(k+1) for k in range(spec.m)) + ',', positive=True)
        if expr is None:
            expr = default_expression(self.symbols)
        elif isinstance(expr, str):
            expr = sp.sympify(expr, locals={str(t): t for t in self.symbols})
        self.v = expr
        h = self.v
        for nk, t in zip(spec.n, self.symbols):
            dv = sp.diff(self.v, t)
            h += -sp.diff(dv, t) - (nk - 1)*dv/(t + eps)
        self.h = sp.expand(sp.simplify(h))
        self._v = sp.lambdify(self.symbols, self.v, 'numpy')
        self._h = sp.lambdify(self.symbols, self.h, 'numpy')
        self.log.info("manufactured solution v={0}, h={1}".format(self.v, self.h))

    def exact(self, grid):
        return grid.from_callable(self._v)

    def rhs(self, grid):
        return grid.from_callable(self._h)

    def error(self, grid, tol=1e-12):
        """
        return the sup norm of the error of the discrete solve on grid.
        """
        op = WeightedOperator(grid, self.eps)
        v = solve_A(op, self.rhs(grid), tol=tol)
        return float(np.abs(v.values - self.exact(grid).values).max())

    def __str__(self):
        s = "Manufactured solution on n={0}\n".format(list(self.spec.n))
        s += "\t v={0}\n\t h={1}\n".format(self.v, self.h)
        return s


class ConvergenceReport(object):
    """
    errors and observed orders of a convergence study.
    """
    def __init__(self, cells, errors):
        self.cells = list(cells)
        self.errors = list(errors)
        self.orders = [float(np.log(self.errors[i]/self.errors[i+1])/np.log(self.cells[i+1]/self.cells[i]))
                       for i in range(len(self.errors) - 1)]

    def passed(self, low=1.7, high=2.3):
        return bool(self.orders) and all(low <= o <= high for o in self.orders)

    def __str__(self):
        s = "{0:>8s} {1:>14s} {2:>8s}\n".format('cells', 'error', 'order')
        for i, (c, e) in enumerate(zip(self.cells, self.errors)):
            o = "{0:8.4f}".format(self.orders[i-1]) if i > 0 else "{0:>8s}".format('-')
            s += "{0:8d} {1:14.6e} {2}\n".format(c, e, o)
        return s

    def to_dict(self):
        return {'cells': self.cells, 'errors': self.errors, 'orders': self.orders}


def convergence_study(ms, cells_list=(64, 128, 256)):
    """
    return the ConvergenceReport of the manufactured solution ms
    on grids with cells_list[i] cells per axis.
    """
    errors = [ms.error(Grid(ms.spec, [s]*ms.spec.m)) for s in cells_list]
    report = ConvergenceReport(cells_list, errors)
    ms.log.info("\n" + report.__str__())
    return report
