# License: BSD 3 clause

"""
The dual energy

.. math::

    I(u) = \\psi(u) - \\varphi(u)
         = \\int a F^*\\Big(\\frac{Au}{a}\\Big) d\\mu - \\int a F(u) d\\mu

defined on the cone (and equal to +infinity outside).
"""

import numpy as np
from numpy.polynomial import polynomial as P

from .cone import in_cone
from .domain import GridFunction, integrate, inner
from .elliptic import WeightedOperator
from .logs import setLogger
from .nonlinearity import POWER

WEIGHT_TYPES = ['constant', 'radial_power', 'separable', 'csv']


class InfiniteEnergy(ArithmeticError):
    """
    the value +infinity of psi, outside the cone.

    Attributes
    ----------

    report : ConeReport
      the membership report of the function
    """
    def __init__(self, message, report):
        ArithmeticError.__init__(self, message)
        self.report = report


def weight_constant(grid, value=1.):
    return grid.constant(value)

def weight_radial_power(grid, alpha, axis=0):
    """
    return a(t) = t_axis^alpha.
    """
    return grid.from_callable(lambda *t: t[axis]**alpha)

def weight_separable(grid, factors):
    """
    return a(t) = prod_k b_k(t_k) where b_k(t) = sum_j factors[k][j] t^j.
    """
    log = setLogger(__name__)
    if len(factors) != grid.m:
        log.error("A separable weight needs {0:d} factors ({1:d} given)".format(grid.m, len(factors)))
        raise ValueError("a separable weight needs one factor per axis")
    return grid.from_callable(lambda *t: np.prod([P.polyval(tk, c) for tk, c in zip(t, factors)], axis=0))

def weight_csv(grid, path):
    return GridFunction.from_csv(path, grid)

def make_weight(grid, dico=None):
    """
    return the weight a described by a dictionary

    Parameters
    ----------

    grid : Grid
    dico : dict
      with the key type in ['constant', 'radial_power', 'separable', 'csv']
      and the parameters of the family:

      - constant : value (default 1)
      - radial_power : alpha and axis (default 0), a(t) = t_axis^alpha
      - separable : factors, a list of m lists of polynomial coefficients
      - csv : path of a grid function file

      None gives the constant 1.
    """
    log = setLogger(__name__)
    if dico is None:
        return weight_constant(grid)
    kind = dico.get('type', 'constant')
    if kind == 'constant':
        return weight_constant(grid, dico.get('value', 1.) or 1.)
    elif kind == 'radial_power':
        axis = dico.get('axis', 0) or 0
        return weight_radial_power(grid, dico['alpha'], axis)
    elif kind == 'separable':
        return weight_separable(grid, dico['factors'])
    elif kind == 'csv':
        return weight_csv(grid, dico['path'])
    log.error("Unknown type of weight: {0}".format(kind))
    raise ValueError("unknown weight type {0!r}, expected one of {1}".format(kind, WEIGHT_TYPES))


class Problem(object):
    """
    The problem -Lap u + u = a f(u) with Neumann conditions on a domain
    of m revolution, written on the cube of the radial variables.

    Parameters
    ----------

    grid : Grid
    a : GridFunction
      the weight, in the cone and positive
    nl : Nonlinearity
    eps : float
      regularization of the weights (default 0)
    allow_supercritical : bool
      accept p >= 2*_m for exploratory runs (default False)
    cone_tol : float
      relative tolerance of the cone membership tests (default 1e-8)

    Attributes
    ----------

    spec : RevolutionSpec
    operator : WeightedOperator
    varying_axes : list of int
      the axes along which a is not constant
    """
    def __init__(self, grid, a, nl, eps=0., allow_supercritical=False, cone_tol=1e-8):
        self.log = setLogger(__name__)
        if a.grid != grid:
            self.log.error("The weight lives on {0!r} and the problem on {1!r}".format(a.grid, grid))
            raise ValueError("grid mismatch between the weight and the problem")
        self.grid = grid
        self.spec = grid.spec
        self.a = a
        self.nl = nl
        self.eps = float(eps)
        self.allow_supercritical = bool(allow_supercritical)
        self.cone_tol = float(cone_tol)

        report = in_cone(a, self.tolerance(a))
        if not report.member:
            self.log.error("The weight a is not in the cone\n" + report.__str__())
            raise ValueError("the weight a must be nonnegative and nondecreasing along every axis")
        if not a.min() > 0:
            self.log.error("The weight a must be positive (min a = {0:g})".format(a.min()))
            raise ValueError("the weight a must be positive on the grid (min a = {0:g})".format(a.min()))
        if not self.spec.is_subcritical(nl.p):
            if self.allow_supercritical:
                self.log.warning("p={0:g} >= 2*_m={1:g}: exploratory run".format(nl.p, self.spec.critical_exponent))
            else:
                self.log.error("The exponent p={0:g} is not below 2*_m={1:g}".format(nl.p, self.spec.critical_exponent))
                raise ValueError("p = {0:g} must be smaller than 2*_m = {1:g} (set allow_supercritical to override)".format(nl.p, self.spec.critical_exponent))
        self.operator = WeightedOperator(grid, self.eps)
        self.log.info(self.__str__())

    def tolerance(self, u):
        """
        absolute cone tolerance for the function u.
        """
        return self.cone_tol*max(1., u.abs_max())

    @property
    def varying_axes(self):
        x = self.a.values
        scale = 1e-14*max(1., np.abs(x).max())
        return [k for k in range(self.grid.m) if np.ptp(x, axis=k).max() > scale]

    def reduce(self):
        """
        return the problem restricted to the axes along which a varies.

        The solutions constant along the other axes are the solutions of
        the restricted problem (the weights of the dropped axes factor out
        of every integral).
        """
        axes = self.varying_axes or [0]
        if len(axes) == self.grid.m:
            return self
        index = tuple(slice(None) if k in axes else 0 for k in range(self.grid.m))
        grid = self.grid.restrict(axes)
        a = GridFunction(grid, self.a.values[index])
        self.log.info("Reduction of the problem to the axes {0}".format(axes))
        return Problem(grid, a, self.nl, self.eps, self.allow_supercritical, self.cone_tol)

    def lift(self, v):
        """
        extend a function of the reduced problem as a constant along the dropped axes.
        """
        axes = self.varying_axes or [0]
        sh = [self.grid.cells[k] if k in axes else 1 for k in range(self.grid.m)]
        return GridFunction(self.grid, np.broadcast_to(v.values.reshape(sh), self.grid.shape))

    def __str__(self):
        s = "Problem -Lap u + u = a f(u)\n"
        s += "\t n={0}, cells={1}, eps={2:g}\n".format(list(self.spec.n), list(self.grid.cells), self.eps)
        s += "\t a in [{0:g}, {1:g}], varying along the axes {2}\n".format(self.a.min(), self.a.max(), self.varying_axes)
        s += "\t " + self.nl.__str__()
        return s

    def to_dict(self):
        return {'grid': self.grid.to_dict(),
                'spec': self.spec.to_dict(),
                'eps': self.eps,
                'nonlinearity': self.nl.to_dict(),
                'a_min': self.a.min(),
                'a_max': self.a.max(),
                'varying_axes': self.varying_axes,
                'allow_supercritical': self.allow_supercritical}


class EnergyReport(object):
    """
    values of the dual energy at a function of the cone.
    """
    def __init__(self, phi, psi, consistency_gap, cone_report):
        self.phi = phi
        self.psi = psi
        self.I = psi - phi
        self.consistency_gap = consistency_gap
        self.cone_report = cone_report

    def __str__(self):
        s = "Energy: I={0:.12e} (psi={1:.12e}, phi={2:.12e})\n".format(self.I, self.psi, self.phi)
        s += "\t consistency gap={0:.3e}, in the cone: {1}\n".format(self.consistency_gap, self.cone_report.member)
        return s

    def to_dict(self):
        return {'phi': self.phi, 'psi': self.psi, 'I': self.I,
                'consistency_gap': self.consistency_gap,
                'cone': self.cone_report.to_dict()}


def eval_phi(pb, u):
    """
    return phi(u) = int a F(u).
    """
    return integrate(pb.grid, pb.a.values*pb.nl.F(u.values), pb.eps)

def dphi(pb, u):
    """
    return the derivative a f(u) of phi.
    """
    return GridFunction(pb.grid, pb.a.values*pb.nl.f(u.values))

def eval_psi(pb, u):
    """
    return psi(u) = int a F*(Au/a)

    Raises
    ------

    InfiniteEnergy
      if u is not in the cone
    """
    report = in_cone(u, pb.tolerance(u))
    if not report.member:
        raise InfiniteEnergy("psi is infinite outside the cone", report)
    h = pb.operator.apply_values(u.values)
    return integrate(pb.grid, pb.a.values*pb.nl.Fstar(h/pb.a.values), pb.eps)

def consistency_gap(pb, u):
    """
    return ||(F*)'(Au/a) - u|| / max(||u||, 1) for the weighted L^2 norm.

    It vanishes when Au = a f(u) since (F*)' is the inverse of f.
    """
    h = pb.operator.apply_values(u.values)
    d = pb.nl.Fstar_prime(h/pb.a.values) - u.values
    un = np.sqrt(inner(pb.grid, u, u, pb.eps))
    return float(np.sqrt(inner(pb.grid, d, d, pb.eps))/max(un, 1.))

def eval_I(pb, u):
    """
    return the EnergyReport of u

    Raises
    ------

    InfiniteEnergy
      if u is not in the cone
    """
    psi = eval_psi(pb, u)
    phi = eval_phi(pb, u)
    return EnergyReport(phi, psi, consistency_gap(pb, u), in_cone(u, pb.tolerance(u)))

def energy_I(pb, u):
    """
    return the value I(u) only.
    """
    return eval_psi(pb, u) - eval_phi(pb, u)

def eval_primal(pb, u):
    """
    return the classical energy 1/2 <Au, u> - phi(u) (a diagnostic).
    """
    return 0.5*pb.operator.inner_values(pb.operator.apply_values(u.values), u.values) - eval_phi(pb, u)

def coercivity_constants(pb):
    """
    return the constants (C1, C2) of psi(u) >= C1 ||Au||_q^q - C2.

    For the power nonlinearity a F*(h/a) = a^(1-q) |h|^q / q and
    C1 = ||a||_inf^(1-q)/q, C2 = 0.
    """
    if pb.nl.kind != POWER:
        log = setLogger(__name__)
        log.error("The coercivity constants are only known for a power nonlinearity")
        raise ValueError("coercivity constants are computed in closed form for the power nonlinearity only")
    q = pb.nl.q
    return pb.a.abs_max()**(1 - q)/q, 0.
