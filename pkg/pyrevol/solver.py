# License: BSD 3 clause

"""
Solvers for the positive solutions of the cone.

Two methods are available:

- fixed_point: the scaled inverse iteration for a power nonlinearity,
- mountain_pass: a descent from the maximum of the dual energy
  along the segment [0, T e], e = sup a + 1, for a general nonlinearity.
"""

import os
import time

import numpy as np
from scipy.optimize import brentq

from .cone import in_cone, mollify, project_cone
from .domain import GridFunction, inner
from .elliptic import solve_A
from .energy import energy_I, consistency_gap, InfiniteEnergy
from .logs import setLogger
from .nonlinearity import POWER, OutOfRangeError

FIXED_POINT = 'fixed_point'
MOUNTAIN_PASS = 'mountain_pass'
METHODS = [FIXED_POINT, MOUNTAIN_PASS]

# guard against the collapse of the iterates to 0
UNDERFLOW = 1e-300
# relative oscillation below which a solution is flagged as constant
CONSTANT_TOL = 1e-8


class DegenerateIterationError(RuntimeError):
    """
    raised when the iterates collapse to zero.
    """
    pass


class MountainPassSetupError(RuntimeError):
    """
    raised when I(T e) stays positive for all the tested T.
    """
    pass


class SolverConfig(object):
    """
    Parameters of the solvers.

    All the parameters are keyword arguments with default values:

    - method : 'fixed_point' or 'mountain_pass' (default 'fixed_point')
    - tol_residual : tolerance on the relative strong residual (1e-8)
    - tol_step : stagnation tolerance on the change of the iterates (1e-14)
    - max_outer : maximal number of outer iterations (500)
    - linear_tol : relative tolerance of the linear solves (1e-12)
    - linear_max_iter : cap of the conjugate gradient (None: 50 size^(1/m))
    - path_samples : number of points on the mountain pass segment (33)
    - descent_step : initial step of the mountain pass descent (1.)
    - seed : seed of the perturbation of the initial guess (0)
    - perturbation : size of the increasing ramp added to the initial guess (1e-3)
    - armijo_c : coefficient of the sufficient decrease (1e-4)
    - armijo_slack : relative slack of the sufficient decrease (1e-12)
    - max_backtracks : maximal number of halvings of the step (30)
    - max_doublings : maximal number of doublings of T (40)
    - cone_tol : relative tolerance of the cone membership (1e-8)
    - reduce : solve the problem restricted to the axes where a varies (False)
    """
    defaults = {
        'method': FIXED_POINT,
        'tol_residual': 1e-8,
        'tol_step': 1e-14,
        'max_outer': 500,
        'linear_tol': 1e-12,
        'linear_max_iter': None,
        'path_samples': 33,
        'descent_step': 1.,
        'seed': 0,
        'perturbation': 1e-3,
        'armijo_c': 1e-4,
        'armijo_slack': 1e-12,
        'max_backtracks': 30,
        'max_doublings': 40,
        'cone_tol': 1e-8,
        'reduce': False,
    }

    def __init__(self, **kwargs):
        self.log = setLogger(__name__)
        unknown = set(kwargs) - set(self.defaults)
        if unknown:
            self.log.error("Unknown solver parameters: {0}".format(sorted(unknown)))
            raise ValueError("unknown solver parameters {0}".format(sorted(unknown)))
        for k, v in self.defaults.items():
            value = kwargs.get(k, None)
            setattr(self, k, v if value is None else value)
        if self.method not in METHODS:
            self.log.error("Unknown method {0}".format(self.method))
            raise ValueError("method must be one of {0}".format(METHODS))
        for k in ['tol_residual', 'tol_step', 'linear_tol', 'descent_step', 'armijo_c']:
            if not getattr(self, k) > 0:
                self.log.error("The parameter {0} must be positive".format(k))
                raise ValueError("{0} must be > 0".format(k))
        if self.max_outer < 1:
            self.log.error("max_outer must be at least 1")
            raise ValueError("max_outer must be >= 1")
        if self.path_samples < 2:
            self.log.error("path_samples must be at least 2")
            raise ValueError("path_samples must be >= 2")

    @classmethod
    def from_dict(cls, dico):
        return cls(**(dico or {}))

    def to_dict(self):
        return {k: getattr(self, k) for k in self.defaults}

    def __str__(self):
        s = "Solver configuration\n"
        for k in self.defaults:
            s += "\t {0}={1}\n".format(k, getattr(self, k))
        return s


class SolveReport(object):
    """
    Trace of a solve.

    Attributes
    ----------

    u : GridFunction
      the last iterate
    converged : bool
    method : string
    outer_iterations : int
    residual_history : list of float
      relative strong residual of each iterate
    energy_history : list of float
      dual energy I of each iterate
    cone_violation_history : list of float
      sup distance between the linear solve and its projection on the cone,
      relative to the sup of the linear solve
    lambda_ : float
      the scaling factor of the fixed point iteration (None for the mountain pass)
    residual : float
      final relative strong residual
    consistency_gap : float
    cone_report : ConeReport
    min_u : float
    constant : bool
      True if the solution is constant
    wall_time : float
      seconds, logged but never written
    message : string
    extra : dict
      method specific diagnostics
    """
    def __init__(self, method):
        self.method = method
        self.u = None
        self.converged = False
        self.outer_iterations = 0
        self.residual_history = []
        self.energy_history = []
        self.cone_violation_history = []
        self.lambda_ = None
        self.residual = np.inf
        self.consistency_gap = np.inf
        self.cone_report = None
        self.min_u = 0.
        self.constant = False
        self.wall_time = 0.
        self.message = ''
        self.extra = {}

    def finalize(self, pb, cfg):
        """
        compute the final diagnostics of the last iterate and the acceptance.
        """
        u = self.u
        self.residual = strong_residual(pb, u)
        self.consistency_gap = consistency_gap(pb, u)
        self.cone_report = in_cone(u, pb.tolerance(u))
        self.min_u = u.min()
        self.constant = bool(u.max() - u.min() <= CONSTANT_TOL*max(1., u.abs_max()))
        self.converged = accept(pb, u, cfg.tol_residual)

    def __str__(self):
        s = "Solve with the method {0}: converged={1}\n".format(self.method, self.converged)
        s += "\t {0:d} outer iterations, residual={1:.3e}, consistency gap={2:.3e}\n".format(self.outer_iterations, self.residual, self.consistency_gap)
        if self.lambda_ is not None:
            s += "\t lambda={0:.15g}\n".format(self.lambda_)
        if self.u is not None:
            s += "\t u in [{0:.6g}, {1:.6g}], constant={2}\n".format(self.u.min(), self.u.max(), self.constant)
        if self.message:
            s += "\t " + self.message + "\n"
        return s

    def to_dict(self):
        return {'method': self.method,
                'converged': self.converged,
                'outer_iterations': self.outer_iterations,
                'residual': self.residual,
                'consistency_gap': self.consistency_gap,
                'lambda': self.lambda_,
                'min_u': self.min_u,
                'max_u': self.u.max() if self.u is not None else None,
                'constant': self.constant,
                'cone': self.cone_report.to_dict() if self.cone_report is not None else None,
                'residual_history': list(self.residual_history),
                'energy_history': list(self.energy_history),
                'cone_violation_history': list(self.cone_violation_history),
                'message': self.message,
                'extra': dict(self.extra)}

    def write_histories(self, path):
        """
        write the histories as two-column CSV files in the directory path.
        """
        for name in ['residual', 'energy', 'cone_violation']:
            h = getattr(self, name + '_history')
            data = np.column_stack([np.arange(len(h)), np.asarray(h, dtype='f8')]) if h else np.zeros((0, 2))
            np.savetxt(os.path.join(path, name + '_history.csv'), data, delimiter=',',
                       fmt=['%d', '%.17g'], header='iteration,' + name, comments='')


def strong_residual(pb, u):
    """
    return ||Au - a f(u)|| / max(||a f(u)||, 1) for the weighted L^2 norm.
    """
    af = pb.a.values*pb.nl.f(u.values)
    r = pb.operator.apply_values(u.values) - af
    afn = np.sqrt(inner(pb.grid, af, af, pb.eps))
    return float(np.sqrt(inner(pb.grid, r, r, pb.eps))/max(afn, 1.))


def accept(pb, u, tol):
    """
    return True if u is an accepted positive solution:
    strong residual <= tol, consistency gap <= 10 tol,
    u in the cone and min u > 0.
    """
    return bool(strong_residual(pb, u) <= tol
                and consistency_gap(pb, u) <= 10*tol
                and in_cone(u, pb.tolerance(u)).member
                and u.min() > 0)


def initial_guess(grid, cfg):
    """
    return 1 plus a small increasing ramp mean_k t_k scaled by a random number.
    """
    rng = np.random.default_rng(cfg.seed)
    ramp = np.mean(grid.mesh(), axis=0)
    return GridFunction(grid, 1. + cfg.perturbation*rng.uniform()*ramp)


def _linear_solve(pb, h, cfg):
    return solve_A(pb.operator, h, cfg.linear_tol, cfg.linear_max_iter)


def _projection_violation(v, w):
    return float(np.abs(w.values - v.values).max()/max(v.abs_max(), UNDERFLOW))


def fixed_point_solve(pb, cfg):
    """
    scaled inverse iteration for a power nonlinearity

    Parameters
    ----------

    pb : Problem
      with a power nonlinearity
    cfg : SolverConfig

    Returns
    -------

    SolveReport

    Notes
    -----

    The normalized iterates are

    .. math::

        v_n = A^{-1}(a f(\\hat{u}_n)), \\quad \\hat{u}_{n+1} = \\lambda_n P(v_n),
        \\quad \\lambda_n = 1/\\|P(v_n)\\|_\\infty

    where P is the projection on the cone. Since f is homogeneous of degree
    p-1, u = lambda^(1/(p-2)) u_hat solves A u = a f(u) when the iteration
    is stationary.
    """
    log = setLogger(__name__)
    if pb.nl.kind != POWER:
        log.error("The fixed point iteration needs a power nonlinearity")
        raise ValueError("fixed_point_solve needs a power nonlinearity (use mountain_pass)")
    t0 = time.perf_counter()
    report = SolveReport(FIXED_POINT)
    p = pb.nl.p
    uh = initial_guess(pb.grid, cfg)
    uh = uh/uh.abs_max()
    u = uh
    for n in range(cfg.max_outer):
        v = _linear_solve(pb, pb.a*uh.map(pb.nl.f), cfg)
        vmax = v.abs_max()
        if vmax < UNDERFLOW:
            log.error("The iterates collapse to zero at the iteration {0:d}".format(n))
            raise DegenerateIterationError("the linear solve returned zero at the iteration {0:d}".format(n))
        w = project_cone(v)
        lam = 1./w.abs_max()
        uh_new = w*lam
        u = uh_new*lam**(1./(p - 2))
        step = float(np.abs(uh_new.values - uh.values).max())
        uh = uh_new

        residual = strong_residual(pb, u)
        report.residual_history.append(residual)
        report.energy_history.append(energy_I(pb, u))
        report.cone_violation_history.append(_projection_violation(v, w))
        report.lambda_ = lam
        report.outer_iterations = n + 1
        log.info("iteration {0:4d}: residual={1:.3e}, I={2:.12e}, lambda={3:.15g}".format(n, residual, report.energy_history[-1], lam))

        if residual <= cfg.tol_residual and accept(pb, u, cfg.tol_residual):
            report.message = 'residual below tolerance'
            break
        if step <= cfg.tol_step:
            report.message = 'stagnation of the iterates'
            break
    else:
        report.message = 'maximal number of iterations reached'
    report.u = u
    report.finalize(pb, cfg)
    report.wall_time = time.perf_counter() - t0
    log.info(report.__str__() + "\t wall time={0:.3f}s\n".format(report.wall_time))
    return report


def ray_derivative(pb, w, tau):
    """
    return d/dtau I(tau w) = <Aw, (F*)'(tau Aw/a)> - <a f(tau w), w>.
    """
    Aw = pb.operator.apply_values(w.values)
    a = pb.a.values
    return (inner(pb.grid, Aw, pb.nl.Fstar_prime(tau*Aw/a), pb.eps)
            - inner(pb.grid, a*pb.nl.f(tau*w.values), w.values, pb.eps))


def ray_maximum(pb, w, tau0=1., max_doublings=60):
    """
    return the tau > 0 maximizing I(tau w) for a nonzero w of the cone

    The derivative along the ray is positive near 0 and negative far away:
    the root is bracketed by doubling or halving tau0 and found by
    Brent's method.
    """
    log = setLogger(__name__)
    g = lambda tau: ray_derivative(pb, w, tau)
    lo, hi = tau0, tau0
    if g(tau0) > 0:
        for k in range(max_doublings):
            hi = 2*hi
            if g(hi) <= 0:
                break
        else:
            log.error("No maximum of the energy along the ray")
            raise MountainPassSetupError("the energy keeps increasing along the ray")
        lo = hi/2
    else:
        for k in range(max_doublings):
            lo = lo/2
            if g(lo) > 0:
                break
        else:
            log.error("No maximum of the energy along the ray")
            raise MountainPassSetupError("the energy keeps decreasing along the ray")
        hi = 2*lo
    if g(hi) == 0:
        return hi
    return brentq(g, lo, hi, xtol=1e-15, rtol=4*np.finfo(float).eps)


def mountain_pass_setup(pb, cfg):
    """
    return the endpoint T e of the mountain pass segment and the energies along it

    e is the constant sup a + 1 and T the smallest power of 2 with I(T e) <= 0.

    Returns
    -------

    dict with the keys e (GridFunction), T, taus and energies
    """
    log = setLogger(__name__)
    e = pb.grid.constant(pb.a.max() + 1.)
    T = 1.
    for k in range(cfg.max_doublings + 1):
        try:
            energy = energy_I(pb, e*T)
        except OutOfRangeError as err:
            log.error("The segment [0, T e] leaves the table at T={0:g}: {1}".format(T, err))
            raise MountainPassSetupError("the tabulated range is too small: I(T e) is still positive when T e leaves the table (T={0:g})".format(T))
        if energy <= 0:
            break
        T *= 2
    else:
        log.error("I(T e) > 0 for all T <= 2^{0:d}".format(cfg.max_doublings))
        raise MountainPassSetupError("I(T e) stays positive after {0:d} doublings: the nonlinearity does not grow fast enough".format(cfg.max_doublings))
    taus = np.linspace(0., 1., cfg.path_samples)
    energies = [energy_I(pb, e*(tau*T)) for tau in taus]
    log.info("Mountain pass segment: T={0:g}, max of I={1:.12e} at tau={2:g}".format(T, max(energies), taus[int(np.argmax(energies))]))
    return {'e': e, 'T': T, 'taus': taus, 'energies': energies}


def mountain_pass_solve(pb, cfg):
    """
    descent from the top of the mountain pass segment

    Parameters
    ----------

    pb : Problem
    cfg : SolverConfig

    Returns
    -------

    SolveReport

    Notes
    -----

    The iterate starts at the maximum of I along the segment [0, T e].
    The direction is the consistency residual r = u - A^{-1}(a f(u)),
    zero at the solutions. A trial point is the projection on the cone of
    u - s r rescaled to the maximum of I on its ray; the step s is halved
    until the sufficient decrease

    .. math::

        I(u_{new}) \\leq I(u) - c s \\|r\\|_Y^2 + slack \\max(1, |I(u)|)

    holds. When no step is accepted along r, the gradient of I for the
    inner product of A, (F*)'(Au/a) - A^{-1}(a f(u)), is tried instead.
    """
    log = setLogger(__name__)
    t0 = time.perf_counter()
    report = SolveReport(MOUNTAIN_PASS)
    setup = mountain_pass_setup(pb, cfg)
    e = setup['e']
    jmax = int(np.argmax(setup['energies']))
    tau = ray_maximum(pb, e, max(setup['taus'][jmax], setup['taus'][1])*setup['T'])
    u = e*tau
    J = energy_I(pb, u)
    report.extra.update({'T': setup['T'],
                         'path_max': J,
                         'path_energies': [float(x) for x in setup['energies']],
                         'fallback_steps': 0})
    report.energy_history.append(J)
    log.info("Top of the mountain pass segment: I={0:.12e}".format(J))

    op = pb.operator
    for n in range(cfg.max_outer):
        v = _linear_solve(pb, pb.a*u.map(pb.nl.f), cfg)
        residual = strong_residual(pb, u)
        report.residual_history.append(residual)
        report.outer_iterations = n
        if residual <= cfg.tol_residual and accept(pb, u, cfg.tol_residual):
            report.message = 'residual below tolerance'
            break
        r = u - v
        directions = [('r', r)]
        gradient = GridFunction(pb.grid, pb.nl.Fstar_prime(op.apply_values(u.values)/pb.a.values)) - v
        directions.append(('gradient', gradient))

        accepted = None
        for name, d in directions:
            slope = op.inner_values(op.apply_values(d.values), d.values)
            s = cfg.descent_step
            for k in range(cfg.max_backtracks):
                z = u - d*s
                trial = project_cone(z)
                if trial.abs_max() > UNDERFLOW:
                    try:
                        trial = trial*ray_maximum(pb, trial)
                        J_new = energy_I(pb, trial)
                    except (InfiniteEnergy, MountainPassSetupError, OutOfRangeError):
                        J_new = np.inf
                    if J_new <= J - cfg.armijo_c*s*slope + cfg.armijo_slack*max(1., abs(J)):
                        accepted = (trial, J_new, _projection_violation(z, trial), s)
                        break
                log.debug("backtracking along {0}: step {1:g} rejected".format(name, s))
                s /= 2
            if accepted is not None:
                if name != 'r':
                    report.extra['fallback_steps'] += 1
                break
        if accepted is None:
            report.message = 'no step satisfies the sufficient decrease'
            log.warning("Mountain pass descent stagnates at the iteration {0:d}".format(n))
            break
        trial, J_new, violation, s = accepted
        step = float(np.abs(trial.values - u.values).max())
        u, J = trial, J_new
        report.energy_history.append(J)
        report.cone_violation_history.append(violation)
        log.info("iteration {0:4d}: residual={1:.3e}, I={2:.12e}, step={3:g}".format(n, residual, J, s))
        if step <= cfg.tol_step*max(1., u.abs_max()):
            report.message = 'stagnation of the iterates'
            report.outer_iterations = n + 1
            report.residual_history.append(strong_residual(pb, u))
            break
    else:
        report.outer_iterations = cfg.max_outer
        report.residual_history.append(strong_residual(pb, u))
        report.message = 'maximal number of iterations reached'
    report.u = u
    report.finalize(pb, cfg)
    report.wall_time = time.perf_counter() - t0
    log.info(report.__str__() + "\t wall time={0:.3f}s\n".format(report.wall_time))
    return report


def solve(pb, cfg):
    """
    run the method of cfg on the problem pb

    With cfg.reduce the problem is solved on the axes along which a varies
    and the solution is extended as a constant along the other axes.
    """
    log = setLogger(__name__)
    log.info(cfg.__str__())
    work = pb.reduce() if cfg.reduce else pb
    if cfg.method == FIXED_POINT:
        report = fixed_point_solve(work, cfg)
    else:
        report = mountain_pass_solve(work, cfg)
    if work is not pb:
        report.u = pb.lift(report.u)
        report.extra['reduced_axes'] = pb.varying_axes or [0]
        report.finalize(pb, cfg)
    return report


def smoothed_response(pb, u, window):
    """
    return the solution v of A v = a_w f(u_w)

    u_w and a_w are the backward window averages of u and a
    (see :py:func:`mollify <pyrevol.cone.mollify>`). v is in the cone and
    tends to A^{-1}(a f(u)) when the window goes to 0.
    """
    uw = mollify(u, window)
    aw = mollify(pb.a, window)
    return solve_A(pb.operator, aw*uw.map(pb.nl.f), tol=1e-12)
