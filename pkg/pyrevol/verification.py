# License: BSD 3 clause

"""
Numerical checks of the properties the solvers rely on:
the convex identities of the nonlinearity, the symmetry of the operator,
the monotonicity of the linear solves, the decomposition of the cube,
the embedding of the cone and the projection on the cone.
"""

import itertools

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.optimize import minimize_scalar

from .cone import in_cone, project_cone, brute_force_projection
from .domain import Grid, GridFunction, integrate, norm_Lq, norm_Ym
from .elliptic import WeightedOperator, solve_A, derivative_bound
from .logs import setLogger
from .nonlinearity import check_assumptions


class CheckResult(object):
    """
    Result of one check.

    Attributes
    ----------

    name : string
    passed : bool
    slack : float
      the measured margin, negative when the check fails
    samples : int
      number of sampled cases
    anchor : string
      the property which is tested
    mandatory : bool
      False for the checks which are only reported
    details : dict
    """
    def __init__(self, name, passed, slack, samples, anchor, mandatory=True, details=None):
        self.name = name
        self.passed = bool(passed)
        self.slack = float(slack)
        self.samples = int(samples)
        self.anchor = anchor
        self.mandatory = mandatory
        self.details = details or {}

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        s = "[{0}] {1:<24s} slack={2: .3e} samples={3:d}{4}\n".format(status, self.name, self.slack, self.samples, '' if self.mandatory else ' (reported)')
        s += "\t {0}\n".format(self.anchor)
        return s

    def to_dict(self):
        return {'name': self.name, 'passed': self.passed, 'slack': self.slack,
                'samples': self.samples, 'anchor': self.anchor,
                'mandatory': self.mandatory, 'details': _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        x = x.item()
    if isinstance(x, float) and not np.isfinite(x):
        return str(x)
    return x


class VerificationSuiteReport(object):
    """
    The results of a run of the suite, sorted by name.
    """
    def __init__(self, checks, seed):
        self.checks = sorted(checks, key=lambda c: c.name)
        self.seed = seed

    @property
    def passed(self):
        return all(c.passed for c in self.checks if c.mandatory)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self):
        s = "Verification suite (seed={0}): {1}\n".format(self.seed, 'PASS' if self.passed else 'FAIL')
        for c in self.checks:
            s += c.__str__()
        return s

    def to_dict(self):
        return {'passed': self.passed, 'seed': self.seed,
                'checks': [c.to_dict() for c in self.checks]}


def random_cone_function(grid, rng):
    """
    return a random function of the cone with sup norm 1

    |gaussian| increments are summed along every axis in turn, which gives
    an exactly nondecreasing function.
    """
    x = np.abs(rng.standard_normal(grid.shape))
    for k in range(grid.m):
        x = np.cumsum(x, axis=k)
    return GridFunction(grid, x/x.max())


def merge_checks(name, results, anchor):
    """
    merge the results of the same check on several samples.
    """
    return CheckResult(name, all(r.passed for r in results),
                       min(r.slack for r in results),
                       sum(r.samples for r in results), anchor,
                       details={'worst': min(results, key=lambda r: r.slack).details})


CUBE_ANCHOR = "monotone functions have their largest L^q norm on the top corner cube (1/2, 1)^m"

def cube_decomposition_check(g, q, tol=1e-12):
    """
    compare the L^q norms of g on the 2^m half cubes of the unit cube

    Parameters
    ----------

    g : GridFunction
      a function of the cone on a grid with an even number of cells per axis
    q : float
    tol : float

    Returns
    -------

    CheckResult

    Notes
    -----

    Each half cube is a translate of the top corner cube A_1 = (1/2, 1)^m
    where the nondecreasing function g is larger. The check also reports
    the chain bound int_Q g^q <= 2^N int_{A_1} g^q dmu.
    """
    log = setLogger(__name__)
    grid = g.grid
    if any(s % 2 for s in grid.cells):
        log.error("The cube decomposition needs an even number of cells: {0}".format(list(grid.cells)))
        raise ValueError("every cells entry must be even for the cube decomposition")
    report = in_cone(g)
    if not report.member:
        log.error("The cube decomposition needs a function of the cone\n" + report.__str__())
        raise ValueError("cube_decomposition_check needs a function of the cone")
    m = grid.m
    x = np.abs(g.values)**q
    sh = []
    for s in grid.cells:
        sh += [2, s//2]
    # powers[c] is int_{A_c} |g|^q for the half cube of corner c in {0, 1}^m
    powers = x.reshape(sh).sum(axis=tuple(range(1, 2*m, 2)))*grid.volume
    norms = powers**(1./q)
    top = norms[(1,)*m]
    slack = float(top - norms.max()) if norms.size > 1 else 0.

    upper = np.zeros(grid.shape, dtype=bool)
    upper[tuple(slice(s//2, None) for s in grid.cells)] = True
    weighted_top = integrate(grid, np.where(upper, x, 0.))
    total = float(powers.sum())
    chain_slack = (2.**grid.spec.N*weighted_top - total)/max(1., total)
    passed = slack >= -tol and chain_slack >= -tol
    return CheckResult('cube_decomposition', passed, min(slack, chain_slack), 1, CUBE_ANCHOR,
                       details={'q': q, 'norms': norms.ravel().tolist(),
                                'powers': powers.ravel().tolist(),
                                'corner_slack': slack, 'chain_slack': chain_slack})


def _interpolate(g, grid):
    axes = g.grid.coords
    interp = RegularGridInterpolator(axes, g.values, method='linear')
    pts = [np.clip(t, c[0], c[-1]) for t, c in zip(grid.mesh(), axes)]
    return GridFunction(grid, interp(np.stack(pts, axis=-1)))


def embedding_ratio_scan(spec, grid, q, samples=20, seed=0, refinements=2, growth_tol=0.1):
    """
    scan the ratio ||g||_{L^q(Q_m)} / ||g||_{Y_m} over random functions of the cone

    Parameters
    ----------

    spec : RevolutionSpec
    grid : Grid
      the coarsest grid
    q : float
    samples : int
      number of random functions (the constant 1 is always added)
    seed : int
    refinements : int
      number of grid refinements by 2
    growth_tol : float
      maximal relative growth of the largest ratio between two levels

    Returns
    -------

    CheckResult

    Notes
    -----

    The random functions are drawn on the coarsest grid and interpolated
    linearly on the finer ones, which keeps them in the cone. The check
    passes when the largest ratio stays bounded under refinement; no value
    of the embedding constant is claimed. q = 2*_m is flagged as the
    boundary case.
    """
    log = setLogger(__name__)
    if grid.spec != spec:
        grid = Grid(spec, grid.cells)
    rng = np.random.default_rng(seed)
    profiles = [grid.constant(1.)] + [random_cone_function(grid, rng) for i in range(samples)]
    levels = [grid]
    for r in range(refinements):
        levels.append(levels[-1].refine(2))
    max_ratios = []
    constant_ratios = []
    for lev in levels:
        ratios = []
        for g in profiles:
            gl = g if lev == grid else _interpolate(g, lev)
            ratios.append(norm_Lq(lev, gl, q, weighted=False)/norm_Ym(lev, gl))
        constant_ratios.append(ratios[0])
        max_ratios.append(max(ratios))
        log.info("embedding scan on {0!r}: max ratio={1:.6g}".format(lev, max_ratios[-1]))
    growth = max(max_ratios[i+1]/max_ratios[i] - 1. for i in range(len(max_ratios) - 1)) if len(max_ratios) > 1 else 0.
    critical = spec.critical_exponent
    boundary = bool(np.isfinite(critical) and abs(q - critical) <= 1e-12*critical)
    above = bool(q > critical and not boundary)
    return CheckResult('embedding_ratio', growth <= growth_tol, growth_tol - growth,
                       (samples + 1)*len(levels),
                       "the cone embeds in L^q(Q_m) for q < 2m/(m-2): the ratio stays bounded under refinement",
                       mandatory=not (boundary or above),
                       details={'q': q, 'critical_exponent': str(critical) if np.isinf(critical) else critical,
                                'boundary_case': boundary, 'above_critical': above,
                                'cells': [list(l.cells) for l in levels],
                                'max_ratios': max_ratios, 'constant_ratios': constant_ratios,
                                'growth': growth})


def random_cone_rhs(grid, rng, degree=3):
    """
    return a random smooth right hand side of the cone:
    c_0 + sum_k sum_j c_kj t_k^j + c prod_k t_k with nonnegative coefficients.
    """
    c0 = rng.uniform()
    coefs = rng.uniform(size=(grid.m, degree))
    c = rng.uniform()
    def h(*t):
        s = c0 + c*np.prod(t, axis=0)
        for k in range(grid.m):
            for j in range(degree):
                s = s + coefs[k, j]*t[k]**(j + 1)
        return s
    return h


def _violation(v):
    report = in_cone(v)
    return max(0., -report.worst_slope, -report.min_value)


def monotone_solve_check(spec, grid, trials=5, seed=0, tol=1e-6, eps=0.):
    """
    check that the linear solves of right hand sides of the cone stay in the cone

    For every random smooth right hand side h of the cone, the most negative
    slope or value of the solution of A v = h must be below tol ||h||_inf on
    the given grid and must not grow when the grid is refined once.
    """
    log = setLogger(__name__)
    if grid.spec != spec:
        grid = Grid(spec, grid.cells)
    rng = np.random.default_rng(seed)
    fine = grid.refine(2)
    ops = [WeightedOperator(grid, eps), WeightedOperator(fine, eps)]
    slack = np.inf
    passed = True
    worst = []
    for trial in range(trials):
        h = random_cone_rhs(grid, rng)
        viol = []
        for op in ops:
            hg = op.grid.from_callable(h)
            v = solve_A(op, hg, tol=1e-12)
            viol.append(_violation(v)/hg.abs_max())
        decreases = viol[1] <= max(viol[0], 1e-15)
        passed = passed and decreases and viol[0] <= tol
        slack = min(slack, tol - viol[0])
        worst.append(viol)
        log.debug("monotone solve trial {0:d}: violations {1}".format(trial, viol))
    return CheckResult('monotone_solve', passed, slack, trials,
                       "the solution of A v = h is in the cone when h is in the cone",
                       details={'violations': worst, 'cells': [list(grid.cells), list(fine.cells)]})


def biconjugate(nl, t, s_max, points=20001):
    """
    return F**(t) = sup_s {t s - F*(s)} by a brute force search on
    [-s_max, s_max] polished by a bounded scalar maximization.
    """
    s = np.linspace(-s_max, s_max, points)
    Fs = nl.Fstar(s)
    ds = s[1] - s[0]
    out = np.empty(len(t))
    for i, ti in enumerate(t):
        j = int(np.argmax(ti*s - Fs))
        lo, hi = max(-s_max, s[j] - ds), min(s_max, s[j] + ds)
        res = minimize_scalar(lambda x: nl.Fstar(x) - ti*x, bounds=(lo, hi),
                              method='bounded', options={'xatol': 1e-13})
        out[i] = max(ti*s[j] - Fs[j], -res.fun)
    return out


def convex_identity_suite(nl, samples=10000, t_max=10.):
    """
    check the convex identities of a nonlinearity

    - Fenchel-Young inequality F(t) + F*(s) >= t s, with equality for s = f(t),
    - biconjugacy F** = F on [-t_max, t_max],
    - t f(t) >= mu F(t) and mu/(mu-1) F*(s) >= s (F*)'(s),
    - the doubling bound F*(2s) <= 2 ell F*(s),
    - the assumptions of :py:func:`check_assumptions <pyrevol.nonlinearity.check_assumptions>`.

    The slacks are relative to max(1, |reference|).
    """
    log = setLogger(__name__)
    t_end = min(t_max, nl.t_max)
    s_end = float(nl.f(t_end))
    n = max(2, int(np.sqrt(samples)))
    t = np.linspace(-t_end, t_end, n)
    s = np.linspace(-s_end, s_end, n)
    T, S = np.meshgrid(t, s, indexing='ij')
    fy = (nl.F(T) + nl.Fstar(S) - T*S)/np.maximum(1., np.abs(T*S))
    slacks = {'fenchel_young': float(fy.min())}
    ft = nl.f(t)
    eq = np.abs(nl.F(t) + nl.Fstar(ft) - t*ft)/np.maximum(1., np.abs(t*ft))
    slacks['fenchel_young_equality'] = 1e-10 - float(eq.max())

    tb = np.linspace(-t_end, t_end, 201)
    bic = np.abs(biconjugate(nl, tb, s_end) - nl.F(tb))
    slacks['biconjugacy'] = 1e-8 - float(bic.max())

    tp = np.linspace(0., t_end, samples)[1:]
    tf = tp*nl.f(tp)
    slacks['mu_primal'] = float(np.min((tf - nl.mu*nl.F(tp))/np.maximum(1., tf)))
    sp_ = np.linspace(0., s_end, samples)[1:]
    sd = sp_*nl.Fstar_prime(sp_)
    slacks['mu_conjugate'] = float(np.min((nl.mu/(nl.mu - 1)*nl.Fstar(sp_) - sd)/np.maximum(1., sd)))

    assumptions = check_assumptions(nl, samples=samples, t_max=t_max)
    slacks['doubling'] = float(assumptions.slacks['doubling'])

    # the equality and biconjugacy slacks already hold their tolerance
    flags = {k: v >= (0. if k in ('fenchel_young_equality', 'biconjugacy') else -1e-10)
             for k, v in slacks.items()}
    failed = [k for k, v in flags.items() if not v] + ['assumption:' + k for k in assumptions.failed]
    passed = not failed
    log.info("convex identities: {0}".format(slacks))
    return CheckResult('convex_identities', passed, min(slacks.values()), n*n + len(tb) + 2*samples,
                       "Fenchel-Young, biconjugacy, mu-inequalities and doubling bound of F*",
                       details={'slacks': slacks, 'failed': failed,
                                'doubling': assumptions.doubling,
                                'doubling_bound': assumptions.doubling_bound,
                                'assumptions': assumptions.to_dict()})


def operator_symmetry_check(grid, pairs=100, seed=0, eps=0., tol=1e-12):
    """
    check the symmetry and the positivity of A on random pairs

    The asymmetry |<Au, v> - <u, Av>| is relative to ||u||_Y ||v||_Y and
    <Au, u> is compared with norm_Ym(u)^2.
    """
    rng = np.random.default_rng(seed)
    op = WeightedOperator(grid, eps)
    asym, energy = 0., 0.
    positive = True
    for i in range(pairs):
        u = GridFunction(grid, rng.standard_normal(grid.shape))
        v = GridFunction(grid, rng.standard_normal(grid.shape))
        Au, Av = op(u), op(v)
        nu, nv = norm_Ym(grid, u, eps), norm_Ym(grid, v, eps)
        asym = max(asym, abs(op.inner(Au, v) - op.inner(u, Av))/(nu*nv))
        uAu = op.inner(Au, u)
        positive = positive and uAu > 0
        energy = max(energy, abs(uAu - nu**2)/nu**2)
    passed = positive and asym <= tol and energy <= tol
    return CheckResult('operator_symmetry', passed, tol - max(asym, energy), pairs,
                       "A is symmetric positive definite for the weighted inner product and <Au, u> = ||u||_Y^2",
                       details={'asymmetry': asym, 'energy_identity': energy, 'positive': positive,
                                'cells': list(grid.cells), 'eps': eps})


def projection_oracle_check(grid, trials=50, seed=0, tol=1e-6):
    """
    compare the projection on the cone with the non negative least squares oracle
    on a grid of at most 25 cells.
    """
    rng = np.random.default_rng(seed)
    err = 0.
    for i in range(trials):
        g = GridFunction(grid, rng.standard_normal(grid.shape))
        err = max(err, float(np.abs(project_cone(g).values - brute_force_projection(g).values).max()))
    return CheckResult('projection_oracle', err <= tol, tol - err, trials,
                       "the alternating projections give the Euclidean projection on the cone",
                       details={'max_error': err, 'cells': list(grid.cells)})


def small_grids(m, size=25):
    """
    return the shapes of the grids with m axes and at most size cells.
    """
    shapes = []
    for cells in itertools.product(range(1, size + 1), repeat=m):
        if np.prod(cells) <= size:
            shapes.append(cells)
    return shapes


def derivative_bound_check(grid, seed=0, eps=0.):
    """
    report the ratio of the derivatives of the solution of A v = h to t_k + eps
    for a random smooth h of the cone (not mandatory).
    """
    rng = np.random.default_rng(seed)
    op = WeightedOperator(grid, eps)
    h = grid.from_callable(random_cone_rhs(grid, rng))
    v = solve_A(op, h, tol=1e-12)
    res = derivative_bound(op, v, h)
    return CheckResult('derivative_bound', res['passed'], 2*res['bound'] - res['ratio'], 1,
                       "the derivatives of the solution divided by t_k + eps are bounded by the C^{1,1} norm of h",
                       mandatory=False, details=res)


def default_exponent(spec):
    return 4. if spec.is_subcritical(4.) else 2.


def run_suite(nl, spec, grid=None, q=None, samples=20, trials=5, seed=0, pairs=100):
    """
    run all the checks

    Parameters
    ----------

    nl : Nonlinearity
    spec : RevolutionSpec
    grid : Grid
      grid of the operator checks (default 16 cells per axis)
    q : float
      exponent of the cube decomposition and of the embedding scan
      (default 4 if it is below 2*_m, else 2)
    samples : int
      number of random functions of the cone
    trials : int
      number of random right hand sides of the monotone solve check
    seed : int
    pairs : int
      number of random pairs of the symmetry check

    Returns
    -------

    VerificationSuiteReport
    """
    log = setLogger(__name__)
    if grid is None:
        grid = Grid(spec, [16]*spec.m)
    if q is None:
        q = default_exponent(spec)
    rng = np.random.default_rng(seed)

    checks = [convex_identity_suite(nl)]
    checks.append(operator_symmetry_check(grid, pairs, seed))

    even = grid if not any(s % 2 for s in grid.cells) else grid.refine(2)
    cube = [cube_decomposition_check(random_cone_function(even, rng), q) for i in range(samples)]
    cube.append(cube_decomposition_check(even.constant(1.), q))
    checks.append(merge_checks('cube_decomposition', cube, CUBE_ANCHOR))

    coarse = Grid(spec, [max(2, s//4) for s in grid.cells])
    checks.append(embedding_ratio_scan(spec, coarse, q, samples, seed))
    checks.append(monotone_solve_check(spec, grid, trials, seed))
    checks.append(derivative_bound_check(grid, seed))

    side = int(np.floor(25**(1./spec.m) + 1e-12))
    checks.append(projection_oracle_check(Grid(spec, [side]*spec.m), trials=samples, seed=seed))

    report = VerificationSuiteReport(checks, seed)
    log.info(report.__str__())
    return report
