# License: BSD 3 clause

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .logs import setLogger

POWER = 'power'
TABULATED = 'tabulated'


class OutOfRangeError(ValueError):
    """
    raised when a tabulated nonlinearity is evaluated outside its table.
    """
    pass


def _head_exponent(t, f):
    # log-slope of the first two samples after 0
    if t.size < 3:
        return 1.
    return float(np.log(f[2]/f[1])/np.log(t[2]/t[1]))


def _primitive(t, f, r):
    """
    F at the nodes: f ~ t^r on the first cell, trapezoids on the others.
    """
    F1 = f[1]*t[1]/(r + 1)
    return np.concatenate(([0.], F1 + cumulative_trapezoid(f[1:], t[1:], initial=0.)))


def _ratio_bounds(t, f, F, r):
    """
    exact extrema of t f(t)/F(t) over the interpolant.

    On the first cell the ratio is r + 1. On the other cells it is a ratio
    of two quadratics N/D whose critical points solve
    (a2 b1 - a1 b2) x^2 + 2 (a2 b0 - a0 b2) x + (a1 b0 - a0 b1) = 0.
    """
    ti, fi, Fi = t[1:-1], f[1:-1], F[1:-1]
    L = np.diff(t)[1:]
    k = np.diff(f)[1:]/L
    a2, a1, a0 = k, fi + k*ti, ti*fi
    b2, b1, b0 = 0.5*k, fi, Fi
    A = a2*b1 - a1*b2
    B = 2*(a2*b0 - a0*b2)
    C = a1*b0 - a0*b1
    disc = np.sqrt(np.maximum(B**2 - 4*A*C, 0.))
    safe = np.where(A == 0, 1., A)
    candidates = [np.zeros_like(L), L,
                  np.where(A == 0, -C/np.where(B == 0, 1., B), (-B + disc)/(2*safe)),
                  np.where(A == 0, 0., (-B - disc)/(2*safe))]
    lo = hi = r + 1
    for x in candidates:
        x = np.clip(x, 0., L)
        R = (a2*x**2 + a1*x + a0)/(b2*x**2 + b1*x + b0)
        if R.size:
            lo, hi = min(lo, R.min()), max(hi, R.max())
    return float(lo), float(hi)


def _nodal_ratio(t, f, F, r):
    """
    largest ratio t f(t)/F(t) at the samples and on the first cell (r + 1).
    """
    return float(max(r + 1, np.max(t[1:]*f[1:]/F[1:])))


class Nonlinearity(object):
    """
    Convex machinery of the nonlinearity f: the primitive F,
    the Fenchel conjugate F* and its derivative.

    Parameters
    ----------

    kind : string
      'power' or 'tabulated'
    p : float
      growth exponent
    mu : float
      constant of the Ambrosetti-Rabinowitz type inequality t f(t) >= mu F(t)
    ell : float
      constant of the nabla_2 inequality 2 ell F(t) <= F(ell t)
    growth_C : float
      constant C of the growth bound |f(t)| <= C (1 + |t|^(p-1))
    table : tuple of two numpy arrays, optional
      the samples (t, f(t)) of a tabulated nonlinearity

    Attributes
    ----------

    q : float
      conjugate exponent p/(p-1)

    Notes
    -----

    F is even: F(t) = F(|t|), and f is extended as an odd function.
    Instances are never modified after construction.

    Use :py:func:`make_power` or :py:func:`make_tabulated`
    instead of the constructor.
    """
    def __init__(self, kind, p, mu, ell, growth_C, table=None, head_exponent=None):
        self.log = setLogger(__name__)
        if kind not in (POWER, TABULATED):
            self.log.error("Unknown kind of nonlinearity: {0}".format(kind))
            raise ValueError("unknown kind of nonlinearity {0!r}".format(kind))
        self.kind = kind
        self.p = float(p)
        self.mu = float(mu)
        self.ell = float(ell)
        self.growth_C = float(growth_C)

        if table is not None:
            t, f = table
            self._t = np.array(t, dtype='f8')
            self._f = np.array(f, dtype='f8')
            self._r = float(head_exponent) if head_exponent is not None else _head_exponent(self._t, self._f)
            self._F = _primitive(self._t, self._f, self._r)
            self._slope = np.diff(self._f)/np.diff(self._t)
            for a in (self._t, self._f, self._F, self._slope):
                a.setflags(write=False)

    @property
    def q(self):
        return self.p/(self.p - 1.)

    @property
    def t_max(self):
        """
        largest admissible |t| (infinite for a power).
        """
        return np.inf if self.kind == POWER else self._t[-1]

    @property
    def s_max(self):
        """
        largest admissible |s| for the conjugate (infinite for a power).
        """
        return np.inf if self.kind == POWER else self._f[-1]

    def __str__(self):
        if self.kind == POWER:
            s = "Power nonlinearity f(t) = t^{0:g}\n".format(self.p - 1)
        else:
            s = "Tabulated nonlinearity ({0:d} samples on [0, {1:g}], f(t) ~ t^{2:g} near 0)\n".format(self._t.size, self._t[-1], self._r)
        s += "\t p={0:g}, q={1:g}, mu={2:g}, ell={3:g}, C={4:g}\n".format(self.p, self.q, self.mu, self.ell, self.growth_C)
        return s

    def to_dict(self):
        d = {'type': self.kind, 'p': self.p, 'mu': self.mu,
             'ell': self.ell, 'growth_C': self.growth_C}
        if self.kind == TABULATED:
            d['samples'] = int(self._t.size)
            d['head_exponent'] = self._r
        return d

    def _check_range(self, x, bound, what):
        if np.any(np.abs(x) > bound*(1 + 1e-14)):
            self.log.error("{0} outside the table: max |{0}| = {1:g} > {2:g}".format(what, np.max(np.abs(x)), bound))
            raise OutOfRangeError("{0} = {1:g} is outside the tabulated range [0, {2:g}]".format(what, np.max(np.abs(x)), bound))

    def _segment(self, x, nodes):
        # bisection in a strictly increasing table
        i = np.searchsorted(nodes, x, side='right') - 1
        return np.clip(i, 0, nodes.size - 2)

    def f(self, t):
        t = np.asarray(t, dtype='f8')
        if self.kind == POWER:
            return np.sign(t)*np.abs(t)**(self.p - 1)
        at = np.abs(t)
        self._check_range(at, self._t[-1], 't')
        t1, f1 = self._t[1], self._f[1]
        head = f1*(np.minimum(at, t1)/t1)**self._r
        return np.sign(t)*np.where(at < t1, head, np.interp(at, self._t, self._f))

    def F(self, t):
        t = np.asarray(t, dtype='f8')
        at = np.abs(t)
        if self.kind == POWER:
            return at**self.p/self.p
        self._check_range(at, self._t[-1], 't')
        t1, f1 = self._t[1], self._f[1]
        head = f1*t1/(self._r + 1)*(np.minimum(at, t1)/t1)**(self._r + 1)
        i = self._segment(at, self._t)
        dt = at - self._t[i]
        return np.where(at < t1, head, self._F[i] + self._f[i]*dt + 0.5*self._slope[i]*dt**2)

    def f_inverse(self, s):
        """
        inverse of f on [0, infinity), extended as an odd function.
        """
        s = np.asarray(s, dtype='f8')
        if self.kind == POWER:
            return np.sign(s)*np.abs(s)**(1./(self.p - 1))
        a = np.abs(s)
        self._check_range(a, self._f[-1], 's')
        t1, f1 = self._t[1], self._f[1]
        head = t1*(np.minimum(a, f1)/f1)**(1./self._r)
        i = self._segment(a, self._f)
        return np.sign(s)*np.where(a < f1, head, self._t[i] + (a - self._f[i])/self._slope[i])

    def Fstar(self, s):
        s = np.asarray(s, dtype='f8')
        a = np.abs(s)
        if self.kind == POWER:
            return a**self.q/self.q
        t0 = self.f_inverse(a)
        return a*t0 - self.F(t0)

    def Fstar_prime(self, s):
        return self.f_inverse(s)


def make_power(p):
    """
    return the power nonlinearity f(t) = t^(p-1)

    Parameters
    ----------

    p : float
      exponent, must be larger than 2

    Returns
    -------

    Nonlinearity with mu = p, ell = 2^(1/(p-1)) and growth_C = 1
    """
    log = setLogger(__name__)
    p = float(p)
    if not p > 2:
        log.error("The exponent p must be larger than 2 (got {0:g})".format(p))
        raise ValueError("p = {0:g} violates mu > 2: the exponent must be larger than 2".format(p))
    return Nonlinearity(POWER, p, mu=p, ell=2.**(1./(p - 1)), growth_C=1.)


def make_tabulated(t, f, p=None, mu=None, ell=None, growth_C=1., head_exponent=None):
    """
    return a nonlinearity given by samples of f on [0, t_max]

    Parameters
    ----------

    t : array
      strictly increasing abscissae starting at 0
    f : array
      strictly increasing values with f(0) = 0
    p : float, optional
      growth exponent (default: largest ratio t f(t)/F(t) at the samples)
    mu : float, optional
      (default: smallest ratio t f(t)/F(t) over the interpolant)
    ell : float, optional
      (default: 2^(1/(mu-1)))
    growth_C : float
      growth constant, taken as given
    head_exponent : float, optional
      exponent r of f(t) = f_1 (t/t_1)^r on the first cell
      (default: log-slope of the first two samples after 0, 1 with two samples)

    Notes
    -----

    f is interpolated linearly between the samples, except on the first
    cell [0, t_1] where it is a power of t so that f'(0) = 0 can hold.
    F is the exact primitive of the interpolant and f^(-1) is found by
    bisection in the table. The smallest ratio t f(t)/F(t) is computed
    exactly on every cell. The slope of the interpolant jumps at the samples,
    which lifts the ratio between them above the growth of the sampled
    function, so the default p is taken at the samples.
    """
    log = setLogger(__name__)
    t = np.asarray(t, dtype='f8').ravel()
    f = np.asarray(f, dtype='f8').ravel()
    if t.size != f.size or t.size < 2:
        log.error("A table needs two columns of the same length (at least 2 rows)")
        raise ValueError("a table needs at least two samples of (t, f(t))")
    if t[0] != 0. or f[0] != 0.:
        log.error("The table must start at (0, 0): got ({0:g}, {1:g})".format(t[0], f[0]))
        raise ValueError("the table must start at t = 0 with f(0) = 0")
    if np.any(np.diff(t) <= 0) or np.any(np.diff(f) <= 0):
        log.error("The columns of the table must be strictly increasing")
        raise ValueError("t and f(t) must be strictly increasing")

    r = float(head_exponent) if head_exponent is not None else _head_exponent(t, f)
    if not r > 0:
        log.error("The exponent of the first cell must be positive (got {0:g})".format(r))
        raise ValueError("head_exponent must be > 0")
    F = _primitive(t, f, r)
    if mu is None:
        mu = _ratio_bounds(t, f, F, r)[0]
    if p is None:
        p = _nodal_ratio(t, f, F, r)
    if ell is None:
        ell = 2.**(1./(mu - 1))
    return Nonlinearity(TABULATED, p, mu, ell, growth_C, table=(t, f), head_exponent=r)


def _is_numeric_row(line, delimiter):
    try:
        [float(x) for x in line.split(delimiter)]
    except ValueError:
        return False
    return True


def load_table(path, **kwargs):
    """
    read a two-column text file (t, f(t)) and return the tabulated nonlinearity.

    The columns are separated by commas or blanks; a first line which is
    not numeric is taken as a header.
    """
    with open(path) as f:
        lines = [l for l in f.read().splitlines() if l.strip() and not l.lstrip().startswith('#')]
    delimiter = ',' if lines and ',' in lines[0] else None
    if lines and not _is_numeric_row(lines[0], delimiter):
        lines = lines[1:]
    data = np.loadtxt(lines, delimiter=delimiter, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError("{0}: expected two columns, found {1}".format(path, data.shape[1]))
    return make_tabulated(data[:, 0], data[:, 1], **kwargs)


def eval_f(nl, t):
    return nl.f(t)

def eval_F(nl, t):
    return nl.F(t)

def eval_Fstar(nl, s):
    return nl.Fstar(s)

def eval_Fstar_prime(nl, s):
    return nl.Fstar_prime(s)


class AssumptionReport(object):
    """
    Result of :py:func:`check_assumptions`.

    Attributes
    ----------

    flags : dict
      name -> bool
    slacks : dict
      name -> worst relative slack (negative when the inequality breaks)
    doubling : float
      computed constant L = max F*(2s)/F*(s)
    doubling_bound : float
      the bound 2 ell
    samples : int
    """
    def __init__(self, flags, slacks, doubling, doubling_bound, samples):
        self.flags = flags
        self.slacks = slacks
        self.doubling = doubling
        self.doubling_bound = doubling_bound
        self.samples = samples

    @property
    def passed(self):
        return all(self.flags.values())

    @property
    def failed(self):
        return [k for k, v in self.flags.items() if not v]

    def __str__(self):
        s = "Assumptions on the nonlinearity ({0:d} samples)\n".format(self.samples)
        for k in self.flags:
            s += "\t {0:<12s}: {1:<5s} slack={2: .3e}\n".format(k, str(self.flags[k]), self.slacks[k])
        s += "\t doubling constant L={0:.12g} (bound 2 ell={1:.12g})\n".format(self.doubling, self.doubling_bound)
        return s

    def to_dict(self):
        return {'passed': self.passed,
                'failed': self.failed,
                'flags': dict(self.flags),
                'slacks': {k: float(v) for k, v in self.slacks.items()},
                'doubling': float(self.doubling),
                'doubling_bound': float(self.doubling_bound),
                'samples': self.samples}


def _relative(x, scale):
    return np.min(x/np.maximum(1., np.abs(scale)))

def check_assumptions(nl, samples=1000, t_max=10., tol=1e-12):
    """
    check monotonicity, growth, the mu-inequalities, the nabla_2
    inequality and the doubling bound of F* on sampled points of [0, t_max].

    Parameters
    ----------

    nl : Nonlinearity
    samples : int
      number of sample points (at least 2)
    t_max : float
      upper sample bound for a power (the table end is used otherwise)
    tol : float
      relative tolerance on the inequalities

    Returns
    -------

    AssumptionReport
    """
    log = setLogger(__name__)
    samples = int(samples)
    if samples < 2:
        log.error("At least 2 samples are needed")
        raise ValueError("samples must be >= 2")
    t_end = min(t_max, nl.t_max)
    t = np.linspace(0., t_end, samples)
    tp = t[1:]
    f = nl.f(t)
    F = nl.F(t)
    flags, slacks = {}, {}

    slacks['monotone'] = _relative(np.diff(f), f[1:])
    flags['monotone'] = bool(f[0] == 0. and np.all(np.diff(f) > 0))

    bound = nl.growth_C*(1 + tp**(nl.p - 1))
    slacks['growth'] = _relative(bound - f[1:], bound)
    flags['growth'] = bool(slacks['growth'] >= -tol)

    tf = tp*f[1:]
    slacks['mu'] = _relative(tf - nl.mu*F[1:], tf)
    flags['mu'] = bool(nl.mu > 2 and slacks['mu'] >= -tol)

    tl = t[t*nl.ell <= t_end][1:]
    if tl.size:
        Fl = nl.F(nl.ell*tl)
        slacks['nabla2'] = _relative(Fl - 2*nl.ell*nl.F(tl), Fl)
    else:
        slacks['nabla2'] = -np.inf
    flags['nabla2'] = bool(nl.ell > 1 and slacks['nabla2'] >= -tol)

    s = np.linspace(0., f[-1], samples)[1:]
    Fs = nl.Fstar(s)
    sd = s*nl.Fstar_prime(s)
    slacks['mu_conjugate'] = _relative(nl.mu/(nl.mu - 1)*Fs - sd, sd)
    flags['mu_conjugate'] = bool(slacks['mu_conjugate'] >= -tol)

    half = s[2*s <= f[-1]]
    doubling = np.max(nl.Fstar(2*half)/nl.Fstar(half)) if half.size else np.inf
    doubling_bound = 2*nl.ell
    slacks['doubling'] = (doubling_bound - doubling)/doubling_bound
    flags['doubling'] = bool(slacks['doubling'] >= -tol)

    report = AssumptionReport(flags, slacks, doubling, doubling_bound, samples)
    log.info(report.__str__())
    return report
