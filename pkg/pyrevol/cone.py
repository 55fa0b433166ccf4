# License: BSD 3 clause

"""
The cone of the nonnegative functions which are nondecreasing
along every axis of the cube.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.optimize import isotonic_regression, nnls
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .domain import GridFunction
from .logs import setLogger


class ConeProjectionError(RuntimeError):
    """
    raised when the alternating projections do not converge.

    Attributes
    ----------

    gap : float
      the last constraint gap
    """
    def __init__(self, message, gap):
        RuntimeError.__init__(self, message)
        self.gap = gap


class ConeReport(object):
    """
    Membership of a grid function in the cone.

    Attributes
    ----------

    member : bool
    min_value : float
      smallest value of the function
    worst_slope : float
      most negative forward difference over all axes
    slopes : list of float
      the most negative forward difference along each axis
    violating_axes : list of int
      the axes where the function decreases by more than tol
    tol : float
    """
    def __init__(self, min_value, slopes, tol):
        self.min_value = float(min_value)
        self.slopes = [float(s) for s in slopes]
        self.worst_slope = min(self.slopes) if self.slopes else 0.
        self.tol = tol
        self.violating_axes = [k for k, s in enumerate(self.slopes) if s < -tol]
        self.member = self.min_value >= -tol and not self.violating_axes

    def __bool__(self):
        return self.member

    def __str__(self):
        s = "Cone membership: {0}\n".format(self.member)
        s += "\t min value={0:.6e}, worst slope={1:.6e} (tol={2:g})\n".format(self.min_value, self.worst_slope, self.tol)
        if self.violating_axes:
            s += "\t violating axes: {0}\n".format(self.violating_axes)
        return s

    def to_dict(self):
        return {'member': self.member,
                'min_value': self.min_value,
                'worst_slope': self.worst_slope,
                'slopes': self.slopes,
                'violating_axes': self.violating_axes,
                'tol': self.tol}


def forward_differences(g):
    """
    return the list of the forward differences of g along each axis.
    """
    v = g.values if isinstance(g, GridFunction) else np.asarray(g)
    return [np.diff(v, axis=k) for k in range(v.ndim)]


def _worst_slopes(v):
    return [d.min() if d.size else 0. for d in forward_differences(v)]


def in_cone(g, tol=0.):
    """
    test if g is nonnegative and nondecreasing along every axis

    Parameters
    ----------

    g : GridFunction
    tol : float
      absolute tolerance on the values and on the forward differences

    Returns
    -------

    ConeReport
    """
    return ConeReport(g.values.min(), _worst_slopes(g.values), tol)


def _isotonic_lines(x, axis):
    if x.shape[axis] < 2:
        return x
    lines = np.moveaxis(x, axis, -1)
    sh = lines.shape
    lines = lines.reshape(-1, sh[-1])
    out = np.empty_like(lines)
    for i, y in enumerate(lines):
        out[i] = isotonic_regression(y, increasing=True).x
    return np.moveaxis(out.reshape(sh), -1, axis)


def _violation(x):
    return max([0.] + [-s for s in _worst_slopes(x)] + [-x.min()])


def _monotone_repair(x):
    """
    return the smallest function of the cone above x (running maxima along every axis).
    """
    q = np.maximum(x, 0.)
    for k in range(q.ndim):
        q = np.maximum.accumulate(q, axis=k)
    return q


def _blocks(q, delta):
    """
    label the connected sets of cells where neighbours differ by at most delta.
    """
    idx = np.arange(q.size).reshape(q.shape)
    rows, cols = [], []
    for k in range(q.ndim):
        close = np.abs(np.diff(q, axis=k)) <= delta
        lower = np.take(idx, np.arange(q.shape[k] - 1), axis=k)
        upper = np.take(idx, np.arange(1, q.shape[k]), axis=k)
        rows.append(lower[close])
        cols.append(upper[close])
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(rows.size), (rows, cols)), shape=(q.size, q.size))
    return connected_components(graph, directed=False)[1]


def _polish(g, x, delta, tol):
    """
    return the projection guessed from the blocks of the Dykstra iterate x,
    None when the guess fails the optimality test.

    Every block of the projection takes the mean of g over the block
    (or 0 on the block of the zeros), and the residual g - p has nonpositive
    sums over all the up-sets. The sums are tested on the up-sets
    {q >= theta} of the monotone repair q of x.
    """
    q = _monotone_repair(x)
    labels = _blocks(q, delta)
    counts = np.bincount(labels)
    means = np.bincount(labels, weights=g.ravel())/counts
    tops = np.zeros(counts.size)
    np.maximum.at(tops, labels, q.ravel())
    means[tops <= delta] = 0.
    p = means[labels].reshape(g.shape)
    if _violation(p) > tol or np.abs(p - x).max() > delta:
        return None
    order = np.argsort(-q.ravel(), kind='stable')
    levels = q.ravel()[order]
    sums = np.cumsum((g - p).ravel()[order])
    ends = np.append(levels[1:] < levels[:-1], True)
    if sums[ends].max() > tol*g.size:
        return None
    return p


def project_cone(g, tol=1e-10, max_cycles=200, polish_tol=1e-8):
    """
    return the nearest element of the cone for the Euclidean norm of the values

    Parameters
    ----------

    g : GridFunction
    tol : float
      relative tolerance on the change between two cycles and on the
      remaining monotonicity violation
    max_cycles : int
      maximal number of Dykstra cycles
    polish_tol : float
      relative change between two cycles below which the exact
      block solution is tried

    Returns
    -------

    GridFunction

    Notes
    -----

    The cone is the intersection of the sets of the functions nondecreasing
    along the axis k (k = 1, ..., m) and of the nonnegative functions.
    Dykstra's alternating projections cycle over these sets in this order.
    The projection on the first ones is the isotonic regression
    (pool adjacent violators) of every grid line along the axis,
    the last one is a clamp at 0.

    Dykstra converges linearly, and slowly once the iterate is close.
    When the change is below polish_tol, the cells are grouped in blocks of
    nearly equal values and the projection is computed exactly as the block
    means. The block solution is returned when it is in the cone and
    satisfies the optimality test on the up-sets, otherwise the cycles go on
    with a smaller grouping threshold.
    """
    log = setLogger(__name__)
    x = g.values.copy()
    if in_cone(g).member:
        return GridFunction(g.grid, x)
    m = x.ndim
    g_values = g.values
    scale = max(1., np.abs(x).max())
    increments = [np.zeros_like(x) for j in range(m + 1)]
    gap = np.inf
    for cycle in range(max_cycles):
        x_old = x
        for j in range(m + 1):
            y = x + increments[j]
            if j < m:
                x = _isotonic_lines(y, j)
            else:
                x = np.maximum(y, 0.)
            increments[j] = y - x
        change = np.abs(x - x_old).max()
        violation = _violation(x)
        gap = max(change, violation)
        log.debug("Dykstra cycle {0:d}: change={1:.3e}, violation={2:.3e}".format(cycle, change, violation))
        if change <= polish_tol*scale:
            p = _polish(g_values, x, max(1e3*change, tol*scale), tol*scale)
            if p is not None:
                log.debug("exact block solution after {0:d} cycles".format(cycle + 1))
                return GridFunction(g.grid, p)
        if change <= tol*scale and violation <= tol*scale:
            return GridFunction(g.grid, _monotone_repair(x))
    log.error("The projection on the cone did not converge in {0:d} cycles (gap={1:.3e})".format(max_cycles, gap))
    raise ConeProjectionError("projection on the cone did not converge in {0:d} cycles".format(max_cycles), gap)


def mollify(g, window):
    """
    return the backward window average of a function of the cone

    Parameters
    ----------

    g : GridFunction
      a function of the cone
    window : int
      each value is replaced by the mean of g over the cells
      i - window, ..., i along every axis, g being extended by 0
      before the first cell

    Returns
    -------

    GridFunction
      a function of the cone, smaller than g at every cell
    """
    log = setLogger(__name__)
    window = int(window)
    if window < 0:
        log.error("The window must be nonnegative (got {0:d})".format(window))
        raise ValueError("window must be >= 0")
    report = in_cone(g)
    if not report.member:
        log.error("Only the functions of the cone can be mollified\n" + report.__str__())
        raise ValueError("mollify needs a function of the cone (min={0:g}, worst slope={1:g})".format(report.min_value, report.worst_slope))
    x = g.values
    if window == 0:
        return GridFunction(g.grid, x.copy())
    for k in range(x.ndim):
        pad = [(0, 0)]*x.ndim
        pad[k] = (window, 0)
        xp = np.pad(x, pad)
        x = sliding_window_view(xp, window + 1, axis=k).mean(axis=-1)
    return GridFunction(g.grid, x)


def up_sets(shape):
    """
    return all the up-sets of the product order on the cells of a grid

    Parameters
    ----------

    shape : tuple of int

    Returns
    -------

    numpy array of bool, of shape (number of up-sets,) + shape

    Notes
    -----

    An up-set of the first axis direction is a nested family of up-sets
    of the remaining axes: the slices are enumerated recursively and only
    the chains for the inclusion are kept.
    """
    s = shape[0]
    if len(shape) == 1:
        return np.array([np.arange(s) >= c for c in range(s, -1, -1)])
    subs = up_sets(shape[1:])
    nsub = subs.shape[0]
    flat = subs.reshape(nsub, -1)
    # included[a, b] is True when subs[a] is a subset of subs[b]
    included = np.array([[np.all(flat[a] <= flat[b]) for b in range(nsub)] for a in range(nsub)])
    result = []

    def chains(prefix):
        if len(prefix) == s:
            result.append(subs[prefix])
            return
        for b in range(nsub):
            if not prefix or included[prefix[-1], b]:
                chains(prefix + [b])

    chains([])
    return np.array(result)


def brute_force_projection(g):
    """
    return the projection of g on the cone by non negative least squares

    The cone is generated by the indicator functions of the up-sets of
    the grid, so that the projection is the solution of a non negative
    least squares problem on these generators. Only for small grids.
    """
    log = setLogger(__name__)
    if g.grid.size > 25:
        log.error("The brute force projection is limited to 25 cells ({0:d} given)".format(g.grid.size))
        raise ValueError("brute force projection needs at most 25 cells")
    generators = up_sets(g.grid.shape).reshape(-1, g.grid.size).astype('f8')
    generators = generators[generators.sum(axis=1) > 0]
    coef, res = nnls(generators.T, g.values.ravel())
    return GridFunction(g.grid, generators.T.dot(coef))
