# License: BSD 3 clause

import numpy as np

from .domain import GridFunction
from .logs import setLogger

# stagnation of CG within this factor of the tolerance is logged at the debug level
FLOOR_FACTOR = 1e3


class LinearSolveError(RuntimeError):
    """
    raised when the conjugate gradient reaches its iteration cap.

    Attributes
    ----------

    residual : float
      the last relative residual
    """
    def __init__(self, message, residual):
        RuntimeError.__init__(self, message)
        self.residual = residual


def _along(ndim, k, sl):
    s = [slice(None)]*ndim
    s[k] = sl
    return tuple(s)


class WeightedOperator(object):
    """
    The operator A = -Lap_t - sum_k (n_k - 1)/(t_k + eps) d/dt_k + id
    with homogeneous Neumann conditions on the faces of the cube.

    Parameters
    ----------

    grid : Grid
    eps : float
      regularization of the singular coefficients (default 0)

    Attributes
    ----------

    grid : Grid
    eps : float
    weights : numpy array
      the cell weights prod_k (t_k + eps)^(n_k - 1)
    face_weights : list of numpy arrays
      the weights of the interior faces orthogonal to the axis k,
      divided by h_k^2

    Notes
    -----

    The operator is written in divergence form

    .. math::

        (Ag)_i = g_i - \\frac{1}{w_i} \\sum_k \\frac{W_{i+1/2}(g_{i+1}-g_i) - W_{i-1/2}(g_i - g_{i-1})}{h_k^2}

    where the flux through the boundary faces is zero.
    It is symmetric positive definite for the inner product
    weighted by the cell weights.
    """
    def __init__(self, grid, eps=0.):
        self.log = setLogger(__name__)
        if eps < 0:
            self.log.error("The regularization eps must be nonnegative (got {0:g})".format(eps))
            raise ValueError("eps must be >= 0")
        self.grid = grid
        self.eps = float(eps)
        self.weights = grid.weights(self.eps)
        self.face_weights = [grid.face_weights(k, self.eps)/grid.h[k]**2 for k in range(grid.m)]
        self._dvol = self.weights*grid.volume
        for a in [self.weights, self._dvol] + self.face_weights:
            a.setflags(write=False)

    @property
    def default_max_iter(self):
        """
        default cap of the conjugate gradient: 50 (total cells)^(1/m).
        """
        return int(np.ceil(50*self.grid.size**(1./self.grid.m)))

    def _check(self, g):
        if g.grid != self.grid:
            self.log.error("The function lives on {0!r}, the operator on {1!r}".format(g.grid, self.grid))
            raise ValueError("grid mismatch: {0!r} and {1!r}".format(g.grid, self.grid))
        return g.values

    def apply_values(self, x):
        div = np.zeros_like(x)
        for k, W in enumerate(self.face_weights):
            flux = W*np.diff(x, axis=k)
            div[_along(x.ndim, k, slice(None, -1))] += flux
            div[_along(x.ndim, k, slice(1, None))] -= flux
        return x - div/self.weights

    def __call__(self, g):
        return GridFunction(self.grid, self.apply_values(self._check(g)))

    def inner_values(self, x, y):
        return float(np.sum(x*y*self._dvol))

    def inner(self, u, v):
        """
        inner product of u and v for the measure weighted by (t + eps).
        """
        return self.inner_values(self._check(u), self._check(v))

    def norm(self, u):
        return np.sqrt(self.inner(u, u))

    def __str__(self):
        s = "Weighted operator on {0!r}\n".format(self.grid)
        s += "\t eps={0:g}, default CG cap={1:d}\n".format(self.eps, self.default_max_iter)
        return s


def apply_A(op, g):
    """
    return A g.
    """
    return op(g)


def solve_A(op, h, tol=1e-10, max_iter=None, x0=None):
    """
    solve A v = h by the conjugate gradient method

    Parameters
    ----------

    op : WeightedOperator
    h : GridFunction
      the right hand side
    tol : float
      relative tolerance on the residual for the weighted L^2 norm
    max_iter : int
      maximal number of iterations (default ``op.default_max_iter``)
    x0 : GridFunction, optional
      initial guess (default 0)

    Returns
    -------

    GridFunction

    Notes
    -----

    The iteration runs in the inner product weighted by the cell weights,
    where A is symmetric positive definite. When the updated residual
    reaches the tolerance the true residual is recomputed and the iteration
    restarts from it if needed. When a restart no longer halves the true
    residual, the attainable accuracy in floating point arithmetic is
    reached: the iterate is returned, with a warning when the floor is
    more than FLOOR_FACTOR times tol.
    """
    log = setLogger(__name__)
    if not tol > 0:
        log.error("The tolerance of the linear solve must be positive (got {0:g})".format(tol))
        raise ValueError("tol must be > 0")
    if max_iter is None:
        max_iter = op.default_max_iter
    b = op._check(h)
    bnorm = np.sqrt(op.inner_values(b, b))
    if bnorm == 0.:
        return GridFunction(op.grid, np.zeros(op.grid.shape))
    x = np.zeros(op.grid.shape) if x0 is None else op._check(x0).copy()
    r = b - op.apply_values(x)
    p = r.copy()
    rr = op.inner_values(r, r)
    last_restart = np.inf
    it = 0
    while it < max_iter:
        if np.sqrt(rr) <= tol*bnorm:
            r = b - op.apply_values(x)
            rr = op.inner_values(r, r)
            true_res = np.sqrt(rr)/bnorm
            if true_res <= tol:
                log.debug("CG converged in {0:d} iterations (residual {1:.3e})".format(it, true_res))
                return GridFunction(op.grid, x)
            if true_res > 0.5*last_restart:
                report = log.debug if true_res <= FLOOR_FACTOR*tol else log.warning
                report("CG stagnates at the relative residual {0:.3e} > {1:.3e} (rounding floor)".format(true_res, tol))
                return GridFunction(op.grid, x)
            last_restart = true_res
            p = r.copy()
        Ap = op.apply_values(p)
        alpha = rr/op.inner_values(p, Ap)
        x += alpha*p
        r -= alpha*Ap
        rr_new = op.inner_values(r, r)
        p = r + rr_new/rr*p
        rr = rr_new
        it += 1
    residual = np.sqrt(op.inner_values(b - op.apply_values(x), b - op.apply_values(x)))/bnorm
    if residual <= tol:
        return GridFunction(op.grid, x)
    log.error("CG did not converge in {0:d} iterations (relative residual {1:.3e})".format(max_iter, residual))
    raise LinearSolveError("conjugate gradient did not converge in {0:d} iterations".format(max_iter), residual)


def residual_linear(op, v, h):
    """
    return the absolute and the relative weighted L^2 norm of A v - h.
    """
    r = op.apply_values(op._check(v)) - op._check(h)
    res = np.sqrt(op.inner_values(r, r))
    hnorm = op.norm(h)
    return res, res/hnorm if hnorm > 0 else res


def derivative_bound(op, v, h):
    """
    compare the ratio of the derivatives of v to t_k + eps with the C^{1,1} size of h

    For a smooth function h of the cone, the solution v of A v = h
    satisfies 0 <= (dv/dt_k)/(t_k + eps) <= ||h||_{C^{1,1}}.
    The derivatives are forward differences at the interior faces and the
    size of h is estimated by finite differences (sup of h, of its first
    derivatives and of its second derivatives along the axes).
    The check passes with a slack factor 2; it is meant to be reported.

    Returns
    -------

    dict with the keys ratio, bound and passed
    """
    grid = op.grid
    x = op._check(v)
    y = op._check(h)
    ratio = 0.
    dh1, dh2 = 0., 0.
    for k in range(grid.m):
        if grid.cells[k] < 2:
            continue
        faces = np.arange(1, grid.cells[k])*grid.h[k]
        sh = [1]*grid.m
        sh[k] = faces.size
        dv = np.diff(x, axis=k)/grid.h[k]
        ratio = max(ratio, float(np.max(dv/(faces.reshape(sh) + op.eps))))
        dh1 = max(dh1, float(np.abs(np.diff(y, axis=k)).max()/grid.h[k]))
        if grid.cells[k] > 2:
            dh2 = max(dh2, float(np.abs(np.diff(y, n=2, axis=k)).max()/grid.h[k]**2))
    bound = float(np.abs(y).max()) + dh1 + dh2
    return {'ratio': ratio, 'bound': bound, 'passed': bool(ratio <= 2*bound)}
