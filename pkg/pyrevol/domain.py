# License: BSD 3 clause

import numpy as np

from .geometry import RevolutionSpec
from .logs import setLogger


class Grid(object):
    """
    Cell-centered tensor grid of the unit cube Q_m = (0, 1)^m.

    Parameters
    ----------

    spec : RevolutionSpec or list of int
      the domain of revolution
    cells : list of int
      number of cells (s_1, ..., s_m) in each direction

    Attributes
    ----------

    spec : RevolutionSpec
    cells : tuple of int
    m : int
      number of axes
    h : numpy array
      the space steps h_k = 1/s_k
    coords : list of numpy arrays
      coords[k][i] = (i + 1/2) h_k is the center of the ith cell along axis k
    shape : tuple of int
    size : int
      total number of cells
    volume : double
      volume of one cell

    Notes
    -----

    No cell center lies on the face t_k = 0 where the coefficients
    (n_k - 1)/t_k of the reduced Laplacian are singular.

    Examples
    --------

    >>> g = Grid([3], [4])
    >>> g.coords[0]
    array([0.125, 0.375, 0.625, 0.875])

    """
    def __init__(self, spec, cells):
        self.log = setLogger(__name__)
        if not isinstance(spec, RevolutionSpec):
            spec = RevolutionSpec(spec)
        try:
            cells = tuple(int(s) for s in cells)
        except TypeError:
            cells = (int(cells),)
        if len(cells) != spec.m:
            self.log.error("The number of cells {0} does not match the number of axes {1}".format(list(cells), spec.m))
            raise ValueError("cells must have one entry per axis ({0} given, m={1})".format(len(cells), spec.m))
        if any(s < 1 for s in cells):
            self.log.error("The number of cells must be positive: {0}".format(list(cells)))
            raise ValueError("every cells entry must be >= 1")
        self.spec = spec
        self.cells = cells
        self.h = 1./np.asarray(cells, dtype='f8')
        self.coords = []
        for s in cells:
            c = (np.arange(s) + 0.5)/s
            c.setflags(write=False)
            self.coords.append(c)
        self.h.setflags(write=False)
        self.log.debug(self.__str__())

    @property
    def m(self):
        return self.spec.m

    @property
    def shape(self):
        return self.cells

    @property
    def size(self):
        return int(np.prod(self.cells))

    @property
    def volume(self):
        return float(np.prod(self.h))

    def _broadcast(self, k, x):
        sh = [1]*self.m
        sh[k] = x.size
        return x.reshape(sh)

    def mesh(self):
        """
        return the list of the m coordinate arrays of the cell centers.
        """
        return np.meshgrid(*self.coords, indexing='ij')

    def weights(self, eps=0.):
        """
        return the cell weights prod_k (t_k + eps)^(n_k - 1) at the cell centers.
        """
        w = np.ones(self.shape)
        for k in range(self.m):
            w = w*self._broadcast(k, (self.coords[k] + eps)**(self.spec.n[k] - 1))
        return w

    def face_weights(self, k, eps=0.):
        """
        return the weights at the interior faces orthogonal to the axis k.

        The face between the cells i and i+1 along k sits at t_k = (i+1) h_k,
        the other coordinates being taken at the cell centers.
        The array has s_k - 1 entries along the axis k.
        """
        faces = np.arange(1, self.cells[k])*self.h[k]
        w = np.ones([s if j != k else s - 1 for j, s in enumerate(self.cells)])
        for j in range(self.m):
            t = faces if j == k else self.coords[j]
            w = w*self._broadcast(j, (t + eps)**(self.spec.n[j] - 1))
        return w

    def refine(self, factor=2):
        return Grid(self.spec, [s*factor for s in self.cells])

    def restrict(self, axes):
        """
        return the grid of the cube made of the given axes.
        """
        axes = sorted(set(axes))
        return Grid(self.spec.restrict(axes), [self.cells[k] for k in axes])

    def function(self, values):
        return GridFunction(self, values)

    def zeros(self):
        return GridFunction(self, np.zeros(self.shape))

    def constant(self, c):
        return GridFunction(self, np.full(self.shape, float(c)))

    def from_callable(self, func):
        """
        return the grid function func(t_1, ..., t_m) at the cell centers.
        """
        values = func(*self.mesh())
        return GridFunction(self, np.broadcast_to(values, self.shape))

    def __eq__(self, other):
        return isinstance(other, Grid) and self.spec == other.spec and self.cells == other.cells

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.spec.n, self.cells))

    def __str__(self):
        s = "Grid of the cube (0, 1)^{0:d}\n".format(self.m)
        s += "\t n={0}, cells={1}, size={2:d}\n".format(list(self.spec.n), list(self.cells), self.size)
        s += "\t space steps={0}\n".format(self.h.tolist())
        return s

    def __repr__(self):
        return "Grid({0}, {1})".format(list(self.spec.n), list(self.cells))

    def to_dict(self):
        return {'n': list(self.spec.n), 'cells': list(self.cells)}


class GridFunction(object):
    """
    Real values at the cells of a grid.

    Parameters
    ----------

    grid : Grid
    values : array_like
      ``grid.size`` values, reshaped to ``grid.shape`` in C order

    Notes
    -----

    The arithmetic operators work with scalars and with functions
    on the same grid.
    """
    def __init__(self, grid, values):
        self.grid = grid
        values = np.array(values, dtype='f8')
        if values.size != grid.size:
            log = setLogger(__name__)
            log.error("{0} values given for a grid of {1} cells".format(values.size, grid.size))
            raise ValueError("value count {0} does not match the grid size {1}".format(values.size, grid.size))
        values = values.reshape(grid.shape)
        if not np.all(np.isfinite(values)):
            log = setLogger(__name__)
            log.error("Non finite values in a grid function")
            raise ValueError("grid function values must be finite")
        self.values = values

    def _other(self, other):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                log = setLogger(__name__)
                log.error("Operation between functions on {0!r} and {1!r}".format(self.grid, other.grid))
                raise ValueError("grid mismatch: {0!r} and {1!r}".format(self.grid, other.grid))
            return other.values
        return other

    def __add__(self, other):
        return GridFunction(self.grid, self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.grid, self.values - self._other(other))

    def __rsub__(self, other):
        return GridFunction(self.grid, self._other(other) - self.values)

    def __mul__(self, other):
        return GridFunction(self.grid, self.values*self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GridFunction(self.grid, self.values/self._other(other))

    def __rtruediv__(self, other):
        return GridFunction(self.grid, self._other(other)/self.values)

    def __neg__(self):
        return GridFunction(self.grid, -self.values)

    def copy(self):
        return GridFunction(self.grid, self.values.copy())

    def map(self, func):
        """
        return the function func applied to the values.
        """
        return GridFunction(self.grid, func(self.values))

    def min(self):
        return float(self.values.min())

    def max(self):
        return float(self.values.max())

    def abs_max(self):
        return float(np.abs(self.values).max())

    def line(self, axis, index=None):
        """
        return the coordinates and the values along a grid line

        Parameters
        ----------

        axis : int
          direction of the line
        index : tuple of int, optional
          cell index of the line (the entry of axis is ignored),
          default is the middle cell in every other direction

        Returns
        -------

        t : numpy array
        values : numpy array
        """
        if index is None:
            index = [s//2 for s in self.grid.cells]
        sl = list(index)
        sl[axis] = slice(None)
        return self.grid.coords[axis], self.values[tuple(sl)].copy()

    def to_csv(self, path):
        """
        write the function in a CSV file: the m coordinates then the value,
        one cell per row in C order, with a header line.
        """
        cols = [t.ravel() for t in self.grid.mesh()] + [self.values.ravel()]
        header = ','.join(['t_{0:d}'.format(k+1) for k in range(self.grid.m)] + ['value'])
        np.savetxt(path, np.column_stack(cols), delimiter=',', fmt='%.17g',
                   header=header, comments='')

    @classmethod
    def from_csv(cls, path, grid):
        """
        read a function written by :py:meth:`to_csv` on the given grid.
        """
        log = setLogger(__name__)
        data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
        if data.shape != (grid.size, grid.m + 1):
            log.error("{0}: array of shape {1} for a grid of {2} cells".format(path, data.shape, grid.size))
            raise ValueError("{0} does not match the grid {1!r}".format(path, grid))
        for k, t in enumerate(grid.mesh()):
            if not np.allclose(data[:, k], t.ravel(), rtol=0, atol=1e-12):
                log.error("{0}: the coordinates of the axis {1:d} do not match the grid".format(path, k))
                raise ValueError("{0}: coordinates of axis {1:d} do not match {2!r}".format(path, k, grid))
        return cls(grid, data[:, -1])

    def __str__(self):
        return "GridFunction on {0!r}: min={1:g}, max={2:g}".format(self.grid, self.min(), self.max())


def _values(grid, g):
    if isinstance(g, GridFunction):
        if g.grid != grid:
            raise ValueError("grid mismatch: {0!r} and {1!r}".format(grid, g.grid))
        return g.values
    return np.broadcast_to(np.asarray(g, dtype='f8'), grid.shape)


def cell_weight(grid, index, eps=0.):
    """
    return the weight prod_k (t_k + eps)^(n_k - 1) of the cell index.
    """
    w = 1.
    for k, i in enumerate(index):
        w *= (grid.coords[k][i] + eps)**(grid.spec.n[k] - 1)
    return w


def integrate(grid, g, eps=0.):
    """
    midpoint rule for the integral of g with respect to the weighted measure.

    The constant c(n_1, ..., n_m) of the measure of the spheres is omitted.
    """
    return float(np.sum(_values(grid, g)*grid.weights(eps))*grid.volume)


def inner(grid, u, v, eps=0.):
    """
    weighted inner product of u and v.
    """
    return integrate(grid, _values(grid, u)*_values(grid, v), eps)


def gradient_energy(grid, g, eps=0.):
    """
    return sum_k of the weighted squared forward differences of g divided by h_k^2.
    """
    g = _values(grid, g)
    e = 0.
    for k in range(grid.m):
        d = np.diff(g, axis=k)
        e += np.sum(grid.face_weights(k, eps)*d**2)/grid.h[k]**2
    return e*grid.volume


def norm_Ym(grid, g, eps=0.):
    """
    return the discrete H^1 norm of g for the weighted measure

    Notes
    -----

    The gradient part uses the weights of the faces, exactly as the
    operator of :py:mod:`elliptic <pyrevol.elliptic>`, so that
    <A g, g> = norm_Ym(g)^2 up to rounding.
    """
    return float(np.sqrt(gradient_energy(grid, g, eps) + inner(grid, g, g, eps)))


def norm_Lq(grid, g, q, eps=0., weighted=True):
    """
    return the L^q norm of g

    Parameters
    ----------

    grid : Grid
    g : GridFunction
    q : float
      the exponent, q >= 1
    eps : float
      regularization of the weights
    weighted : bool
      if True the measure is the weighted measure of the domain,
      else the Lebesgue measure of the cube
    """
    if q < 1:
        log = setLogger(__name__)
        log.error("The exponent of a Lebesgue norm must be >= 1 (got {0:g})".format(q))
        raise ValueError("q must be >= 1")
    a = np.abs(_values(grid, g))
    if weighted:
        s = integrate(grid, a**q, eps)
    else:
        s = float(np.sum(a**q)*grid.volume)
    return s**(1./q)
