# License: BSD 3 clause

import numpy as np

from .logs import setLogger


class RevolutionSpec(object):
    """
    Description of a domain of m revolution.

    The ambient space R^N is split into m blocks of n_1, ..., n_m
    coordinates and the domain is invariant under the rotations of each
    block. A function of the domain only depends on the m radial
    variables t_k of the blocks, which live in the unit cube (0, 1)^m.

    Parameters
    ----------

    n : list of int
      the sizes (n_1, ..., n_m) of the blocks, every n_k >= 1

    Attributes
    ----------

    n : tuple of int
    m : int
      number of revolution factors
    N : int
      ambient dimension
    critical_exponent : float
      the exponent 2*_m = 2m/(m-2) for m >= 3, infinite for m = 1, 2
    classical_exponent : float
      the Sobolev exponent 2N/(N-2) for N >= 3, infinite otherwise

    Examples
    --------

    >>> spec = RevolutionSpec([1, 1, 1])
    >>> spec.N, spec.m, spec.critical_exponent
    (3, 3, 6.0)

    """
    def __init__(self, n):
        self.log = setLogger(__name__)
        try:
            n = tuple(int(nk) for nk in n)
        except TypeError:
            n = (int(n),)
        if len(n) == 0:
            self.log.error("The list n of a domain of revolution is empty")
            raise ValueError("n must contain at least one block size")
        if any(nk < 1 for nk in n):
            self.log.error("The block sizes must be at least 1: n = {0}".format(n))
            raise ValueError("every n_k must be >= 1, got {0}".format(list(n)))
        self.n = n

    @property
    def m(self):
        return len(self.n)

    @property
    def N(self):
        return sum(self.n)

    @property
    def critical_exponent(self):
        if self.m <= 2:
            return np.inf
        return 2.*self.m/(self.m - 2)

    @property
    def classical_exponent(self):
        if self.N <= 2:
            return np.inf
        return 2.*self.N/(self.N - 2)

    def is_subcritical(self, p):
        """
        return True if p < 2*_m.
        """
        return p < self.critical_exponent

    def is_supercritical(self, p):
        """
        return True if p is above the classical Sobolev exponent 2N/(N-2).
        """
        return p > self.classical_exponent

    def restrict(self, axes):
        """
        return the RevolutionSpec restricted to the given axes.
        """
        axes = sorted(set(axes))
        return RevolutionSpec([self.n[k] for k in axes])

    def __eq__(self, other):
        return isinstance(other, RevolutionSpec) and self.n == other.n

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.n)

    def __str__(self):
        s = "Domain of {0:d} revolution\n".format(self.m)
        s += "\t n={0}, N={1:d}\n".format(list(self.n), self.N)
        s += "\t critical exponent 2*_m={0:g}, classical exponent 2N/(N-2)={1:g}\n".format(self.critical_exponent, self.classical_exponent)
        return s

    def __repr__(self):
        return "RevolutionSpec({0})".format(list(self.n))

    def to_dict(self):
        return {'n': list(self.n), 'N': self.N, 'm': self.m,
                'critical_exponent': _json_float(self.critical_exponent)}


def _json_float(x):
    # JSON has no infinity
    return 'inf' if np.isinf(x) else float(x)


def make_spec(n):
    """
    return the RevolutionSpec of the block sizes n.
    """
    return RevolutionSpec(n)
