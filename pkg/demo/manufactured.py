"""
 Convergence of the linear solve on manufactured solutions

 For v = sum_k (3 t_k^2 - 2 t_k^3) + 18, which has zero derivatives on the
 faces of the cube, the right hand side h = A v is computed by sympy and
 the error of the discrete solve of A v = h is measured on refined grids.
 The observed order is 2.

 test: True
"""
import pyrevol


def run(n, cells_list=(64, 128, 256), eps=0.):
    """
    Parameters
    ----------

    n: list of int
        the dimensions of the rotation groups

    cells_list: tuple of int
        number of cells per axis of the grids

    eps: double
        regularization of the coefficients

    """
    ms = pyrevol.ManufacturedSolution(n, eps=eps)
    print(ms)
    report = pyrevol.convergence_study(ms, cells_list)
    print(report)
    return report

if __name__ == '__main__':
    run([3])
    run([2, 2], (16, 32, 64))
