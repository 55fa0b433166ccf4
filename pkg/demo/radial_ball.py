"""
 Positive radial solution on the unit ball of R^3

 -Lap u + u = |x|^alpha u^(p-1) in B, du/dn = 0 on the sphere,

 with alpha = 2 and p = 8, above the Sobolev exponent 6 of R^3.
 The solution is radial and increasing: the problem is solved on (0, 1)
 with the weight t^2 by the fixed point and by the mountain pass
 methods, and the two solutions are compared.

 test: True
"""
import numpy as np
import pyrevol


def run(cells, alpha=2., p=8., withPlot=True):
    """
    Parameters
    ----------

    cells: int
        number of cells on (0, 1)

    alpha: double
        exponent of the weight a(t) = t^alpha

    p: double
        exponent of the nonlinearity

    withPlot: boolean
        if True plot the solutions

    """
    grid = pyrevol.Grid([3], [cells])
    a = pyrevol.make_weight(grid, {'type': 'radial_power', 'alpha': alpha})
    pb = pyrevol.Problem(grid, a, pyrevol.make_power(p))
    print(pb)

    fp = pyrevol.solve(pb, pyrevol.SolverConfig())
    mp = pyrevol.solve(pb, pyrevol.SolverConfig(method='mountain_pass'))
    print(fp)
    print(mp)
    diff = mp.u - fp.u
    print("relative L2 distance: {0:.3e}".format(pyrevol.domain.norm_Lq(grid, diff, 2)/pyrevol.domain.norm_Lq(grid, fp.u, 2)))

    if withPlot:
        fig = pyrevol.viewer.Fig(1, 2, figsize=(10, 4))
        ax = fig[0, 0]
        ax.plot(grid.coords[0], fp.u.values, color='navy', label='fixed point')
        ax.plot(grid.coords[0], mp.u.values, color='crimson', linestyle='--', label='mountain pass')
        ax.set_label('$t=|x|$', 'u')
        ax.legend()
        ax.title = 'radial solution, p={0:g}'.format(p)
        ax = fig[0, 1]
        ax.semilogy(np.arange(len(fp.residual_history)), fp.residual_history, color='navy', label='fixed point')
        ax.semilogy(np.arange(len(mp.residual_history)), mp.residual_history, color='crimson', label='mountain pass')
        ax.set_label('iteration', 'residual')
        ax.legend('upper right')
        fig.savefig('radial_ball.png')
        fig.close()
    return fp, mp

if __name__ == '__main__':
    run(512)
