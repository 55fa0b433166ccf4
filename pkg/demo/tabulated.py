"""
 Tabulated nonlinearity

 The nonlinearity f(t) = t^3 + t^5 is only known by its values on
 [0, 4]: the tabulated primitive and conjugate are built from the
 samples, the assumptions are checked and the problem

 -Lap u + u = f(u) on the unit ball of R^3

 with a(t) = 1 + t is solved by the mountain pass method (the fixed
 point method needs a power).

 test: True
"""
import numpy as np
import pyrevol


def run(cells, withPlot=True):
    """
    Parameters
    ----------

    cells: int
        number of cells on (0, 1)

    withPlot: boolean
        if True plot F and F*

    """
    t = np.linspace(0., 4., 401)
    nl = pyrevol.make_tabulated(t, t**3 + t**5)
    print(nl)
    print(pyrevol.check_assumptions(nl))

    grid = pyrevol.Grid([3], [cells])
    a = pyrevol.make_weight(grid, {'type': 'separable', 'factors': [[1., 1.]]})
    pb = pyrevol.Problem(grid, a, nl)
    report = pyrevol.solve(pb, pyrevol.SolverConfig(method='mountain_pass', tol_residual=1e-7))
    print(report)

    if withPlot:
        fig = pyrevol.viewer.Fig(1, 2, figsize=(10, 4))
        ax = fig[0, 0]
        ax.plot(t, nl.F(t), color='navy', label='F')
        s = nl.f(t)
        ax.plot(s, nl.Fstar(s), color='crimson', label='F*')
        ax.set_label('t, s', '')
        ax.legend()
        ax = fig[0, 1]
        ax.plot(grid.coords[0], report.u.values, color='navy')
        ax.set_label('t', 'u')
        fig.savefig('tabulated.png')
        fig.close()
    return report

if __name__ == '__main__':
    run(256)
