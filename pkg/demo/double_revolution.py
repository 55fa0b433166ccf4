"""
 Positive solution on the unit ball of R^4 = R^2 x R^2

 -Lap u + u = b(|x_1|) b(|x_2|) u^(p-1), x = (x_1, x_2),

 with b(t) = 1 + t^2 and p = 5, above the Sobolev exponent 4 of R^4.
 The solution is invariant by the rotations of each plane and is
 increasing in t_1 = |x_1| and t_2 = |x_2|: it is computed on the square
 (0, 1)^2 with the weight t_1 t_2.

 test: True
"""
import pyrevol


def run(cells, p=5., method='fixed_point', withPlot=True):
    """
    Parameters
    ----------

    cells: int
        number of cells per axis

    p: double
        exponent of the nonlinearity

    method: string
        fixed_point or mountain_pass

    withPlot: boolean
        if True plot the solution and its slices

    """
    grid = pyrevol.Grid([2, 2], [cells, cells])
    a = pyrevol.make_weight(grid, {'type': 'separable', 'factors': [[1., 0., 1.], [1., 0., 1.]]})
    pb = pyrevol.Problem(grid, a, pyrevol.make_power(p))
    report = pyrevol.solve(pb, pyrevol.SolverConfig(method=method))
    print(report)
    print(report.cone_report)

    if withPlot:
        pyrevol.viewer.plot_solution(report.u, 'double_revolution.png', title='u(t_1, t_2)')
        pyrevol.viewer.plot_histories(report, 'double_revolution_histories.png')
    return report

if __name__ == '__main__':
    run(64)
