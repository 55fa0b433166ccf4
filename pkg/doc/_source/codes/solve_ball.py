"""
Positive solution on the ball of R^3 with a(x) = |x|^2 and p = 8
"""
import pyrevol
grid = pyrevol.Grid([3], [256])
a = pyrevol.make_weight(grid, {'type': 'radial_power', 'alpha': 2.})
pb = pyrevol.Problem(grid, a, pyrevol.make_power(8))
report = pyrevol.solve(pb, pyrevol.SolverConfig())
print(report)
fig = pyrevol.viewer.Fig()
ax = fig[0]
ax.plot(grid.coords[0], report.u.values, color='navy')
ax.set_label('t', 'u')
