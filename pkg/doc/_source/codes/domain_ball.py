"""
Example of a domain of revolution: the ball of R^3
"""
import pyrevol
spec = pyrevol.RevolutionSpec([3])
print(spec)
grid = pyrevol.Grid(spec, [32])
print(grid)
u = grid.from_callable(lambda t: 1 + t**2)
print(pyrevol.in_cone(u))
