# License: BSD 3 clause

from .geometry import RevolutionSpec
from .domain import Grid, GridFunction
from .nonlinearity import make_power, make_tabulated, load_table, check_assumptions
from .cone import in_cone, project_cone
from .elliptic import WeightedOperator, solve_A
from .energy import Problem, make_weight, eval_I
from .solver import SolverConfig, solve, fixed_point_solve, mountain_pass_solve
from .verification import run_suite
from .manufactured import ManufacturedSolution, convergence_study
from . import viewer
from .hdf5 import H5File

from .version import version as __version__
