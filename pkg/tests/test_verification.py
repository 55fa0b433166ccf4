import numpy as np
import pytest

from pyrevol.domain import Grid, GridFunction
from pyrevol.geometry import RevolutionSpec
from pyrevol.nonlinearity import make_power, make_tabulated
from pyrevol.verification import (cube_decomposition_check, embedding_ratio_scan,
                                  monotone_solve_check, convex_identity_suite,
                                  operator_symmetry_check, projection_oracle_check,
                                  random_cone_function, small_grids, run_suite)
from pyrevol.cone import in_cone


@pytest.mark.parametrize('grid, pairs', [(Grid([3], [32]), 100),
                                         (Grid([2, 2], [32, 32]), 50),
                                         (Grid([1, 1, 1], [32, 32, 32]), 10)])
def test_operator_symmetry(grid, pairs):
    res = operator_symmetry_check(grid, pairs=pairs)
    assert(res.passed)
    assert(res.details['asymmetry'] <= 1e-12)
    assert(res.details['energy_identity'] <= 1e-12)


def test_operator_symmetry_regularized():
    assert(operator_symmetry_check(Grid([3, 2], [16, 16]), pairs=20, eps=0.1).passed)


class test_cube_decomposition(object):
    grid = Grid([2, 2], [8, 8])

    @pytest.mark.parametrize('q', [2., 4.])
    def test_random(self, q):
        rng = np.random.default_rng(1)
        for i in range(5):
            g = random_cone_function(self.grid, rng)
            assert(in_cone(g).member)
            res = cube_decomposition_check(g, q)
            assert(res.passed)
            assert(len(res.details['norms']) == 4)
            # the top corner has the largest norm
            assert(np.argmax(res.details['norms']) == 3)

    def test_constant(self):
        res = cube_decomposition_check(self.grid.constant(1.), 2.)
        assert(res.passed)
        np.testing.assert_allclose(res.details['norms'], 0.5)

    def test_errors(self):
        with pytest.raises(ValueError):
            cube_decomposition_check(Grid([2, 2], [7, 8]).constant(1.), 2.)
        g = GridFunction(self.grid, -self.grid.mesh()[0])
        with pytest.raises(ValueError):
            cube_decomposition_check(g, 2.)


class test_embedding_scan(object):
    def test_subcritical(self):
        res = embedding_ratio_scan(RevolutionSpec([3]), Grid([3], [8]), 4.)
        assert(res.mandatory)
        assert(res.passed)
        assert(res.details['cells'] == [[8], [16], [32]])
        assert(not res.details['boundary_case'])

    def test_boundary_case(self):
        res = embedding_ratio_scan(RevolutionSpec([1, 1, 1]), Grid([1, 1, 1], [4, 4, 4]), 6., samples=5)
        assert(not res.mandatory)
        assert(res.details['boundary_case'])

    def test_above_critical(self):
        res = embedding_ratio_scan(RevolutionSpec([1, 1, 1]), Grid([1, 1, 1], [4, 4, 4]), 8., samples=2, refinements=1)
        assert(not res.mandatory)
        assert(res.details['above_critical'])


@pytest.mark.parametrize('spec, cells', [([3], [16]), ([2, 2], [8, 8])])
def test_monotone_solve(spec, cells):
    res = monotone_solve_check(RevolutionSpec(spec), Grid(spec, cells), trials=3)
    assert(res.passed)


def test_projection_oracle():
    assert(projection_oracle_check(Grid([2, 2], [5, 5]), trials=5).passed)
    assert(projection_oracle_check(Grid([1], [25]), trials=5).passed)


def test_small_grids():
    shapes = small_grids(2, 4)
    assert(len(shapes) == 8)
    assert((2, 2) in shapes and (1, 4) in shapes and (2, 3) not in shapes)
    assert(all(np.prod(s) <= 25 for s in small_grids(3)))


class test_convex_identities(object):
    def test_power(self):
        res = convex_identity_suite(make_power(4), samples=2500)
        assert(res.passed)
        assert(res.details['failed'] == [])

    def test_linear_table(self):
        nl = make_tabulated([0., 1., 2., 3.], [0., 1., 2., 3.])
        res = convex_identity_suite(nl, samples=400)
        assert(not res.passed)
        assert('assumption:mu' in res.details['failed'])


def test_run_suite():
    report = run_suite(make_power(4), RevolutionSpec([3]), Grid([3], [16]),
                       samples=5, trials=2, pairs=10)
    names = [c.name for c in report.checks]
    assert(names == sorted(names))
    assert(set(names) == {'convex_identities', 'operator_symmetry', 'cube_decomposition',
                          'embedding_ratio', 'monotone_solve', 'derivative_bound',
                          'projection_oracle'})
    assert(report.passed)
    assert(not report['derivative_bound'].mandatory)
    d = report.to_dict()
    assert(d['passed'] and d['seed'] == 0)


@pytest.mark.parametrize('n', [[3], [2, 2], [1, 1, 1]])
@pytest.mark.parametrize('q', [2., 4.])
def test_cube_decomposition_random(n, q):
    grid = Grid(n, [8]*len(n))
    rng = np.random.default_rng(0)
    for i in range(100):
        assert(cube_decomposition_check(random_cone_function(grid, rng), q).slack >= -1e-12)


def test_monotone_solve_ball():
    res = monotone_solve_check(RevolutionSpec([3]), Grid([3], [256]), trials=20)
    assert(res.passed)
    assert(res.samples == 20)


def test_monotone_solve_double_revolution():
    res = monotone_solve_check(RevolutionSpec([2, 2]), Grid([2, 2], [64, 64]), trials=20)
    assert(res.passed)
    assert(res.samples == 20)
