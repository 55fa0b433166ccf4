import numpy as np
import pytest

from pyrevol.domain import Grid, GridFunction, norm_Lq
from pyrevol.cone import (in_cone, project_cone, mollify, up_sets,
                          brute_force_projection, forward_differences,
                          ConeProjectionError)
from pyrevol.verification import small_grids


class test_membership(object):
    grid = Grid([2, 2], [3, 4])

    def test_increasing(self):
        u = self.grid.from_callable(lambda t1, t2: t1 + t2**2)
        report = in_cone(u)
        assert(report.member and bool(report))
        assert(report.violating_axes == [])

    def test_decreasing(self):
        u = self.grid.from_callable(lambda t1, t2: 2 - t1 + t2)
        report = in_cone(u)
        assert(not report.member)
        assert(report.violating_axes == [0])
        np.testing.assert_allclose(report.worst_slope, -1./3)

    def test_negative(self):
        u = self.grid.constant(-1e-3)
        assert(not in_cone(u).member)
        assert(in_cone(u, 1e-2).member)

    def test_forward_differences(self):
        u = self.grid.from_callable(lambda t1, t2: t1 + t2)
        d = forward_differences(u)
        assert(d[0].shape == (2, 4) and d[1].shape == (3, 3))
        np.testing.assert_allclose(d[1], 0.25)


class test_projection(object):
    def test_fast_path(self):
        grid = Grid([3], [5])
        u = grid.from_callable(lambda t: t**2)
        np.testing.assert_array_equal(project_cone(u).values, u.values)

    def test_pool_adjacent_violators(self):
        grid = Grid([3], [3])
        u = GridFunction(grid, [3., 1., 2.])
        np.testing.assert_allclose(project_cone(u).values, [2., 2., 2.])
        u = GridFunction(grid, [-1., -2., 4.])
        np.testing.assert_allclose(project_cone(u).values, [0., 0., 4.], atol=1e-12)

    def test_brute_force(self):
        rng = np.random.default_rng(42)
        for cells in [(25,), (5, 5), (3, 8), (2, 3, 4)]:
            grid = Grid([1]*len(cells), cells)
            for i in range(5):
                u = GridFunction(grid, rng.standard_normal(cells))
                p = project_cone(u)
                assert(in_cone(p, 1e-9).member)
                np.testing.assert_allclose(p.values, brute_force_projection(u).values, atol=1e-6)

    @pytest.mark.parametrize('m', [1, 2, 3])
    def test_all_small_grids(self, m):
        rng = np.random.default_rng(m)
        for cells in small_grids(m):
            grid = Grid([1]*m, cells)
            for i in range(50):
                u = GridFunction(grid, rng.standard_normal(cells))
                p = project_cone(u)
                assert(in_cone(p, 1e-9).member)
                np.testing.assert_allclose(p.values, brute_force_projection(u).values, atol=1e-6)

    def test_idempotent(self):
        rng = np.random.default_rng(7)
        grid = Grid([2, 2], [12, 10])
        for i in range(5):
            p = project_cone(GridFunction(grid, rng.standard_normal(grid.shape)))
            np.testing.assert_allclose(project_cone(p).values, p.values, atol=1e-9)

    def test_not_converged(self):
        u = GridFunction(Grid([3], [3]), [3., 1., 2.])
        with pytest.raises(ConeProjectionError) as e:
            project_cone(u, max_cycles=1)
        assert(e.value.gap > 0)


class test_up_sets(object):
    def test_counts(self):
        assert(up_sets((2,)).shape == (3, 2))
        assert(up_sets((2, 2)).shape[0] == 6)
        assert(up_sets((3, 3)).shape[0] == 20)
        # the free distributive lattice on 3 generators
        assert(up_sets((2, 2, 2)).shape[0] == 20)

    def test_up_closed(self):
        for u in up_sets((3, 2)):
            assert(np.all(np.diff(u.astype(int), axis=0) >= 0))
            assert(np.all(np.diff(u.astype(int), axis=1) >= 0))

    def test_size_limit(self):
        with pytest.raises(ValueError):
            brute_force_projection(Grid([1, 1], [5, 6]).constant(1.))


class test_mollify(object):
    grid = Grid([3], [4])

    def test_backward_average(self):
        u = GridFunction(self.grid, [1., 2., 3., 4.])
        np.testing.assert_allclose(mollify(u, 1).values, [0.5, 1.5, 2.5, 3.5])
        np.testing.assert_array_equal(mollify(u, 0).values, u.values)

    def test_cone(self):
        grid = Grid([2, 2], [6, 5])
        u = grid.from_callable(lambda t1, t2: np.exp(t1*t2) + t2)
        w = mollify(u, 2)
        assert(in_cone(w, 1e-12).member)
        assert(np.all(w.values <= u.values + 1e-12))

    def test_errors(self):
        u = GridFunction(self.grid, [4., 3., 2., 1.])
        with pytest.raises(ValueError):
            mollify(u, 1)
        with pytest.raises(ValueError):
            mollify(self.grid.constant(1.), -1)

    def test_convergence(self):
        grid = Grid([2, 3], [32, 32])
        u = grid.from_callable(lambda t1, t2: 1 + t1**2 + np.sqrt(t2))
        distances = [norm_Lq(grid, u - mollify(u, w), 2) for w in [8, 4, 2, 1, 0]]
        assert(all(d1 > d2 for d1, d2 in zip(distances[:-1], distances[1:])))
        assert(distances[-1] == 0.)
        # a window of two cells shrinks under refinement
        distances = []
        for s in [16, 32, 64]:
            g = Grid([3], [s])
            v = g.from_callable(lambda t: 1 + t**2)
            distances.append(norm_Lq(g, v - mollify(v, 2), 2))
        assert(distances[0] > distances[1] > distances[2])
