import numpy as np
import pytest

from pyrevol.domain import (Grid, GridFunction, cell_weight, integrate, inner,
                            gradient_energy, norm_Ym, norm_Lq)


class test_grid(object):
    def test_cell_centers(self):
        g = Grid([3], [4])
        np.testing.assert_array_equal(g.coords[0], [0.125, 0.375, 0.625, 0.875])
        np.testing.assert_array_equal(g.h, [0.25])
        assert(g.size == 4 and g.shape == (4,))
        assert(g.volume == 0.25)

    def test_read_only(self):
        g = Grid([3], [4])
        with pytest.raises(ValueError):
            g.coords[0][0] = 1.

    def test_weights(self):
        g = Grid([2, 3], [4, 8])
        t1, t2 = g.mesh()
        np.testing.assert_allclose(g.weights(), t1*t2**2)
        np.testing.assert_allclose(g.weights(0.5), (t1 + 0.5)*(t2 + 0.5)**2)
        np.testing.assert_allclose(cell_weight(g, (1, 2)), g.weights()[1, 2], rtol=1e-15)

    def test_face_weights(self):
        g = Grid([3, 1], [4, 2])
        w = g.face_weights(0)
        assert(w.shape == (3, 2))
        np.testing.assert_allclose(w[:, 0], [0.25**2, 0.5**2, 0.75**2])
        assert(g.face_weights(1).shape == (4, 1))

    def test_errors(self):
        with pytest.raises(ValueError):
            Grid([3, 3], [4])
        with pytest.raises(ValueError):
            Grid([3], [0])

    def test_refine_restrict(self):
        g = Grid([2, 3], [4, 8])
        assert(g.refine(2) == Grid([2, 3], [8, 16]))
        assert(g.restrict([1]) == Grid([3], [8]))
        assert(g != Grid([2, 2], [4, 8]))

    def test_from_callable(self):
        g = Grid([1, 1], [2, 3])
        u = g.from_callable(lambda t1, t2: t1 + 10*t2)
        np.testing.assert_allclose(u.values[1, 2], 0.75 + 10*5./6)
        c = g.from_callable(lambda t1, t2: 2.)
        assert(c.values.shape == (2, 3))


class test_quadrature(object):
    grid = Grid([3], [4])

    def test_midpoint(self):
        h = 0.25
        np.testing.assert_allclose(integrate(self.grid, 1.), 1./3 - h**2/12, rtol=1e-14)

    def test_inner(self):
        u = self.grid.from_callable(lambda t: t)
        np.testing.assert_allclose(inner(self.grid, u, 2.), 2*integrate(self.grid, u))

    def test_constant_norms(self):
        c = self.grid.constant(2.)
        assert(gradient_energy(self.grid, c) == 0.)
        np.testing.assert_allclose(norm_Ym(self.grid, c), 2*np.sqrt(integrate(self.grid, 1.)))
        np.testing.assert_allclose(norm_Lq(self.grid, c, 3, weighted=False), 2.)

    def test_norm_Lq(self):
        u = self.grid.from_callable(lambda t: t)
        ref = np.sum(self.grid.coords[0]**4*self.grid.coords[0]**2*0.25)**0.25
        np.testing.assert_allclose(norm_Lq(self.grid, u, 4), ref)
        with pytest.raises(ValueError):
            norm_Lq(self.grid, u, 0.5)


class test_grid_function(object):
    grid = Grid([2, 2], [3, 4])

    def test_arithmetic(self):
        u = self.grid.constant(2.)
        v = self.grid.from_callable(lambda t1, t2: t1*t2)
        np.testing.assert_allclose((u*v - v).values, v.values)
        np.testing.assert_allclose((1. - v/u).values, 1. - v.values/2)
        np.testing.assert_allclose((-u + 3).values, 1.)
        assert(u.abs_max() == 2. and v.min() > 0)

    def test_errors(self):
        with pytest.raises(ValueError):
            GridFunction(self.grid, np.ones(5))
        with pytest.raises(ValueError):
            GridFunction(self.grid, np.full(self.grid.shape, np.nan))
        with pytest.raises(ValueError):
            self.grid.constant(1.) + Grid([2, 2], [4, 3]).constant(1.)

    def test_line(self):
        v = self.grid.from_callable(lambda t1, t2: t1 + 10*t2)
        t, values = v.line(0)
        np.testing.assert_array_equal(t, self.grid.coords[0])
        np.testing.assert_allclose(values, self.grid.coords[0] + 10*0.625)
        t, values = v.line(1, (0, 0))
        np.testing.assert_allclose(values, 1./6 + 10*self.grid.coords[1])

    def test_csv(self, tmp_path):
        v = self.grid.from_callable(lambda t1, t2: np.exp(t1)*np.sin(t2))
        path = str(tmp_path / 'u.csv')
        v.to_csv(path)
        with open(path) as f:
            assert(f.readline().strip() == 't_1,t_2,value')
        w = GridFunction.from_csv(path, self.grid)
        np.testing.assert_array_equal(w.values, v.values)
        with pytest.raises(ValueError):
            GridFunction.from_csv(path, Grid([2, 2], [4, 3]))
