import numpy as np
import pytest

from pyrevol.nonlinearity import (make_power, make_tabulated, load_table,
                                  check_assumptions, eval_f, eval_F,
                                  eval_Fstar, eval_Fstar_prime, OutOfRangeError)


class test_power(object):
    nl = make_power(4)

    def test_constants(self):
        assert(self.nl.p == 4.)
        assert(self.nl.mu == 4.)
        np.testing.assert_allclose(self.nl.q, 4./3)
        np.testing.assert_allclose(self.nl.ell, 2**(1./3))
        assert(self.nl.t_max == np.inf)

    def test_values(self):
        np.testing.assert_allclose(eval_f(self.nl, 2.), 8.)
        np.testing.assert_allclose(eval_f(self.nl, -2.), -8.)
        np.testing.assert_allclose(eval_F(self.nl, -2.), 4.)
        np.testing.assert_allclose(eval_Fstar(self.nl, 8.), 12.)
        np.testing.assert_allclose(eval_Fstar_prime(self.nl, 8.), 2.)
        np.testing.assert_allclose(eval_Fstar_prime(self.nl, -8.), -2.)

    def test_fenchel_young_equality(self):
        t = np.linspace(-3, 3, 61)
        s = self.nl.f(t)
        np.testing.assert_allclose(self.nl.F(t) + self.nl.Fstar(s), t*s, rtol=1e-12, atol=1e-12)

    def test_vectorized(self):
        t = np.arange(12.).reshape(3, 4)
        assert(self.nl.f(t).shape == (3, 4))
        assert(self.nl.Fstar(t).shape == (3, 4))

    def test_assumptions(self):
        report = check_assumptions(self.nl)
        assert(report.passed)
        assert(report.failed == [])
        np.testing.assert_allclose(report.doubling, 2**(4./3), rtol=1e-10)
        np.testing.assert_allclose(report.doubling_bound, 2*2**(1./3), rtol=1e-12)

    def test_to_dict(self):
        d = self.nl.to_dict()
        assert(d['type'] == 'power')
        assert(d['p'] == 4.)

    @pytest.mark.parametrize('p', [2., 1.5, 0.])
    def test_bad_exponent(self, p):
        with pytest.raises(ValueError):
            make_power(p)


class test_tabulated_linear(object):
    t = [0., 1., 2., 3.]
    f = [0., 1., 2., 3.]

    def test_interpolation(self):
        nl = make_tabulated(self.t, self.f)
        np.testing.assert_allclose(nl.f(1.5), 1.5)
        np.testing.assert_allclose(nl.f(-1.5), -1.5)
        np.testing.assert_allclose(nl.F(1.5), 1.125)
        np.testing.assert_allclose(nl.F(2.), 2.)
        np.testing.assert_allclose(nl.f_inverse(2.5), 2.5)
        np.testing.assert_allclose(nl.Fstar(2.), 2.)

    def test_designed_failure(self):
        nl = make_tabulated(self.t, self.f)
        assert(nl.mu <= 2.)
        np.testing.assert_allclose(nl.mu, 2.)
        np.testing.assert_allclose(nl.ell, 2.)
        report = check_assumptions(nl)
        assert(not report.passed)
        assert('mu' in report.failed)

    def test_out_of_range(self):
        nl = make_tabulated(self.t, self.f)
        with pytest.raises(OutOfRangeError):
            nl.f(3.5)
        with pytest.raises(OutOfRangeError):
            nl.Fstar(-4.)

    def test_bad_tables(self):
        with pytest.raises(ValueError):
            make_tabulated([1., 2.], [1., 2.])
        with pytest.raises(ValueError):
            make_tabulated([0., 1., 2.], [0., 2., 1.])
        with pytest.raises(ValueError):
            make_tabulated([0., 1.], [0., 1., 2.])
        with pytest.raises(ValueError):
            make_tabulated([0., 1., 2.], [0., 1., 2.], head_exponent=-1.)

    def test_load_table(self, tmp_path):
        path = tmp_path / 'table.txt'
        np.savetxt(str(path), np.column_stack([self.t, self.f]))
        nl = load_table(str(path), growth_C=2.)
        assert(nl.kind == 'tabulated')
        assert(nl.growth_C == 2.)
        np.testing.assert_allclose(nl.f(2.5), 2.5)

    def test_load_csv_table(self, tmp_path):
        path = tmp_path / 'table.csv'
        path.write_text('t,f\n0,0\n1,1\n2,2\n3,3\n')
        nl = load_table(str(path))
        np.testing.assert_allclose(nl.f(1.5), 1.5)
        assert(nl.t_max == 3.)


class test_tabulated_cubic(object):
    t = np.linspace(0., 4., 401)
    f = t**3

    def test_head_cell(self):
        nl = make_tabulated(self.t, self.f)
        np.testing.assert_allclose(nl.to_dict()['head_exponent'], 3., rtol=1e-12)
        x = np.linspace(0., 0.01, 11)
        np.testing.assert_allclose(nl.f(x), x**3, rtol=1e-10, atol=1e-18)
        np.testing.assert_allclose(nl.F(x), x**4/4, rtol=1e-10, atol=1e-20)

    def test_ratio_bounds(self):
        nl = make_tabulated(self.t, self.f)
        assert(2. < nl.mu <= nl.p)
        np.testing.assert_allclose(nl.p, 4., rtol=1e-3)
        report = check_assumptions(nl)
        assert(report.flags['mu'])
        assert(report.flags['monotone'])

    def test_primitive(self):
        nl = make_tabulated(self.t, self.f)
        x = np.linspace(0.5, 4., 8)
        np.testing.assert_allclose(nl.F(x), x**4/4, rtol=1e-3)

    def test_inverse(self):
        nl = make_tabulated(self.t, self.f)
        x = np.linspace(0., 4., 37)
        np.testing.assert_allclose(nl.f_inverse(nl.f(x)), x, rtol=1e-12, atol=1e-14)

    def test_given_constants(self):
        nl = make_tabulated(self.t, self.f, p=4.5, mu=3., ell=1.5)
        assert((nl.p, nl.mu, nl.ell) == (4.5, 3., 1.5))

    def test_default_exponent_at_samples(self):
        t = np.linspace(0., 2., 201)
        nl = make_tabulated(t, t**4)
        np.testing.assert_allclose(nl.p, 5., rtol=1e-3)
        x = np.linspace(0.01, 2., 400)
        assert(np.all(x*nl.f(x) >= nl.mu*nl.F(x)*(1 - 1e-12)))
        assert(nl.mu <= nl.p)
