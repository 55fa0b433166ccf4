import numpy as np
import pytest

from pyrevol.geometry import RevolutionSpec, make_spec


class test_revolution_spec(object):
    def test_ball(self):
        spec = RevolutionSpec([3])
        assert(spec.m == 1 and spec.N == 3)
        assert(spec.critical_exponent == np.inf)
        assert(spec.classical_exponent == 6.)
        # supercritical in the classical sense, subcritical in the cone
        assert(spec.is_subcritical(8.))
        assert(spec.is_supercritical(8.))

    def test_double_revolution(self):
        spec = RevolutionSpec([2, 2])
        assert(spec.m == 2 and spec.N == 4)
        assert(spec.critical_exponent == np.inf)
        assert(spec.classical_exponent == 4.)
        assert(spec.is_supercritical(5.))

    def test_cube(self):
        spec = RevolutionSpec([1, 1, 1])
        assert(spec.critical_exponent == 6.)
        assert(spec.is_subcritical(5.9))
        assert(not spec.is_subcritical(6.))

    def test_four_blocks(self):
        spec = RevolutionSpec([2, 1, 3, 2])
        assert(spec.N == 8)
        assert(spec.critical_exponent == 4.)
        np.testing.assert_allclose(spec.classical_exponent, 16./6)

    def test_restrict(self):
        spec = RevolutionSpec([2, 3, 4])
        assert(spec.restrict([2, 0]) == RevolutionSpec([2, 4]))
        assert(spec.restrict([1]).n == (3,))

    def test_errors(self):
        with pytest.raises(ValueError):
            RevolutionSpec([])
        with pytest.raises(ValueError):
            RevolutionSpec([2, 0])

    def test_make_spec(self):
        assert(make_spec(3) == RevolutionSpec([3]))
        assert(hash(make_spec([1, 2])) == hash(RevolutionSpec((1, 2))))

    def test_to_dict(self):
        assert(RevolutionSpec([3]).to_dict()['critical_exponent'] == 'inf')
        d = RevolutionSpec([1, 1, 1]).to_dict()
        assert(d == {'n': [1, 1, 1], 'N': 3, 'm': 3, 'critical_exponent': 6.})
