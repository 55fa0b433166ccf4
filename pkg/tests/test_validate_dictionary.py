import copy

import pytest

from pyrevol import validate_dictionary as vd


def base_config():
    return {'name': 'ball',
            'domain': {'n': [3]},
            'grid': {'cells': [64]},
            'nonlinearity': {'type': 'power', 'p': 4},
            'weight_a': {'type': 'radial_power', 'alpha': 2.},
            'solver': {'method': 'fixed_point', 'tol_residual': 1e-8},
            'output': {'formats': ['csv', 'json']}}


class test_prototype(object):
    def test_valid(self):
        test, aff = vd.validate(base_config())
        assert(test)
        assert('Test of the dictionary' in aff)

    def test_optional_sections(self):
        dico = base_config()
        for key in ['name', 'weight_a', 'solver', 'output']:
            del dico[key]
        assert(vd.validate(dico)[0])

    @pytest.mark.parametrize('key', ['domain', 'grid', 'nonlinearity'])
    def test_missing(self, key):
        dico = base_config()
        del dico[key]
        assert(not vd.validate(dico)[0])

    def test_unknown_key(self):
        dico = base_config()
        dico['solver']['tolerance'] = 1e-8
        assert(not vd.validate(dico)[0])

    def test_types(self):
        for section, key, value in [('grid', 'cells', [True]),
                                    ('grid', 'cells', []),
                                    ('grid', 'eps', -1.),
                                    ('solver', 'method', 'newton'),
                                    ('solver', 'max_outer', 0),
                                    ('solver', 'reduce', 1),
                                    ('nonlinearity', 'type', 'exponential'),
                                    ('output', 'formats', ['vtk'])]:
            dico = base_config()
            dico[section][key] = value
            assert(not vd.validate(dico)[0])

    def test_not_a_dict(self):
        assert(not vd.validate([1, 2])[0])
        dico = base_config()
        dico['solver'] = 'fast'
        assert(not vd.validate(dico)[0])


class test_compatibility(object):
    def test_dimensions(self):
        dico = base_config()
        dico['grid']['cells'] = [64, 64]
        assert(not vd.validate(dico)[0])
        dico = base_config()
        dico['domain']['n'] = [0]
        assert(not vd.validate(dico)[0])
        # without the compatibility tests
        assert(vd.validate(dico, test_comp=False)[0])

    def test_power(self):
        dico = base_config()
        dico['nonlinearity']['p'] = 2
        assert(not vd.validate(dico)[0])
        del dico['nonlinearity']['p']
        assert(not vd.validate(dico)[0])

    def test_table(self, tmp_path):
        dico = base_config()
        dico['nonlinearity'] = {'type': 'tabulated', 'table_path': 'table.csv'}
        assert(not vd.validate(dico, base=str(tmp_path))[0])
        (tmp_path / 'table.csv').write_text('0,0\n1,1\n2,8\n')
        assert(vd.validate(dico, base=str(tmp_path))[0])

    def test_weight(self):
        dico = base_config()
        dico['weight_a'] = {'type': 'radial_power'}
        assert(not vd.validate(dico)[0])
        dico['weight_a'] = {'type': 'radial_power', 'alpha': 1., 'axis': 1}
        assert(not vd.validate(dico)[0])
        dico['weight_a'] = {'type': 'separable', 'factors': [[1., 1.], [1.]]}
        assert(not vd.validate(dico)[0])
        dico['weight_a'] = {'type': 'separable', 'factors': [[1., 1.]]}
        assert(vd.validate(dico)[0])
        dico['weight_a'] = {'type': 'csv', 'path': '/nonexistent/a.csv'}
        assert(not vd.validate(dico)[0])


def test_config_error():
    err = vd.ConfigError('bad', report='details')
    assert(isinstance(err, ValueError))
    assert(err.report == 'details')
