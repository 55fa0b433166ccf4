# License: BSD 3 clause

"""
Validation of the configuration documents.

A configuration is a dictionary (usually read from a JSON file) which is
compared key by key with a prototype: each key of the prototype gives the
tuple of accepted types or of test functions for the value.
The report is a colored line-by-line copy of the dictionary where the
wrong entries are marked.
"""

import os
import types

from .logs import setLogger

SOLVER_METHODS = ['fixed_point', 'mountain_pass']
NONLINEARITY_TYPES = ['power', 'tabulated']
WEIGHT_TYPES = ['constant', 'radial_power', 'separable', 'csv']
OUTPUT_FORMATS = ['csv', 'json', 'h5', 'png']


class ConfigError(ValueError):
    """
    raised when a configuration document is not valid.

    Attributes
    ----------

    report : string
      the colored report of the validation
    """
    def __init__(self, message, report=''):
        ValueError.__init__(self, message)
        self.report = report


class PrintInColor(object):
    RED = '\033[91m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    LIGHT_PURPLE = '\033[94m'
    PURPLE = '\033[95m'
    END = '\033[0m'

    @classmethod
    def error(cls, s):
        return cls.RED + str(s) + cls.END

    @classmethod
    def correct(cls, s):
        return cls.END + str(s) + cls.END

    @classmethod
    def missing(cls, s):
        return cls.PURPLE + str(s) + cls.END

    @classmethod
    def unknown(cls, s, b):
        if b:
            return cls.correct(s)
        else:
            return cls.error(s)

def space(ntab):
    return "    "*ntab

def debut(b):
    if b:
        return PrintInColor.correct("\n   |")
    else:
        return PrintInColor.error("\n>>>|")

def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)

def is_list_generic(l, test_elem, size=None):
    test = isinstance(l, (list, tuple)) and len(l) > 0
    ligne = ''
    if test:
        if size is not None and len(l) != size:
            test = False
        items = []
        for e in l:
            test_e = test_elem(e)
            test = test and test_e
            items.append(PrintInColor.unknown(e, test_e))
        ligne = '[' + ', '.join(items) + ']'
    else:
        ligne = PrintInColor.error(l)
    return test, ligne

def is_list_int(l, ntab=None):
    return is_list_generic(l, lambda e: isinstance(e, int) and not isinstance(e, bool))

def is_list_float(l, ntab=None):
    return is_list_generic(l, _is_number)

def is_list_list_float(l, ntab=None):
    return is_list_generic(l, lambda e: is_list_float(e)[0])

def is_list_format(l, ntab=None):
    return is_list_generic(l, lambda e: e in OUTPUT_FORMATS)

def _is_choice(choices):
    def test_choice(d, ntab=None):
        test = d in choices
        return test, PrintInColor.unknown(d, test)
    return test_choice

is_solver_method = _is_choice(SOLVER_METHODS)
is_nonlinearity_type = _is_choice(NONLINEARITY_TYPES)
is_weight_type = _is_choice(WEIGHT_TYPES)

def is_positive_number(d, ntab=None):
    test = _is_number(d) and d > 0
    return test, PrintInColor.unknown(d, test)

def is_nonnegative_number(d, ntab=None):
    test = _is_number(d) and d >= 0
    return test, PrintInColor.unknown(d, test)

def is_positive_int(d, ntab=None):
    test = isinstance(d, int) and not isinstance(d, bool) and d >= 1
    return test, PrintInColor.unknown(d, test)

def is_nonnegative_int(d, ntab=None):
    test = isinstance(d, int) and not isinstance(d, bool) and d >= 0
    return test, PrintInColor.unknown(d, test)

def _is_sub_dico(proto):
    def test_sub(d, ntab=0):
        if not isinstance(d, dict):
            return False, PrintInColor.error(d)
        return test_dico_prototype(d, proto, ntab=ntab)
    return test_sub

proto_domain = {
    'n': (is_list_int,),
}

proto_grid = {
    'cells': (is_list_int,),
    'eps': (type(None), is_nonnegative_number),
}

proto_nonlinearity = {
    'type': (is_nonlinearity_type,),
    'p': (type(None), is_positive_number),
    'table_path': (type(None), str),
    'mu': (type(None), is_positive_number),
    'ell': (type(None), is_positive_number),
    'growth_C': (type(None), is_positive_number),
}

proto_weight = {
    'type': (is_weight_type,),
    'value': (type(None), is_positive_number),
    'alpha': (type(None), is_nonnegative_number),
    'axis': (type(None), is_nonnegative_int),
    'factors': (type(None), is_list_list_float),
    'path': (type(None), str),
}

proto_solver = {
    'method': (type(None), is_solver_method),
    'tol_residual': (type(None), is_positive_number),
    'tol_step': (type(None), is_positive_number),
    'max_outer': (type(None), is_positive_int),
    'linear_tol': (type(None), is_positive_number),
    'linear_max_iter': (type(None), is_positive_int),
    'path_samples': (type(None), is_positive_int),
    'descent_step': (type(None), is_positive_number),
    'seed': (type(None), is_nonnegative_int),
    'perturbation': (type(None), is_nonnegative_number),
    'armijo_c': (type(None), is_positive_number),
    'armijo_slack': (type(None), is_nonnegative_number),
    'max_backtracks': (type(None), is_positive_int),
    'max_doublings': (type(None), is_positive_int),
    'cone_tol': (type(None), is_nonnegative_number),
    'reduce': (type(None), bool),
}

proto_output = {
    'dir': (type(None), str),
    'formats': (type(None), is_list_format),
}

proto_verify = {
    'q': (type(None), is_positive_number),
    'samples': (type(None), is_positive_int),
    'trials': (type(None), is_positive_int),
    'pairs': (type(None), is_positive_int),
    'seed': (type(None), is_nonnegative_int),
}

is_dico_domain = _is_sub_dico(proto_domain)
is_dico_grid = _is_sub_dico(proto_grid)
is_dico_nonlinearity = _is_sub_dico(proto_nonlinearity)
is_dico_weight = _is_sub_dico(proto_weight)
is_dico_solver = _is_sub_dico(proto_solver)
is_dico_output = _is_sub_dico(proto_output)
is_dico_verify = _is_sub_dico(proto_verify)

proto_config = {
    'name': (type(None), str),
    'domain': (is_dico_domain,),
    'grid': (is_dico_grid,),
    'nonlinearity': (is_dico_nonlinearity,),
    'weight_a': (type(None), is_dico_weight),
    'solver': (type(None), is_dico_solver),
    'output': (type(None), is_dico_output),
    'verify': (type(None), is_dico_verify),
    'allow_supercritical': (type(None), bool),
}

def test_dico_prototype(dico, proto, ntab=0):
    log = setLogger(__name__)
    test_g = True
    aff = ''
    for key, value in list(dico.items()):
        value_p = proto.get(key, None)
        test_loc = False
        if value_p is None:
            aff_k = PrintInColor.error(key) + ": "
        else:
            aff_k = PrintInColor.correct(key)+ ": "
            for vpk in value_p:
                if isinstance(vpk, type):
                    # bool is an int: only accept it where it is asked for
                    if isinstance(value, vpk) and (vpk is bool or not isinstance(value, bool)):
                        aff_k += str(value)
                        test_loc = True
                        break
                elif isinstance(vpk, types.FunctionType):
                    testk, strk = vpk(value, ntab=ntab+1)
                    if testk:
                        aff_k += strk
                        test_loc = True
                        break
                else:
                    log.error("Unknown type in the prototype: {0}".format(vpk))
            if not test_loc:
                aff_k += PrintInColor.error(value)
        aff += debut(test_loc) + space(ntab) + aff_k
        test_g = test_g and test_loc
    for key_p, value_p in list(proto.items()):
        if key_p not in dico:
            if value_p[0] == type(None):
                aff += debut(True) + space(ntab) + PrintInColor.correct(key_p) + ': None'
            else:
                aff += debut(False) + space(ntab) + PrintInColor.missing(str(key_p) + ': ???')
                test_g = False
    return test_g, aff

def _exists(path, base):
    if not os.path.isabs(path) and base is not None:
        path = os.path.join(base, path)
    return os.path.exists(path)

def test_compatibility_dim(dico):
    test = True
    aff = ''
    n = dico['domain']['n']
    cells = dico['grid']['cells']
    if len(n) != len(cells):
        aff += PrintInColor.error("The list of cells ({0} entries) does not match the list n ({1} entries).\n".format(len(cells), len(n)))
        test = False
    if any(nk < 1 for nk in n):
        aff += PrintInColor.error("Every entry of n must be at least 1.\n")
        test = False
    if any(s < 1 for s in cells):
        aff += PrintInColor.error("Every entry of cells must be at least 1.\n")
        test = False
    return test, aff

def test_compatibility_nonlinearity(dico, base=None):
    test = True
    aff = ''
    dnl = dico['nonlinearity']
    if dnl['type'] == 'power':
        p = dnl.get('p', None)
        if p is None:
            aff += PrintInColor.missing("The key 'p' is needed for a power nonlinearity.\n")
            test = False
        elif p <= 2:
            aff += PrintInColor.error("The exponent p must be larger than 2 (got {0}).\n".format(p))
            test = False
    else:
        path = dnl.get('table_path', None)
        if path is None:
            aff += PrintInColor.missing("The key 'table_path' is needed for a tabulated nonlinearity.\n")
            test = False
        elif not _exists(path, base):
            aff += PrintInColor.error("The table file {0} does not exist.\n".format(path))
            test = False
    return test, aff

def test_compatibility_weight(dico, base=None):
    test = True
    aff = ''
    dw = dico.get('weight_a', None)
    if dw is None:
        return test, aff
    m = len(dico['domain']['n'])
    needed = {'constant': 'value',
              'radial_power': 'alpha',
              'separable': 'factors',
              'csv': 'path'}[dw['type']]
    if dw.get(needed, None) is None:
        aff += PrintInColor.missing("The key '{0}' is needed for a weight of type {1}.\n".format(needed, dw['type']))
        return False, aff
    if dw['type'] == 'radial_power' and dw.get('axis', 0) is not None and dw.get('axis', 0) >= m:
        aff += PrintInColor.error("The axis {0} of the radial power does not exist (m={1}).\n".format(dw['axis'], m))
        test = False
    if dw['type'] == 'separable' and len(dw['factors']) != m:
        aff += PrintInColor.error("A separable weight needs one factor per axis ({0} given, m={1}).\n".format(len(dw['factors']), m))
        test = False
    if dw['type'] == 'csv' and not _exists(dw['path'], base):
        aff += PrintInColor.error("The weight file {0} does not exist.\n".format(dw['path']))
        test = False
    return test, aff

def validate(dico, proto=None, test_comp=True, base=None):
    """
    test a configuration dictionary

    Parameters
    ----------

    dico : dict
      the configuration
    proto : dict
      the prototype (default proto_config)
    test_comp : bool
      run the compatibility tests between the entries
    base : string
      directory of the configuration file, used to find relative paths

    Returns
    -------

    test : bool
    aff : string
      the colored report
    """
    if proto is None:
        proto = proto_config
    aff = "\n" + "*"*75
    aff += "\nTest of the dictionary\n"
    aff += "*"*75
    if not isinstance(dico, dict):
        aff += debut(False) + PrintInColor.error(dico) + '\n' + "*"*75 + '\n'
        return False, aff
    test, aff_d = test_dico_prototype(dico, proto)
    aff += aff_d
    if test and test_comp:
        test_c1, aff_c1 = test_compatibility_dim(dico)
        test_c2, aff_c2 = test_compatibility_nonlinearity(dico, base)
        test_c3, aff_c3 = test_compatibility_weight(dico, base)
        test = test_c1 and test_c2 and test_c3
        if not test:
            aff += '\n' + '-'*60 + '\n'
            aff += aff_c1
            aff += aff_c2
            aff += aff_c3
            aff += '-'*60 + '\n'
        else:
            aff += '\n'
    else:
        aff += '\n'
    aff += "*"*75 + '\n'
    return test, aff
