# License: BSD 3 clause

"""
Batch command line of pyrevol.

usage::

    pyrevol solve config.json --set solver.tol_residual=1e-9 --output runs
    pyrevol verify config.json
    pyrevol conjugate config.json
    pyrevol embed-check config.json
    pyrevol manufactured [config.json]

The exit status is 0 on success, 1 when a contract fails (a solve which
does not converge, a failed check, an observed order out of range) and 2
when the configuration is not valid.
"""

import copy
import json
import os

import numpy as np

from .cone import ConeProjectionError
from .domain import Grid
from .elliptic import LinearSolveError
from .energy import Problem, make_weight, InfiniteEnergy
from .geometry import RevolutionSpec
from .logs import setLogger, set_level, get_world
from .manufactured import ManufacturedSolution, convergence_study
from .nonlinearity import make_power, load_table, check_assumptions, OutOfRangeError
from .options import cli_parser
from .solver import SolverConfig, solve, DegenerateIterationError, MountainPassSetupError
from .validate_dictionary import validate, ConfigError
from .verification import run_suite, embedding_ratio_scan, default_exponent, _jsonable
from .version import version

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

OUTPUT_ENV = 'PYREVOL_OUTPUT_DIR'
DEFAULT_FORMATS = ['csv', 'json']
CONJUGATE_SAMPLES = 201
VERIFY_DEFAULTS = {'q': None, 'samples': 20, 'trials': 5, 'pairs': 100, 'seed': 0}

# failures of a run on a valid configuration
RUN_ERRORS = (LinearSolveError, ConeProjectionError, DegenerateIterationError,
              MountainPassSetupError, InfiniteEnergy, OutOfRangeError)


def load_config(path):
    """
    return the JSON document of path (a dictionary or a list for a sweep).
    """
    log = setLogger(__name__)
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        log.error("Cannot read the configuration {0}: {1}".format(path, e))
        raise ConfigError("cannot read the configuration file {0}: {1}".format(path, e))
    except ValueError as e:
        log.error("The configuration {0} is not a JSON document: {1}".format(path, e))
        raise ConfigError("malformed JSON in {0}: {1}".format(path, e))


def parse_value(text):
    try:
        return json.loads(text)
    except ValueError:
        return text


def apply_overrides(dico, overrides):
    """
    apply the dotted overrides ['solver.tol_residual=1e-9', ...] to a copy of dico.
    """
    log = setLogger(__name__)
    dico = copy.deepcopy(dico)
    for item in overrides:
        key, sep, value = item.partition('=')
        if not sep or not key:
            log.error("The override {0!r} is not of the form key=value".format(item))
            raise ConfigError("malformed override {0!r}: expected KEY=VALUE".format(item))
        path = key.split('.')
        d = dico
        for k in path[:-1]:
            if d.get(k) is None:
                d[k] = {}
            if not isinstance(d[k], dict):
                log.error("The override {0!r} goes through the non dictionary entry {1}".format(item, k))
                raise ConfigError("cannot override {0}: {1} is not a section".format(key, k))
            d = d[k]
        d[path[-1]] = parse_value(value)
    return dico


def resolve_output(dico, output=None):
    """
    return the output directory: the --output option, then the
    PYREVOL_OUTPUT_DIR variable, then output.dir, then 'output'.
    """
    if output is not None:
        return output
    if os.environ.get(OUTPUT_ENV):
        return os.environ[OUTPUT_ENV]
    return ((dico or {}).get('output') or {}).get('dir') or 'output'


def check_config(dico, base=None):
    log = setLogger(__name__)
    test, aff = validate(dico, base=base)
    if not test:
        log.error(aff)
        raise ConfigError("the configuration is not valid", aff)
    log.info(aff)


def _path(path, base):
    if base is not None and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def build_nonlinearity(dnl, base=None):
    if dnl['type'] == 'power':
        return make_power(dnl['p'])
    kwargs = {k: dnl[k] for k in ['p', 'mu', 'ell', 'growth_C'] if dnl.get(k) is not None}
    return load_table(_path(dnl['table_path'], base), **kwargs)


def build_grid(dico):
    return Grid(RevolutionSpec(dico['domain']['n']), dico['grid']['cells'])


def _materialize(what, builder, *args):
    """
    call builder(*args) and turn the ValueError and OSError it raises
    (a malformed table, a weight outside the cone, a file which does not
    match the grid, p above 2*_m) into a ConfigError.
    """
    log = setLogger(__name__)
    try:
        return builder(*args)
    except ConfigError:
        raise
    except (ValueError, OSError) as e:
        log.error("The {0} cannot be built: {1}".format(what, e))
        raise ConfigError("invalid {0}: {1}".format(what, e))


def _build_problem(dico, base, cone_tol):
    nl = build_nonlinearity(dico['nonlinearity'], base)
    grid = build_grid(dico)
    dw = copy.deepcopy(dico.get('weight_a'))
    if dw is not None and dw.get('path') is not None:
        dw['path'] = _path(dw['path'], base)
    a = make_weight(grid, dw)
    eps = dico['grid'].get('eps') or 0.
    return Problem(grid, a, nl, eps, dico.get('allow_supercritical') or False, cone_tol)


def build_problem(dico, base=None, cone_tol=1e-8):
    """
    return the Problem described by a valid configuration.

    The errors raised while materializing the problem are configuration errors.
    """
    return _materialize('problem', _build_problem, dico, base, cone_tol)


def verify_options(dico, spec):
    """
    return the options of the verification suite with their defaults.
    """
    dv = dict(VERIFY_DEFAULTS)
    dv.update({k: v for k, v in (dico.get('verify') or {}).items() if v is not None})
    if dv['q'] is None:
        dv['q'] = default_exponent(spec)
    return dv


def resolve_config(dico, outdir, spec=None):
    """
    return a copy of the configuration with every default made explicit.
    """
    if dico is None:
        return None
    resolved = copy.deepcopy(dico)
    resolved['grid'] = dict(resolved['grid'])
    resolved['grid']['eps'] = resolved['grid'].get('eps') or 0.
    resolved['allow_supercritical'] = bool(resolved.get('allow_supercritical'))
    output = dict(resolved.get('output') or {})
    output['dir'] = outdir
    output['formats'] = output.get('formats') or list(DEFAULT_FORMATS)
    resolved['output'] = output
    resolved['solver'] = _materialize('solver configuration', SolverConfig.from_dict, dico.get('solver')).to_dict()
    if spec is not None:
        resolved['verify'] = verify_options(dico, spec)
    return resolved


def write_json(path, dico):
    with open(path, 'w') as f:
        json.dump(_jsonable(dico), f, indent=2, sort_keys=True)
        f.write('\n')


def _document(subcommand, dico, **results):
    doc = {'subcommand': subcommand, 'version': version, 'config': dico}
    doc.update(results)
    return doc


def write_slices(u, path):
    """
    write the two-column slices (t_k, u) through the middle cell along every axis.
    """
    for k in range(u.grid.m):
        t, v = u.line(k)
        np.savetxt(os.path.join(path, 'slice_t{0:d}.csv'.format(k+1)), np.column_stack([t, v]),
                   delimiter=',', fmt='%.17g', header='t_{0:d},value'.format(k+1), comments='')


def run_solve(dico, base, outdir):
    log = setLogger(__name__)
    cfg = _materialize('solver configuration', SolverConfig.from_dict, dico.get('solver'))
    pb = build_problem(dico, base, cfg.cone_tol)
    resolved = resolve_config(dico, outdir)
    formats = resolved['output']['formats']
    try:
        report = solve(pb, cfg)
    except RUN_ERRORS as e:
        log.error("The solve failed: {0}".format(e))
        if 'json' in formats:
            write_json(os.path.join(outdir, 'report.json'),
                       _document('solve', resolved, problem=pb.to_dict(), error=str(e), converged=False))
        print("solve failed: {0}".format(e))
        return EXIT_FAILURE

    if 'csv' in formats:
        report.u.to_csv(os.path.join(outdir, 'solution.csv'))
        report.write_histories(outdir)
        if pb.grid.m >= 2:
            write_slices(report.u, outdir)
    if 'json' in formats:
        write_json(os.path.join(outdir, 'report.json'),
                   _document('solve', resolved, problem=pb.to_dict(), report=report.to_dict()))
    if 'h5' in formats:
        from .hdf5 import save_solution
        save_solution(outdir, report, pb.a)
    if 'png' in formats:
        from .viewer import plot_solution, plot_histories
        plot_solution(report.u, os.path.join(outdir, 'solution.png'))
        plot_histories(report, os.path.join(outdir, 'histories.png'))
    print(report)
    return EXIT_SUCCESS if report.converged else EXIT_FAILURE


def run_verify(dico, base, outdir):
    nl = _materialize('nonlinearity', build_nonlinearity, dico['nonlinearity'], base)
    grid = _materialize('grid', build_grid, dico)
    resolved = resolve_config(dico, outdir, grid.spec)
    report = run_suite(nl, grid.spec, grid, **resolved['verify'])
    write_json(os.path.join(outdir, 'verify.json'),
               _document('verify', resolved, report=report.to_dict()))
    print(report)
    return EXIT_SUCCESS if report.passed else EXIT_FAILURE


def run_conjugate(dico, base, outdir):
    """
    tabulate F, F* and (F*)' at s = f(t) for t in [0, min(10, t_max)].
    """
    log = setLogger(__name__)
    nl = _materialize('nonlinearity', build_nonlinearity, dico['nonlinearity'], base)
    resolved = resolve_config(dico, outdir)
    constants = nl.to_dict()
    resolved['nonlinearity'].update({k: constants[k] for k in ['p', 'mu', 'ell', 'growth_C']})
    t = np.linspace(0., min(10., nl.t_max), CONJUGATE_SAMPLES)
    s = nl.f(t)
    data = np.column_stack([t, nl.F(t), s, nl.Fstar(s), nl.Fstar_prime(s)])
    np.savetxt(os.path.join(outdir, 'conjugate.csv'), data, delimiter=',', fmt='%.17g',
               header='t,F,s,Fstar,Fstar_prime', comments='')
    assumptions = check_assumptions(nl)
    if not assumptions.passed:
        log.warning("The nonlinearity breaks the assumptions {0}".format(assumptions.failed))
    write_json(os.path.join(outdir, 'conjugate.json'),
               _document('conjugate', resolved, nonlinearity=nl.to_dict(), assumptions=assumptions.to_dict()))
    print(nl)
    print(assumptions)
    return EXIT_SUCCESS


def run_embed_check(dico, base, outdir):
    grid = _materialize('grid', build_grid, dico)
    resolved = resolve_config(dico, outdir, grid.spec)
    dv = resolved['verify']
    result = embedding_ratio_scan(grid.spec, grid, dv['q'], dv['samples'], dv['seed'])
    write_json(os.path.join(outdir, 'embed_check.json'),
               _document('embed-check', resolved, result=result.to_dict()))
    print(result)
    return EXIT_SUCCESS if result.passed or not result.mandatory else EXIT_FAILURE


def run_manufactured(dico, base, outdir):
    if dico is None:
        spec, eps = RevolutionSpec([3]), 0.
    else:
        spec, eps = RevolutionSpec(dico['domain']['n']), (dico.get('grid') or {}).get('eps') or 0.
    ms = ManufacturedSolution(spec, eps=eps)
    report = convergence_study(ms)
    write_json(os.path.join(outdir, 'manufactured.json'),
               _document('manufactured', resolve_config(dico, outdir), v=str(ms.v), h=str(ms.h), study=report.to_dict(),
                         passed=report.passed()))
    print(report)
    return EXIT_SUCCESS if report.passed() else EXIT_FAILURE


RUNNERS = {'solve': run_solve,
           'verify': run_verify,
           'conjugate': run_conjugate,
           'embed-check': run_embed_check,
           'manufactured': run_manufactured}


def run(subcommand, dico, base=None, outdir='output'):
    """
    run one subcommand on one configuration and return the exit status.
    """
    log = setLogger(__name__)
    if subcommand not in RUNNERS:
        log.error("Unknown subcommand {0}".format(subcommand))
        raise ConfigError("unknown subcommand {0!r}, expected one of {1}".format(subcommand, sorted(RUNNERS)))
    if dico is not None:
        check_config(dico, base)
    elif subcommand != 'manufactured':
        log.error("The subcommand {0} needs a configuration file".format(subcommand))
        raise ConfigError("{0} needs a configuration file".format(subcommand))
    if not os.path.exists(outdir):
        os.makedirs(outdir)
    return RUNNERS[subcommand](dico, base, outdir)



def main(argv=None):
    """
    entry point of the pyrevol command, returns the exit status.
    """
    log = setLogger(__name__)
    args = cli_parser().parse_args(argv)
    set_level(args.loglevel)
    try:
        if args.config is None:
            docs, base = [None], None
        else:
            doc = load_config(args.config)
            base = os.path.dirname(os.path.abspath(args.config))
            docs = doc if isinstance(doc, list) else [doc]
        docs = [apply_overrides(d, args.overrides) if isinstance(d, dict) else d for d in docs]
    except ConfigError as e:
        print("configuration error: {0}".format(e))
        return EXIT_CONFIG

    sweep = len(docs) > 1
    rank, size = get_world() if sweep else (0, 1)
    status = EXIT_SUCCESS
    for i, dico in enumerate(docs):
        if i % size != rank:
            continue
        outdir = resolve_output(dico, args.output)
        if sweep:
            outdir = os.path.join(outdir, (dico or {}).get('name') or '{0:03d}'.format(i))
        try:
            code = run(args.subcommand, dico, base, outdir)
        except ConfigError as e:
            print("configuration error: {0}".format(e))
            if e.report:
                print(e.report)
            code = EXIT_CONFIG
        except RUN_ERRORS as e:
            log.error("{0} failed: {1}".format(args.subcommand, e))
            print("{0} failed: {1}".format(args.subcommand, e))
            code = EXIT_FAILURE
        status = max(status, code)
    return status
