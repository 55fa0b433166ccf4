# License: BSD 3 clause

from argparse import ArgumentParser

SUBCOMMANDS = ['solve', 'verify', 'conjugate', 'embed-check', 'manufactured']

def add_log_option(parser):
    logging = parser.add_argument_group('log')
    logging.add_argument("--log", dest="loglevel", default="WARNING",
                         choices=['WARNING', 'INFO', 'DEBUG', 'ERROR'],
                         help="Set the log level")

def options():
    parser = ArgumentParser(add_help=False)
    add_log_option(parser)
    args, unknown = parser.parse_known_args()
    return args

def cli_parser():
    """
    parser of the pyrevol command line.
    """
    parser = ArgumentParser(prog='pyrevol',
                            description="Positive monotone solutions of -Lap u + u = a f(u) "
                                        "on domains of m revolution.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS,
                        help="task to run")
    parser.add_argument("config", nargs='?', default=None,
                        help="JSON configuration file (a list of documents runs a sweep)")
    parser.add_argument("--set", dest="overrides", action='append', default=[],
                        metavar="KEY=VALUE",
                        help="override a config entry with a dotted path, e.g. solver.tol_residual=1e-9")
    parser.add_argument("--output", dest="output", default=None,
                        help="output directory (overrides output.dir)")
    add_log_option(parser)
    return parser
