# License: BSD 3 clause

import logging
from colorlog import ColoredFormatter

from .options import options

loggers = {}
_level = None

LOG_COLORS = {
    'DEBUG':    'green',
    'INFO':     'cyan',
    'WARNING':  'blue',
    'ERROR':    'red',
    'CRITICAL': 'red,bg_white',
}


def get_world():
    """
    return the rank and the size of MPI_COMM_WORLD, (0, 1) when mpi4py
    is not installed.
    """
    try:
        import mpi4py.MPI as mpi
    except ImportError:
        return 0, 1
    return mpi.COMM_WORLD.Get_rank(), mpi.COMM_WORLD.Get_size()


def _numeric_level(level):
    numeric_level = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError('Invalid log level: {0}'.format(level))
    return numeric_level


def set_level(level):
    """
    change the level of the pyrevol loggers, the existing ones and the next ones.
    """
    global _level
    numeric_level = _numeric_level(level)
    _level = numeric_level
    for logger in loggers.values():
        logger.setLevel(numeric_level)


def setLogger(name, level=None):
    """
    return the logger of the module name, with a colored console handler
    prefixed by the MPI rank.

    usage: pyrevol solve config.json --log=INFO
    """
    if name in loggers:
        return loggers[name]

    if level is not None:
        numeric_level = _numeric_level(level)
    elif _level is not None:
        numeric_level = _level
    else:
        numeric_level = _numeric_level(options().loglevel)
    formatter = ColoredFormatter(
        "%(log_color)s[{0}] %(levelname)-8s%(reset)s %(blue)s%(name)s in function %(funcName)s line %(lineno)s\n%(black)s%(message)s".format(get_world()[0]),
        reset=True,
        log_colors=LOG_COLORS,
        style='%'
    )
    console = logging.StreamHandler()
    console.setFormatter(formatter)

    logger = logging.getLogger(name)
    logger.setLevel(numeric_level)
    logger.addHandler(console)
    logger.propagate = False
    loggers[name] = logger
    return logger
