import logging

import pytest

from pyrevol import logs


class test_logs(object):
    def test_cached(self):
        assert(logs.setLogger('pyrevol.test_a') is logs.setLogger('pyrevol.test_a'))

    def test_set_level(self):
        log = logs.setLogger('pyrevol.test_b')
        logs.set_level('DEBUG')
        assert(log.level == logging.DEBUG)
        assert(logs.setLogger('pyrevol.test_c').level == logging.DEBUG)
        logs.set_level('WARNING')
        assert(log.level == logging.WARNING)

    def test_bad_level(self):
        with pytest.raises(ValueError):
            logs.set_level('LOUD')

    def test_world(self):
        rank, size = logs.get_world()
        assert(0 <= rank < size)
