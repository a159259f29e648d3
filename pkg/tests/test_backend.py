import os
import subprocess
import sys

import pytest

from vranplan import _accel

PROBE = ("from vranplan import backend, pack, CellDemand, DuProfile;"
         "from vranplan import _packing_kernels as k;"
         "p = pack([CellDemand('a', 80), CellDemand('b', 80)], DuProfile(), 2);"
         "print(backend(), k.min_partition.__name__, p.dus_used)")


def _probe(flag):
    env = dict(os.environ)
    env.pop("VRANPLAN_DISABLE_JIT", None)
    if flag is not None:
        env["VRANPLAN_DISABLE_JIT"] = flag
    return subprocess.run([sys.executable, "-c", PROBE], env=env, check=True,
                          capture_output=True, text=True).stdout.split()


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_default_backend_is_numba():
    assert _probe(None) == ["numba", "min_partition_nb", "2"]
    assert _probe("0") == ["numba", "min_partition_nb", "2"]


@pytest.mark.parametrize("flag", ["1", "true", "YES", "on"])
def test_flag_selects_numpy(flag):
    assert _probe(flag) == ["numpy", "min_partition_np", "2"]
