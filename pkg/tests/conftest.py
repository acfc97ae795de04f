import importlib

import pytest

from vertconf import _pykernel

KERNELS = [_pykernel]
try:
    KERNELS.append(importlib.import_module("vertconf._ckernel"))
except ImportError:  # extension not built
    pass


@pytest.fixture(params=KERNELS, ids=lambda m: m.IMPLEMENTATION)
def kern(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
