import warnings

import pytest

from wgmcqed.material import MaterialModel, cesium_d2
from wgmcqed.sweep import run_sweep

N_SILICA = 1.45246
LAMBDA_CS = 852.359e-9


@pytest.fixture(scope="session")
def silica():
    return MaterialModel(n_fixed=N_SILICA)


@pytest.fixture(scope="session")
def atom():
    return cesium_d2()


@pytest.fixture(scope="session")
def cs_sweep(atom, silica):
    """Modeled-Q Cs D2 sweep over l = 20..120 at fixed n."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return run_sweep(atom, silica, 20, 120)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS, key=lambda k: int(k.split()[0])):
        ok, n, failed = RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name} ({n - len(failed)}/{n} checks)")
        for label, _, detail in failed:
            terminalreporter.write_line(f"      failed: {label}: {detail}")
