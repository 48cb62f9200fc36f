import sys

import numpy as np
import pytest

from hamsynth import build_gate, builtin_device, unitarity_defect
from hamsynth import synthesis as _synthesis

_ACCEPTANCE = []

# every propagator built during the run, as (count, worst defect)
PROPAGATOR_AUDIT = {"count": 0, "worst": 0.0}


def _audited(fn):
    def wrapper(*args, **kwargs):
        u = fn(*args, **kwargs)
        PROPAGATOR_AUDIT["count"] += 1
        PROPAGATOR_AUDIT["worst"] = max(PROPAGATOR_AUDIT["worst"], unitarity_defect(u))
        return u

    return wrapper


# installed before test modules import anything from the package
_propagate = _audited(_synthesis.propagate)
for _name, _mod in list(sys.modules.items()):
    if _name == "hamsynth" or _name.startswith("hamsynth."):
        if getattr(_mod, "propagate", None) is _synthesis.propagate:
            _mod.propagate = _propagate
_synthesis._Problem.unitary = _audited(_synthesis._Problem.unitary)


@pytest.fixture(scope="session")
def heis2():
    return builtin_device("heis2", {"B1": 1, "B2": 1, "J12": 0.1})


@pytest.fixture(scope="session")
def heis2perm():
    return builtin_device("heis2perm", {"B1": 1, "B2": 1, "J12": 0.1})


@pytest.fixture(scope="session")
def jj2():
    return builtin_device("jj2", {"E_c": 10, "E_J": 1, "E_L": 0.5})


@pytest.fixture
def cnot():
    return build_gate("cnot")


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)


def random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    _ACCEPTANCE.append((marker.args[0], marker.args[1], rep.outcome, dict(rep.user_properties).get("detail", "")))


def pytest_collection_modifyitems(items):
    # the unitarity audit reads what every other test produced
    items.sort(key=lambda item: item.get_closest_marker("audit_last") is not None)


def pytest_configure(config):
    config.addinivalue_line("markers", "audit_last: run after all other tests")
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, outcome, detail in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {num:2d}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
