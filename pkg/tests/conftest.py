import pytest

from slkweights.kostant import kpf_chamber_complex
from slkweights.multcomplex import cached_complex


@pytest.fixture(scope="session")
def complex3():
    return cached_complex(3, "poly")


@pytest.fixture(scope="session")
def glued3():
    return cached_complex(3, "glued")


@pytest.fixture(scope="session")
def raw4():
    # about half a minute on first use, then read from the on-disk cache
    return cached_complex(4, "raw")


@pytest.fixture(scope="session")
def glued4():
    return cached_complex(4, "glued")


@pytest.fixture(scope="session")
def kpf2():
    return kpf_chamber_complex(2)


@pytest.fixture(scope="session")
def kpf3():
    return kpf_chamber_complex(3)


@pytest.fixture(scope="session")
def walls4(glued4):
    from slkweights.multcomplex import derive_walls
    return derive_walls(glued4)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    if rep.failed or rep.when == "call":
        status = "PASS" if rep.passed else "FAIL"
        if _ACCEPTANCE.get(number, ("PASS",))[0] != "FAIL":
            _ACCEPTANCE[number] = (status, title, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, seconds = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({seconds:.1f}s)")
