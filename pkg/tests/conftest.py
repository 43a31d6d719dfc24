import numpy as np
import pytest

from sqholo.images import load_image


@pytest.fixture(scope="session")
def coffee():
    """Normalised 128x128 natural-image target (our stand-in for Peppers)."""
    return load_image("coffee", 128)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_field(rng, ny, nx, scale=1.0):
    return scale * (rng.normal(size=(ny, nx)) + 1j * rng.normal(size=(ny, nx)))


def random_in_disk(rng, shape, radius=1.0):
    r = radius * np.sqrt(rng.random(shape))
    return r * np.exp(2j * np.pi * rng.random(shape))


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (report.when != "call" and report.passed):
        return
    number, title = mark.args
    measured = dict(report.user_properties).get("measured", "")
    prev = _criteria.get(number)
    ok = report.passed and (prev is None or prev[1])
    _criteria[number] = (title, ok, measured or (prev[2] if prev else ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok, measured = _criteria[number]
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if measured:
            line += f"  [{measured}]"
        tr.write_line(line, green=ok, red=not ok)
