import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from multicomm import diagram_from_data  # noqa: E402

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def make_square(size_a=2, size_b=2):
    return diagram_from_data(
        ["a", "b", "c"],
        [("a", "c"), ("b", "c")],
        {"a": [str(k) for k in range(size_a)], "b": [str(k) for k in range(size_b)], "c": ["*"]},
        {
            ("a", "c"): {str(k): "*" for k in range(size_a)},
            ("b", "c"): {str(k): "*" for k in range(size_b)},
        },
    )


PAIRS = ["00", "01", "10", "11"]


def make_diamond2():
    first = {p: p[0] for p in PAIRS}
    second = {p: p[1] for p in PAIRS}
    return diagram_from_data(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        {"a": PAIRS, "b": PAIRS, "c": ["0", "1"], "d": ["0", "1"]},
        {("a", "c"): first, ("a", "d"): second, ("b", "c"): first, ("b", "d"): second},
    )


def make_chain():
    return diagram_from_data(
        ["a", "b", "c"],
        [("a", "b"), ("b", "c")],
        {"a": ["0", "1", "2"], "b": ["x", "y"], "c": ["*"]},
        {
            ("a", "b"): {"0": "x", "1": "x", "2": "y"},
            ("b", "c"): {"x": "*", "y": "*"},
            ("a", "c"): {"0": "*", "1": "*", "2": "*"},
        },
    )


def make_point_diagram(labels=("0", "1")):
    return diagram_from_data(["a"], [], {"a": list(labels)}, {})


@pytest.fixture
def square():
    return make_square()


@pytest.fixture
def diamond2():
    return make_diamond2()


@pytest.fixture
def chain():
    return make_chain()


@pytest.fixture
def point_diagram():
    return make_point_diagram()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None:
        return
    ran = {
        int(rep.nodeid.split("test_criterion_")[1].split("_")[0])
        for key in ("passed", "failed")
        for rep in terminalreporter.stats.get(key, [])
        if "test_criterion_" in rep.nodeid and rep.when == "call"
    }
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ran):
        # a criterion that failed before reaching its summary line has no entry
        terminalreporter.write_line(module.RESULTS.get(n, f"criterion {n}: FAIL  (see traceback above)"))
