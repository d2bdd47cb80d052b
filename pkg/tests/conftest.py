from __future__ import annotations

import pytest

from arcmilnor import parse_poly, resolve

# Germs used across modules: (expression, variables).
CORPUS = [
    ("x^2+y^3", "xy"),
    ("x*y", "xy"),
    ("x^3+y^3", "xy"),
    ("x", "x"),
    ("x^2", "x"),
    ("x^3", "x"),
    ("y-x^2", "xy"),
    ("x^2+y^2", "xy"),
    ("x^2*y+y^3", "xy"),
    ("y^2-x^4", "xy"),
    ("x^5+y^7", "xy"),
    ("(x^2+y^3)^2", "xy"),
    ("(y^2-x^3)*(y^2-2*x^3)", "xy"),
]


def P(text, names="xy"):
    return parse_poly(text, list(names))


@pytest.fixture(scope="session")
def cusp():
    return P("x^2+y^3")


@pytest.fixture(scope="session")
def cusp_res(cusp):
    return resolve(cusp, germ="x^2 + y^3")


@pytest.fixture(scope="session")
def corpus_res():
    return {text: resolve(P(text, names)) for text, names in CORPUS}


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.criterion_lines():
        terminalreporter.write_line(line)
