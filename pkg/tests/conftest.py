import re

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)_(\w+)", item.name)
    if m is None or not item.nodeid.startswith("tests/test_acceptance.py"):
        return
    key = (int(m.group(1)), m.group(2))
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _ACCEPTANCE[key] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"{verdict}  criterion {num:2d}  {name}")
