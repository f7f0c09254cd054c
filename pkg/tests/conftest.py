import re
from collections import OrderedDict

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

_CRITERION = re.compile(r"test_(A\d+)_")
_results: "OrderedDict[str, list]" = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if not item.fspath.basename == "test_acceptance.py":
        return
    m = _CRITERION.match(item.name)
    if not m:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.setdefault(m.group(1), []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: int(k[1:])):
        runs = _results[key]
        ok = all(p for _, p in runs)
        failed = [name for name, p in runs if not p]
        line = f"{key}: {'PASS' if ok else 'FAIL'} ({sum(p for _, p in runs)}/{len(runs)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        tr.write_line(line)
