import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the summary."""

    class _Recorder:
        def __init__(self):
            self.label = None
            self.detail = ""

        def __call__(self, label: str):
            self.label = label
            return self

    rec = _Recorder()
    yield rec
    # outcome is attached by the hook below


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "criterion" not in item.fixturenames:
        return
    rec = item.funcargs.get("criterion")
    if rec is None or rec.label is None:
        return
    status = "PASS" if report.passed else "FAIL"
    line = f"[{status}] {rec.label}"
    if rec.detail:
        line += f" -- {rec.detail}"
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
