import pytest

_acceptance: dict[str, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") is None:
        return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    failed = rep.failed or (rep.when == "call" and rep.outcome != "passed")
    prev = _acceptance.get(item.nodeid)
    if prev is None or failed or rep.when == "call":
        status = "FAIL" if failed or (prev and prev[1] == "FAIL") else "PASS"
        duration = rep.duration if rep.when == "call" else (prev[2] if prev else 0.0)
        _acceptance[item.nodeid] = (doc, status, duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status, duration in _acceptance.values():
        terminalreporter.write_line(f"{status}  {doc}  ({duration:.2f}s)")
