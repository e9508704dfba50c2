import pytest

_acceptance: dict[str, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        _acceptance[marker.args[0]] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s.split(".")[0])):
        status = "PASS" if _acceptance[label] else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
