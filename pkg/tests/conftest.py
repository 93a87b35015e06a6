import pytest

CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion based on the test outcome."""
    holder = {}

    def declare(number, text):
        holder["key"] = (number, text)

    yield declare
    if "key" in holder:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        CRITERIA[holder["key"]] = ok
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {holder['key'][0]}: {holder['key'][1]}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, text), ok in sorted(CRITERIA.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
