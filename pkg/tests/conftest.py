"""Shared pytest configuration."""


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    outcome = "PASS" if report.passed else "FAIL"
    name = report.nodeid.split("::")[-1]
    print(f"[acceptance] {outcome}: {name}", flush=True)
