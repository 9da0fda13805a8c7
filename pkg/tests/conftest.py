import os

from hypothesis import HealthCheck, settings

from schursim import SchurLabel

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def lab(path, M):
    """Label from textual spins, e.g. lab("1 1/2", "-1/2")."""
    return SchurLabel.of(path.split(), M)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, title, elapsed = RESULTS[number]
        terminalreporter.write_line(
            f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.1f}s)")
