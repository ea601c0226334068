import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# quotients used across several test modules
F4 = "1^-7 2^17 4^-3"          # weight 7/2, level 4
F6 = "1^1 2^1 3^1 6^3"         # weight 3, level 6
F12 = "1^1 2^-1 3^-1 4^1 6^4 12^-2"
F27 = "3^2 9^-1 27^1"


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
