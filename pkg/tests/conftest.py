from hypothesis import HealthCheck, settings

settings.register_profile("starkit", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("starkit")


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import SUMMARY

    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in SUMMARY:
            terminalreporter.write_line(line)
