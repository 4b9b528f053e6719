from hypothesis import settings

# Compiled kernels pay a one-off JIT cost on first call, which would trip
# hypothesis' per-example deadline.
settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if any(acceptance_log.RESULTS.values()):
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.lines():
            terminalreporter.write_line(line)
