"""Shared pytest configuration.

Prints one summary line per acceptance criterion at the end of the run, so
the acceptance gate's outcome is visible even when per-test output is
captured.
"""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = {}
    for outcome, verdict in (("passed", "PASS"), ("failed", "FAIL"),
                             ("error", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid or "::test_criterion_" not in nodeid:
                continue
            name = nodeid.split("::")[-1].replace("test_criterion_", "")
            if verdicts.get(name) != "FAIL":
                verdicts[name] = verdict
    if not verdicts:
        return

    def crit_num(name):
        head = name.split("_", 1)[0]
        return int(head) if head.isdigit() else 99

    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name in sorted(verdicts, key=crit_num):
        terminalreporter.write_line("  criterion %-32s %s" % (name, verdicts[name]))
