import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One ACCEPTANCE <n> PASS|FAIL line per acceptance criterion."""
    verdicts: dict[int, str] = {}
    for outcome, verdict in (("passed", "PASS"), ("failed", "FAIL"),
                             ("error", "FAIL")):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if match:
                number = int(match.group(1))
                if verdict == "FAIL" or number not in verdicts:
                    verdicts[number] = verdict
    if verdicts:
        terminalreporter.write_sep("-", "acceptance summary")
        for number in sorted(verdicts):
            terminalreporter.write_line(
                f"ACCEPTANCE {number} {verdicts[number]}")
