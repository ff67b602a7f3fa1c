import re

_CRITERION = re.compile(r"test_criterion_(\d+)_([a-z0-9_]+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Always print one PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(report.nodeid)
            if match and report.when == "call":
                rows.append((int(match.group(1)), outcome == "passed",
                             match.group(2).replace("_", " ")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, label in sorted(rows):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {number:2d} {verdict}: {label}")
