import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA

    status = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if name in CRITERIA and getattr(rep, "when", "call") == "call":
                status[name] = "PASS" if outcome == "passed" else "FAIL"
            elif name in CRITERIA and outcome != "passed":
                status[name] = "FAIL"
    if not status:
        return
    terminalreporter.section("acceptance criteria")
    for name, title in CRITERIA.items():
        if name in status:
            terminalreporter.write_line(f"{status[name]}  {title}")
