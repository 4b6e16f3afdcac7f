import re

from hypothesis import settings

settings.register_profile("suite", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per numbered acceptance criterion."""
    outcomes: dict[int, list[bool]] = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "") or ""
            m = re.search(r"test_criterion_(\d+)", nodeid)
            if m is None:
                continue
            outcomes.setdefault(int(m.group(1)), []).append(status == "passed")
    if not outcomes:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for k in sorted(outcomes):
        verdict = "PASS" if all(outcomes[k]) else "FAIL"
        terminalreporter.write_line(f"  criterion {k}: {verdict}")
