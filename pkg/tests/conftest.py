import re

_outcomes: dict[str, tuple[str, str]] = {}


def _label(name: str) -> str | None:
    m = re.match(r"test_criterion_(\d+)_(\w+)", name)
    if not m:
        return None
    return f"criterion {int(m.group(1)):>2} ({m.group(2).replace('_', ' ')})"


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    label = _label(report.nodeid.split("::")[-1])
    if label is None:
        return
    detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
    if report.failed:
        _outcomes[label] = ("FAIL", detail)
    elif report.when == "call":
        _outcomes[label] = ("PASS", detail)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_outcomes):
        status, detail = _outcomes[label]
        line = f"{status}  {label}"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
