"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

_CRITERIA = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n, title = props["criterion"]
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True, "detail": ""})
    if report.when == "call" or report.failed:
        entry["ok"] = entry["ok"] and report.passed
        entry["detail"] = props.get("detail", entry["detail"])


def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", (m.args[0], m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "PASS" if e["ok"] else "FAIL"
        line = f"[{status}] criterion {n}: {e['title']}"
        if e["detail"]:
            line += f" ({e['detail']})"
        terminalreporter.write_line(line)
