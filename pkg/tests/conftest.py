_results = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    number = marker.args[0]
    ok = call.excinfo is None
    _results.setdefault(number, []).append((item.name, ok))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        runs = _results[number]
        status = "PASS" if all(ok for _, ok in runs) else "FAIL"
        names = ", ".join(name for name, _ in runs)
        terminalreporter.write_line("criterion %2d: %s  (%s)" % (number, status, names))
