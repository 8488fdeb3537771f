def expected_value(fx) -> dict:
    """The expected values of a fixture, without provenance tags."""
    return {k: v["value"] for k, v in fx.expected()["expected"].items()}


def close(a, b, tol=1e-9) -> bool:
    """Structural equality with absolute tolerance on floats."""
    if isinstance(a, float) or isinstance(b, float):
        return isinstance(a, (int, float)) and isinstance(b, (int, float)) and abs(a - b) <= tol
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(close(a[k], b[k], tol) for k in a)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(close(x, y, tol) for x, y in zip(a, b))
    return a == b


_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_ac"):
        return
    if report.when == "call" or report.failed:
        _CRITERIA[name] = _CRITERIA.get(name, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[1][2:])):
        number = name.split("_")[1][2:]
        label = " ".join(name.split("_")[2:])
        terminalreporter.write_line("criterion %s (%s): %s"
                                    % (number, label, "PASS" if _CRITERIA[name] else "FAIL"))
