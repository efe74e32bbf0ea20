import pytest

# filled by test_acceptance; one (number, name, passed, seconds, limit) per criterion
ACCEPTANCE: list[tuple[int, str, bool, float, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, seconds, limit in sorted(ACCEPTANCE):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{mark} {number:2d} {name} ({seconds:.2f}s / {limit:g}s)")


@pytest.fixture(autouse=True)
def _fresh_memo():
    from scatkit.category import clear_memo

    clear_memo()
    yield
