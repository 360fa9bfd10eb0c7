import pytest

from curvekit.constructions import family


@pytest.fixture(scope="session")
def cat05():
    return family(0, 5)


@pytest.fixture(scope="session")
def cat06():
    return family(0, 6)


@pytest.fixture(scope="session")
def cat13():
    return family(1, 3)


@pytest.fixture(scope="session")
def cat14():
    return family(1, 4)


@pytest.fixture(scope="session")
def cat21():
    return family(2, 1)


@pytest.fixture(scope="session")
def cat22():
    return family(2, 2)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def criterion_log():
    """Append one summary line per acceptance criterion; printed at the end of the run."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
