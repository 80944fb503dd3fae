from __future__ import annotations

import time

import pytest

_ROWS: list[tuple[str, bool, str]] = []


class AcceptanceRecorder:
    def __init__(self, label: str):
        self.label = label
        self.start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def record(self, passed: bool, detail: str = "") -> None:
        _ROWS.append((self.label, passed, f"{detail} [{self.elapsed():.2f}s]".strip()))


@pytest.fixture
def acceptance(request):
    marker = request.node.get_closest_marker("criterion")
    label = marker.args[0] if marker else request.node.name
    return AcceptanceRecorder(label)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _ROWS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ROWS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
