import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        name, ok = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {name}")
