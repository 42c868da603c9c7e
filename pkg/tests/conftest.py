from collections import defaultdict

import pytest

_VERDICTS = defaultdict(list)  # criterion -> [(part, passed, detail)]


@pytest.fixture
def verdict():
    """Record one part of an acceptance criterion, then assert it."""

    def record(criterion: str, part: str, passed: bool, detail: str):
        _VERDICTS[criterion].append((part, bool(passed), detail))
        assert passed, f"{criterion} [{part}] {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for criterion in sorted(_VERDICTS, key=lambda c: int(c[1:])):
        parts = _VERDICTS[criterion]
        ok = all(p for _, p, _ in parts)
        tr.write_line(f"{'PASS' if ok else 'FAIL'} {criterion}: "
                      + "; ".join(f"{name} {'ok' if p else 'FAILED'}" for name, p, _ in parts))
        for name, p, detail in parts:
            tr.write_line(f"    {'pass' if p else 'fail'} {criterion}/{name}: {detail}")
