"""Shared pytest plumbing: the acceptance scoreboard.

Criterion results recorded via `record_scoreboard_line` are replayed in the
terminal summary, so the one-line-per-criterion report stays visible even
under pytest's output capture.
"""

_SCOREBOARD = []


def record_scoreboard_line(line):
    _SCOREBOARD.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _SCOREBOARD:
        return
    terminalreporter.section("acceptance scoreboard")
    for line in _SCOREBOARD:
        terminalreporter.write_line(line)
