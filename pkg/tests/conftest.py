import pytest

from tangseg.corpus import GoldPoem, Poem

_RESULTS = pytest.StashKey[list]()


def make_gold(pid, segmented_lines, author=""):
    """GoldPoem from space-separated line strings."""
    seg = tuple(tuple(line.split(" ")) for line in segmented_lines)
    poem = Poem(pid, author, "", tuple("".join(words) for words in seg))
    return GoldPoem(poem, seg)


def make_poem(pid, lines, author=""):
    return Poem(pid, author, "", tuple(lines))


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion for the run summary."""
    results = request.config.stash.setdefault(_RESULTS, [])

    def check(name, ok, detail=""):
        results.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, [])
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
