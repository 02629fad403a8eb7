import sys
from pathlib import Path

import hypothesis
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from microattrib.corpus import CleanDocument, RemovedCounts  # noqa: E402

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[list]()


def doc(text, author="a", doc_id=None, mentions=0, hashtags=0, urls=0):
    return CleanDocument(doc_id or f"{author}-{len(text)}", author, text,
                         RemovedCounts(mentions, hashtags, urls))


@pytest.fixture
def make_doc():
    return doc


@pytest.fixture(scope="session")
def acceptance_log(request):
    log = request.config.stash.setdefault(_ACCEPTANCE, [])
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(log):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] AC{number} {name}: {detail}")
