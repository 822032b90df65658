import pytest

REF = "a b c d e f g h i j"
# hypotheses with rising recall and falling precision against REF
RECALL_HYPS = [
    "a b c",
    "a b c d x",
    "a b c d e x x",
    "a b c d e f x x x",
    "a b c d e f g x x x x",
    "a b c d e f g h x x x x x x x",
]


@pytest.fixture
def recall_dev_set():
    """One single-segment corpus per system; human score = 10 x unigram recall."""
    systems = [[(h, REF)] for h in RECALL_HYPS]
    ref_tokens = set(REF.split())
    human = [10 * len([t for t in h.split() if t in ref_tokens]) / len(REF.split()) for h in RECALL_HYPS]
    return systems, human


_acceptance_lines = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance_lines.extend(line for line in report.capstdout.splitlines()
                                 if line.startswith("ACCEPTANCE"))


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
