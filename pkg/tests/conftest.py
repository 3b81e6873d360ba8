import pytest

from supertok import TrainerConfig, train
from supertok.fixtures import bilingual, load

# name -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


def _train(corpus, **kw):
    return train(TrainerConfig(**kw), corpus)


@pytest.fixture(scope="session")
def eng_text():
    return load("eng")


@pytest.fixture(scope="session")
def hin_text():
    return load("hin")


@pytest.fixture(scope="session")
def eng_model(eng_text):
    return _train(eng_text, vocab_size=456, transition_point=0.9)


@pytest.fixture(scope="session")
def eng_subword(eng_text):
    return _train(eng_text, vocab_size=456)


@pytest.fixture(scope="session")
def eng_dummies(eng_text):
    return _train(eng_text, vocab_size=460, transition_point=0.9, reserved_dummy_tokens=4)


@pytest.fixture(scope="session")
def hin_model(hin_text):
    return _train(hin_text, vocab_size=456, transition_point=0.9)


@pytest.fixture(scope="session")
def onestage_model(eng_text):
    return _train(eng_text, vocab_size=456, mode="onestage", pattern="boundless")


@pytest.fixture(scope="session")
def identity_model():
    """Identity-normalized model over all four fixture languages."""
    text = bilingual() + load("ben") + load("asm")
    return _train(text, vocab_size=556, transition_point=0.9, normalization="identity")
