"""Shared fixtures: parsed fixture files and ready-made workspaces."""

from __future__ import annotations

from pathlib import Path

import pytest

from bcfuse.ingest import parse_bcm, parse_lexicon, parse_onto, read_text
from bcfuse.pipeline import build_workspace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def bc1_text() -> str:
    return read_text(FIXTURES / "bc1.bcm")


@pytest.fixture(scope="session")
def bc2_text() -> str:
    return read_text(FIXTURES / "bc2.bcm")


@pytest.fixture(scope="session")
def domain_text() -> str:
    return read_text(FIXTURES / "domain.onto")


@pytest.fixture(scope="session")
def lexicon_text() -> str:
    return read_text(FIXTURES / "lexicon.syn")


@pytest.fixture(scope="session")
def fixture_texts(bc1_text, bc2_text, domain_text, lexicon_text) -> dict[str, list[str]]:
    return {
        "bcm": [bc1_text, bc2_text],
        "onto": [domain_text],
        "syn": [lexicon_text],
    }


@pytest.fixture
def bc1(bc1_text):
    return parse_bcm(bc1_text, source="bc1.bcm")


@pytest.fixture
def bc2(bc2_text):
    return parse_bcm(bc2_text, source="bc2.bcm")


@pytest.fixture
def domain(domain_text):
    return parse_onto(domain_text, source="domain.onto")


@pytest.fixture
def lexicon(lexicon_text):
    return parse_lexicon(lexicon_text, source="lexicon.syn")


@pytest.fixture
def scenario_ws(bc1_text, bc2_text, domain_text, lexicon_text):
    """Fresh workspace per test: conflicts mutate when decided."""
    return build_workspace(
        [("bc1.bcm", bc1_text), ("bc2.bcm", bc2_text)],
        domain_text=("domain.onto", domain_text),
        lexicon_text=("lexicon.syn", lexicon_text),
    )


@pytest.fixture
def session_payload(bc1_text, bc2_text, domain_text, lexicon_text) -> dict:
    return {
        "components": [
            {"filename": "bc1.bcm", "text": bc1_text},
            {"filename": "bc2.bcm", "text": bc2_text},
        ],
        "domain": {"filename": "domain.onto", "text": domain_text},
        "lexicon": {"filename": "lexicon.syn", "text": lexicon_text},
    }
