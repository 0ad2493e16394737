from pathlib import Path

import pytest

from aoevolve.model import Entity, EntityKind, SourceLocation

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
GOLDEN = FIXTURES / "golden"
EXTRACTOR_FIXTURES = FIXTURES / "extractor"
COUNTS_FIXTURE = FIXTURES / "case_study_counts.json"


def make_entity(kind, key, fingerprint=0, file="X.java", line=1):
    return Entity(EntityKind(kind), key, key, SourceLocation(file, line), fingerprint)


@pytest.fixture
def corpus_dirs():
    return [CORPUS / v for v in ("v1", "v2", "v3")]
