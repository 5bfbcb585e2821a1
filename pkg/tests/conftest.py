import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

from locale_lab import AuditConfig, boolean_frame, build_corpus, chain_frame, \
    frame_id, run_audit, trivial_frame, two_frame

GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def corpus_by_name(corpus):
    return {frame_id(f): f for f in corpus}


@pytest.fixture(scope="session")
def audit_report():
    # one shared run; several modules assert against different sections
    return run_audit(AuditConfig())


@pytest.fixture(scope="session")
def trivial():
    return trivial_frame()


@pytest.fixture(scope="session")
def two():
    return two_frame()


@pytest.fixture(scope="session")
def chain3():
    return chain_frame(3)


@pytest.fixture(scope="session")
def chain4():
    return chain_frame(4)


@pytest.fixture(scope="session")
def bool4():
    return boolean_frame(2)


@pytest.fixture(scope="session")
def bool8():
    return boolean_frame(3)
