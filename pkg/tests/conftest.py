from pathlib import Path

import pytest

from xmodlab.catalog import load_catalog
from xmodlab.perm import Perm, group_from_generators

ROOT = Path(__file__).resolve().parent.parent
CORE = ROOT / "catalog" / "core"


def cyc(text: str, degree: int) -> Perm:
    return Perm.from_cycles(text, degree)


def gen_group(degree: int, *cycles: str, name=None):
    return group_from_generators(degree, [cyc(c, degree) for c in cycles], name=name)


@pytest.fixture(scope="session")
def core():
    return load_catalog(CORE)


@pytest.fixture(scope="session")
def s3():
    return gen_group(3, "(1 2)", "(1 2 3)", name="S3")
