"""Shared fixtures: the named small semigroups and an isolated home directory."""

import pytest

from pointlike_lab.config import Limits
from pointlike_lab.semigroup import (
    chain_semilattice,
    cyclic_group,
    left_zero,
    null_semigroup,
    right_zero,
    trivial_semigroup,
)


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep config and log files out of the real home directory."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("POINTLIKE_LAB_DEBUG", raising=False)
    monkeypatch.delenv("POINTLIKE_LAB_MAX_ORDER", raising=False)
    return tmp_path


@pytest.fixture
def limits():
    return Limits()


@pytest.fixture
def trivial():
    return trivial_semigroup()


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def lz2():
    return left_zero(2)


@pytest.fixture
def rz2():
    return right_zero(2)


@pytest.fixture
def n2():
    """{0, a} with every product equal to 0."""
    return null_semigroup(2)


@pytest.fixture
def sl2():
    """The two-element chain 0 < 1 under minimum."""
    return chain_semilattice(2)
