import pytest

from generators import (
    group_bundle,
    klein_cross,
    one_object,
    pair_groupoid,
    s3_a3_bundle,
    trivial_groupoid,
)
from groups import cyclic_group, klein_group, symmetric_group_3


@pytest.fixture
def trivial3():
    return trivial_groupoid(3)


@pytest.fixture
def z2():
    """One-object Z/2 with labels e, a"""
    return one_object(cyclic_group(2))


@pytest.fixture
def z3():
    return one_object(cyclic_group(3))


@pytest.fixture
def pair2():
    return pair_groupoid(2)


@pytest.fixture
def s3():
    return one_object(symmetric_group_3())


@pytest.fixture
def s3_a3():
    return s3_a3_bundle()


@pytest.fixture
def klein():
    return one_object(klein_group())


@pytest.fixture
def cross():
    return klein_cross()


@pytest.fixture
def abelian_bundle():
    return group_bundle({"p": cyclic_group(2), "q": klein_group(), "r": cyclic_group(3)})
