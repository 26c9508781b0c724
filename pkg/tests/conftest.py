import pytest

from semiring_lab.core import builtin, direct_product


@pytest.fixture(scope="session")
def B():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def product(B):
    cache = {}

    def get(left, right):
        if (left, right) not in cache:
            cache[left, right] = direct_product(B(left), B(right))
        return cache[left, right]

    return get

