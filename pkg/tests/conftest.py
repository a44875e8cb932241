import pytest

from crossmod import fixtures
from crossmod.fields import QQ


@pytest.fixture(scope="session")
def groups():
    return fixtures.std_groups()


@pytest.fixture(scope="session")
def cms():
    return fixtures.std_crossed_modules()


@pytest.fixture(scope="session")
def algebras():
    return fixtures.std_algebras(QQ)


# independent permutation oracle: compose as functions, (a*b)(x) = a(b(x))

PERMS = {
    "e": (1, 2, 3),
    "(12)": (2, 1, 3),
    "(13)": (3, 2, 1),
    "(23)": (1, 3, 2),
    "(123)": (2, 3, 1),
    "(132)": (3, 1, 2),
}
PERM_NAMES = {v: k for k, v in PERMS.items()}


def perm_mul(a: str, b: str) -> str:
    pa, pb = PERMS[a], PERMS[b]
    return PERM_NAMES[tuple(pa[pb[x - 1] - 1] for x in (1, 2, 3))]


def perm_inv(a: str) -> str:
    pa = PERMS[a]
    inv = [0, 0, 0]
    for x in (1, 2, 3):
        inv[pa[x - 1] - 1] = x
    return PERM_NAMES[tuple(inv)]


def perm_conj(p: str, c: str) -> str:
    return perm_mul(perm_mul(p, c), perm_inv(p))
