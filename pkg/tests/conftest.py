import pytest

from qsc import AlternativeSet, ProfileState, Ranking, RankingSpace, basis_state, pure_state

ROOT2 = 2 ** -0.5


@pytest.fixture(scope="session")
def alts3():
    return AlternativeSet(("a", "b", "c"))


@pytest.fixture(scope="session")
def space3(alts3):
    return RankingSpace(alts3)


@pytest.fixture(scope="session")
def alts4():
    return AlternativeSet(("a", "b", "c", "d"))


@pytest.fixture(scope="session")
def space4(alts4):
    return RankingSpace(alts4)


@pytest.fixture(scope="session")
def xyz():
    return AlternativeSet(("x", "y", "z"))


@pytest.fixture(scope="session")
def xyz_space(xyz):
    return RankingSpace(xyz)


@pytest.fixture(scope="session")
def split_top_profile(xyz, xyz_space):
    """Voter 1 split between two x/y-led orders, voter 2 certain of z on top."""
    rho1 = pure_state(
        xyz_space,
        [
            (ROOT2, Ranking.from_string(xyz, "x>y>z")),
            (ROOT2, Ranking.from_string(xyz, "y>x>z")),
        ],
    )
    rho2 = basis_state(xyz_space, Ranking.from_string(xyz, "z>x>y"))
    return ProfileState.product_of([rho1, rho2])


def rankings_from(alts, *texts):
    return tuple(Ranking.from_string(alts, t) for t in texts)


@pytest.fixture(scope="session")
def cycle_profile(alts3):
    return rankings_from(alts3, "a>b>c", "b>c>a", "c>a>b")


@pytest.fixture(scope="session")
def unanimous_profile(alts3):
    return rankings_from(alts3, "a>b>c", "a>b>c", "a>b>c")


@pytest.fixture(scope="session")
def two_voter_profile(alts3):
    return rankings_from(alts3, "a>b>c", "a>c>b")
