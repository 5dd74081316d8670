import pytest

from homlab import (complete, complete_flip, cycle, cycle_reflection,
                    enumerate_hom, induced_involution, paper_T, paper_f,
                    paper_gamma1, paper_gamma2)


@pytest.fixture(scope="session")
def T():
    return paper_T()


@pytest.fixture(scope="session")
def K2():
    return complete(2)


@pytest.fixture(scope="session")
def K3():
    return complete(3)


@pytest.fixture(scope="session")
def K4():
    return complete(4)


@pytest.fixture(scope="session")
def C5():
    return cycle(5)


@pytest.fixture(scope="session")
def hom_k2_k3(K2, K3):
    return enumerate_hom(K2, K3)


@pytest.fixture(scope="session")
def hom_k2_k4(K2, K4):
    return enumerate_hom(K2, K4)


@pytest.fixture(scope="session")
def hom_T_k3(T, K3):
    return enumerate_hom(T, complete(3))


@pytest.fixture(scope="session")
def hom_k2_k3_swap(hom_k2_k3):
    return induced_involution(complete_flip(2), hom_k2_k3)


@pytest.fixture(scope="session")
def hom_k2_k4_swap(hom_k2_k4):
    return induced_involution(complete_flip(2), hom_k2_k4)
