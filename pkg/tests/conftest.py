import pytest

from grouporbits.finite import (
    FiniteGroup,
    aut_orbits,
    brute_force_auts,
    conjugation_map,
    inner_automorphisms,
)
from grouporbits.nilpotent import NilContext


@pytest.fixture(scope="session")
def ctx22():
    return NilContext.get(2, 2)


@pytest.fixture(scope="session")
def ctx23():
    return NilContext.get(2, 3)


@pytest.fixture(scope="session")
def ctx33():
    return NilContext.get(3, 3)


@pytest.fixture(scope="session")
def ctx24():
    return NilContext.get(2, 4)


@pytest.fixture(scope="session")
def s3():
    return FiniteGroup.from_permutations(["(1 2)", "(1 2 3)"])


@pytest.fixture(scope="session")
def a5():
    return FiniteGroup.from_permutations(["(1 2 3)", "(1 2 3 4 5)"])


@pytest.fixture(scope="session")
def s3_orbits(s3):
    return aut_orbits(s3, brute_force_auts(s3))


@pytest.fixture(scope="session")
def a5_orbits(a5):
    return aut_orbits(
        a5, [conjugation_map(a5, "(1 2)")] + inner_automorphisms(a5)
    )


@pytest.fixture
def group_file(tmp_path):
    def write(name, lines):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return write
