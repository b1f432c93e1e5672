import pytest

from efrac.subsetsum import enumerate_egyptian

# Cardinalities of the unit-fraction sum sets for N = 1..30, used as the
# reference in several suites.  Kept as literals so the enumeration code
# cannot vouch for itself.
TABLE1_CARDS = [
    2, 4, 8, 16, 32, 52, 104, 208, 416, 832,
    1664, 1856, 3712, 7424, 9664, 19328, 38656, 59264, 118528, 126976,
    224128, 448256, 896512, 936832, 1873664, 3747328, 7494656, 7771136,
    15542272, 15886336,
]


@pytest.fixture(scope="session")
def table1_cards():
    cards = enumerate_egyptian(30)
    assert cards == TABLE1_CARDS
    return cards
