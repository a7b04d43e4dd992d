"""Shared corpora and hypothesis strategies for the test modules."""

from functools import lru_cache
from typing import List, Tuple

from hypothesis import assume
from hypothesis import strategies as st

from bitrade.models import Bitrade, PartialLatinSquare
from bitrade.services.generator_service import (
    LatticeSpec,
    enumerate_small,
    lattice_quotients,
)
from bitrade.services.latin_service import bitrade_from_squares, is_k_homogeneous


@lru_cache(maxsize=None)
def corpus(order: int) -> Tuple[Bitrade, ...]:
    return tuple(enumerate_small(order))


@lru_cache(maxsize=None)
def quotients(max_index: int) -> Tuple[Tuple[Tuple[LatticeSpec, Bitrade], ...], int]:
    accepted, rejected = lattice_quotients(max_index)
    return tuple(accepted), len(rejected)


def three_homogeneous(bitrades) -> List[Bitrade]:
    return [b for b in bitrades if is_k_homogeneous(b, 3)]


def isotopic_cyclic_square(n: int, rows, cols, syms) -> PartialLatinSquare:
    """The addition table of Zₙ with rows, columns and symbols permuted."""
    return PartialLatinSquare.of((rows[i], cols[j], syms[(i + j) % n]) for i in range(n) for j in range(n))


@st.composite
def square_pairs(draw, min_order: int = 2, max_order: int = 5) -> Tuple[PartialLatinSquare, PartialLatinSquare]:
    """The addition table of Zₙ paired with a random isotope of it."""
    n = draw(st.integers(min_value=min_order, max_value=max_order))
    labels = list(range(n))
    first = isotopic_cyclic_square(n, labels, labels, labels)
    second = isotopic_cyclic_square(
        n,
        draw(st.permutations(labels)),
        draw(st.permutations(labels)),
        draw(st.permutations(labels)),
    )
    return first, second


@st.composite
def square_differences(draw, min_order: int = 2, max_order: int = 5) -> Bitrade:
    """Bitrades that are the difference of two isotopes of a cyclic latin square."""
    first, second = draw(square_pairs(min_order, max_order))
    assume(first != second)
    return bitrade_from_squares(first, second)
