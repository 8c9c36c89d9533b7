"""Shared fixtures: the bundled lattice corpus used across the suite."""

import pytest

from powerlat import (
    build_boolean,
    build_divisor,
    build_multiset,
    build_product,
    build_subspace,
)


def corpus_lattices():
    """The instances every verifier-level property is checked on."""
    return {
        "boolean(2)": build_boolean(2),
        "boolean(3)": build_boolean(3),
        "boolean(4)": build_boolean(4),
        "boolean(5)": build_boolean(5),
        "multiset(3,3)": build_multiset((3, 3)),
        "multiset(2,2,2)": build_multiset((2, 2, 2)),
        "subspace(2,2)": build_subspace(2, 2),
        "subspace(2,3)": build_subspace(2, 3),
        "divisor(360)": build_divisor(360),
        "boolean(2)xmultiset(2,1)": build_product(
            [build_boolean(2), build_multiset((2, 1))]
        ),
    }


@pytest.fixture(scope="session")
def corpus():
    return corpus_lattices()
