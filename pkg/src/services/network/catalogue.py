"""Built-in example networks.

Vertex coordinates for the cycle and bidirected-triangle entries are chosen
here; only the tree-constant polynomials of those graphs are fixed.
"""

from typing import Callable, Dict, List

from src.core.exceptions import NetworkValidationError
from src.services.network.reaction_network import ReactionNetwork


def _triangle() -> ReactionNetwork:
    # 0 -> X1 -> X2 -> 0, deficiency zero
    return ReactionNetwork.build(
        ["X1", "X2"],
        [[0, 0], [1, 0], [0, 1]],
        [[0, 1], [1, 2], [2, 0]],
    )


def _square_cycle() -> ReactionNetwork:
    return ReactionNetwork.build(
        ["X1", "X2"],
        [[0, 0], [1, 0], [1, 1], [0, 1]],
        [[0, 1], [1, 2], [2, 3], [3, 0]],
    )


def _line_cycle() -> ReactionNetwork:
    # 0 -> 3X -> 2X -> X -> 0; edge order k14, k43, k32, k21
    return ReactionNetwork.build(
        ["X"],
        [[0], [1], [2], [3]],
        [[0, 3], [3, 2], [2, 1], [1, 0]],
    )


def _bidirected_triangle() -> ReactionNetwork:
    # edge order k12, k21, k23, k32, k13, k31
    return ReactionNetwork.build(
        ["X"],
        [[0], [1], [2]],
        [[0, 1], [1, 0], [1, 2], [2, 1], [0, 2], [2, 0]],
    )


def _reversible_pair() -> ReactionNetwork:
    return ReactionNetwork.build(
        ["X1", "X2"],
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
    )


_CATALOGUE: Dict[str, Callable[[], ReactionNetwork]] = {
    "triangle": _triangle,
    "square-cycle": _square_cycle,
    "line-cycle": _line_cycle,
    "bidirected-triangle": _bidirected_triangle,
    "reversible-pair": _reversible_pair,
}


def list_examples() -> List[str]:
    return sorted(_CATALOGUE)


def example_network(name: str) -> ReactionNetwork:
    try:
        return _CATALOGUE[name]()
    except KeyError:
        raise NetworkValidationError(
            f"Unknown example network: {name}. Available: {', '.join(list_examples())}"
        ) from None
