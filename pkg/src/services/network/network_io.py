"""Reading and writing network and rate files."""

import logging
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from src.core.exceptions import NetworkValidationError
from src.schemas.network import NetworkFile, RatesFile
from src.services.network.catalogue import example_network
from src.services.network.reaction_network import ReactionNetwork, RateVector

logger = logging.getLogger(__name__)


def network_from_schema(data: NetworkFile) -> ReactionNetwork:
    return ReactionNetwork.build(data.species, data.complexes, data.edges)


def network_to_schema(net: ReactionNetwork) -> NetworkFile:
    return NetworkFile(
        species=list(net.species),
        complexes=net.complexes.tolist(),
        edges=[tuple(e) for e in net.edges],
    )


def parse_network(text: str) -> ReactionNetwork:
    """Parse and validate network JSON text.

    Raises:
        NetworkValidationError: On malformed JSON, schema violations, self-loops,
            duplicate edges or complexes, or dimension mismatches.
    """
    try:
        data = NetworkFile.model_validate_json(text)
    except ValidationError as e:
        raise NetworkValidationError(f"malformed network file: {e}") from e
    return network_from_schema(data)


def serialize_network(net: ReactionNetwork) -> str:
    return network_to_schema(net).model_dump_json()


def parse_rates(text: str, net: ReactionNetwork) -> RateVector:
    try:
        data = RatesFile.model_validate_json(text)
    except ValidationError as e:
        raise NetworkValidationError(f"malformed rates file: {e}") from e
    return rates_for(net, data.rates)


def rates_for(net: ReactionNetwork, rates: Sequence[float]) -> RateVector:
    if len(rates) != net.num_edges:
        raise NetworkValidationError(
            f"expected {net.num_edges} rates (one per edge), got {len(rates)}"
        )
    return RateVector(list(rates))


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise NetworkValidationError(f"cannot read {path}: {e}") from e


def load_network(path: str | Path) -> ReactionNetwork:
    net = parse_network(_read(path))
    logger.info(f"Loaded network {path}: n={net.n}, m={net.m}, |E|={net.num_edges}")
    return net


def load_rates(path: str | Path, net: ReactionNetwork) -> RateVector:
    return parse_rates(_read(path), net)


EXAMPLE_PREFIX = "example:"


def resolve_network(source: str) -> ReactionNetwork:
    """Load a network from a file path, or from the catalogue for 'example:NAME'."""
    if source.startswith(EXAMPLE_PREFIX):
        return example_network(source[len(EXAMPLE_PREFIX):])
    return load_network(source)
