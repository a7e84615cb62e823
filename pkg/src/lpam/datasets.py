"""Bundled benchmark data."""

from importlib import resources

from .graph import parse_cover, parse_edge_list


def _text(name: str) -> str:
    return resources.files(__package__).joinpath("data").joinpath(name).read_text(encoding="utf-8")


def karate():
    """Zachary's karate club (34 members, 78 ties) and its two-faction split.

    Members are labelled 1..34. Member 9 is placed with the officer's
    faction, following Zachary's factional assignment rather than the club
    membership recorded after the split.
    """
    graph = parse_edge_list(_text("karate.txt"))
    return graph, parse_cover(_text("karate_truth.txt"), graph)


def karate_files():
    """Raw edge-list and truth-cover text for the karate club."""
    return _text("karate.txt"), _text("karate_truth.txt")
