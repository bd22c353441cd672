"""Replay-closed generation games: play, score, and certify from Python.

Thin veneer over the C++ engine. Every function returns plain dicts and
lists so results drop straight into json.dumps or a dataframe.
"""

from ._core import (
    class_info,
    diagonal_duel,
    element_at,
    element_index,
    grid,
    known_class_ids,
    proper_duel,
    run,
)

__all__ = [
    "class_info",
    "diagonal_duel",
    "element_at",
    "element_index",
    "grid",
    "known_class_ids",
    "proper_duel",
    "run",
]
