"""Ultimate periodicity of D0L fixed points.

Every function takes the system as text in the ``.dol`` format::

    axiom: a
    a -> ab
    b -> b
"""

import json
from typing import Optional

from . import _core
from ._core import Limits, ParseError, ResourceLimit

__all__ = [
    "Limits",
    "ParseError",
    "ResourceLimit",
    "classify",
    "decide",
    "expand",
    "ksets",
    "normalize",
    "run",
    "words_equal_at",
]


def decide(text: str, pivot: Optional[str] = None, limits: Optional[Limits] = None) -> dict:
    """Per-member verdicts as a dict with ``status``, ``summary`` and ``members``.

    Resource caps do not raise here; they appear as a ``resource-limit`` verdict.
    """
    if pivot is not None and len(pivot) != 1:
        raise ValueError("pivot must be a single letter")
    return json.loads(_core.decide_json(text, pivot, limits or Limits()))


def classify(text: str) -> dict:
    return json.loads(_core.classify_json(text))


def ksets(text: str, p: int, limits: Optional[Limits] = None) -> dict:
    return json.loads(_core.ksets_json(text, p, limits or Limits()))


def normalize(text: str, limits: Optional[Limits] = None) -> dict:
    return json.loads(_core.normalize_json(text, limits or Limits()))


def expand(text: str, length: int) -> str:
    """The first ``length`` letters of the limit word."""
    return _core.expand(text, length)


def words_equal_at(text: str, u: str, v: str, n: int, limits: Optional[Limits] = None) -> bool:
    """Whether h^n(u) == h^n(v), compared without building the words."""
    return _core.words_equal_at(text, u, v, n, limits or Limits())


def run(*args: str) -> tuple:
    """Run the command-line tool in process: ``run("decide", "s.dol", "--json")``."""
    return _core.run(list(args))
