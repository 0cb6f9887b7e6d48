"""Dict-based wrappers over the compiled core.

Loci and complexes are given as the same JSON documents the command-line
tool reads: a dict, a JSON string, or a path to a ``.json`` file.
"""

import json
import os
from typing import Any, Sequence, Union

from . import _core
from ._core import InputError

Document = Union[dict, str, os.PathLike]

__all__ = ["InputError", "cdf", "cli", "combine", "contains", "exp_locus", "jump", "support"]


def _text(doc: Document) -> str:
    if isinstance(doc, dict):
        return json.dumps(doc)
    if isinstance(doc, os.PathLike) or (isinstance(doc, str) and not doc.lstrip().startswith("{")):
        with open(doc, encoding="utf-8") as f:
            return f.read()
    return doc


def exp_locus(locus: Document) -> list:
    """Prime torus divisors in the image of the locus under exp."""
    return json.loads(_core.exp_locus(_text(locus)))


def combine(components: Sequence[Document], m: Sequence[int], pi: Sequence[int]) -> dict:
    return json.loads(_core.combine([_text(c) for c in components], list(m), list(pi)))


def contains(inner: Document, outer: Document) -> bool:
    return _core.contains(_text(inner), _text(outer))


def cdf(complex_: Document, i: int, k: int) -> dict:
    return json.loads(_core.cdf(_text(complex_), i, k))


def jump(complex_: Document, i: int, k: int) -> dict:
    return json.loads(_core.jump(_text(complex_), i, k))


def support(complex_: Document) -> dict:
    return json.loads(_core.support(_text(complex_)))


def cli(*args: str) -> tuple[int, Any, str]:
    """Runs a subcommand in-process; stdout is decoded when it is JSON."""
    code, out, err = _core.cli(list(args))
    try:
        out = json.loads(out)
    except ValueError:
        pass
    return code, out, err
