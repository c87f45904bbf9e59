"""Declarative test-function corpus: plain-text key-value definitions.

The corpus file is an INI-style document (see ``data/corpus_v1.cfg`` for
the format and the shipped version-1 corpus): one section per function,
each declaring a profile kind with its parameters, the dimension, the
weight exponent alpha, and the spherical-harmonic degree of the angular
part.  The shipped corpus is fixed so verification runs reproduce exactly.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from importlib import resources

from .profiles import RadialBump, RadialLogBump
from .xspace import XTestFunction

__all__ = ["CorpusEntry", "load_corpus", "default_corpus_path"]


@dataclass(frozen=True)
class CorpusEntry:
    """One corpus function together with its weight exponent."""

    name: str
    function: XTestFunction
    alpha: float
    mode: int


def default_corpus_path():
    return resources.files("rellich_cone").joinpath("data/corpus_v1.cfg")


def _build_profile(kind: str, section) -> object:
    center = section.getfloat("center")
    width = section.getfloat("width")
    if kind == "logbump":
        power = section.getfloat("power", fallback=0.0)
        return RadialLogBump(power=power, center=center, width=width)
    if kind == "rbump":
        return RadialBump(center=center, width=width)
    raise ValueError(f"unknown profile kind {kind!r} (expected logbump or rbump)")


def load_corpus(path=None) -> list[CorpusEntry]:
    """Parse a corpus file into test functions; defaults to the shipped corpus."""
    parser = configparser.ConfigParser()
    if path is None:
        with resources.as_file(default_corpus_path()) as p:
            read = parser.read(p)
    else:
        read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"corpus file not found: {path}")
    entries = []
    for name in parser.sections():
        section = parser[name]
        n = section.getint("n")
        alpha = section.getfloat("alpha")
        mode = section.getint("mode", fallback=0)
        profile = _build_profile(section.get("kind", "logbump"), section)
        eigenvalue = float(mode * (n - 2 + mode))
        entries.append(
            CorpusEntry(
                name=name,
                function=XTestFunction(profile=profile, eigenvalue=eigenvalue, n=n, label=name),
                alpha=alpha,
                mode=mode,
            )
        )
    return entries
