"""Shared fixtures: layouts, a synthetic Markov corpus, helper builders."""

from __future__ import annotations

import random

import pytest

from reducedkey import builtin_layout
from reducedkey.corpus import extract_samples, normalize
from reducedkey.keypad import Alphabet


def synthetic_markov_text(alphabet: Alphabet, seed: int = 7, size: int = 50_000) -> str:
    """Order-1 character chain with skewed successor weights.

    Every letter can end a word, space never follows space, so the text
    normalizes onto itself (modulo edge trimming).
    """
    rng = random.Random(seed)
    letters = list(alphabet.symbols)
    table: dict[str, tuple[list[str], list[float]]] = {}
    for s in [alphabet.space] + letters:
        if s == alphabet.space:
            choices = rng.sample(letters, 8)
        else:
            choices = rng.sample(letters, 5) + [alphabet.space]
        weights = [rng.random() ** 2 + 0.05 for _ in choices]
        table[s] = (choices, weights)
    out: list[str] = []
    current = alphabet.space
    while len(out) < size:
        choices, weights = table[current]
        current = rng.choices(choices, weights)[0]
        out.append(current)
    return "".join(out)


@pytest.fixture(scope="session")
def greek():
    return builtin_layout("greek-caps")


@pytest.fixture(scope="session")
def latin():
    return builtin_layout("latin-caps")


@pytest.fixture(scope="session")
def markov_stream(greek):
    return normalize(synthetic_markov_text(greek.alphabet), greek.alphabet)


@pytest.fixture(scope="session")
def markov_samples(greek, markov_stream):
    return extract_samples(markov_stream, greek, 3)
