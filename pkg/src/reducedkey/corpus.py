"""Corpus normalization, training-sample extraction, and count statistics."""

from __future__ import annotations

import csv
import unicodedata
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, TextIO

from .keypad import SPACE_GLYPH, Alphabet, KeypadLayout, KEY_LABELS


def normalize(text: str, alphabet: Alphabet) -> str:
    """Fold raw text onto the alphabet: one stream of letters and spaces.

    Combining marks are stripped after NFD decomposition (so accented Greek
    vowels and final sigma fold onto their plain capitals), everything is
    uppercased, and any run of non-alphabet characters collapses to a single
    space.  The result carries no leading or trailing space.
    """
    decomposed = unicodedata.normalize("NFD", text)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    mapped = [
        ch if ch in alphabet else alphabet.space for ch in stripped.upper()
    ]
    words = [w for w in "".join(mapped).split(alphabet.space) if w]
    return alphabet.space.join(words)


@dataclass(frozen=True)
class Sample:
    """One letter observation: its n-symbol context, key, and in-key state."""

    context: tuple[str, ...]
    key: str
    state: int


def extract_samples(stream: str, layout: KeypadLayout, n: int = 3) -> list[Sample]:
    """One sample per letter; contexts are space-padded at the stream start."""
    if n < 1:
        raise ValueError("context length must be at least 1")
    space = layout.alphabet.space
    padded = space * n + stream
    samples = []
    for i, ch in enumerate(stream):
        if ch == space:
            continue
        key, state = layout.position(ch)
        samples.append(Sample(tuple(padded[i : i + n]), key, state))
    return samples


def variable_names(n: int) -> list[str]:
    """Canonical variable order: oldest context letter first, State last."""
    return [f"L{k}" for k in range(n, 0, -1)] + ["Key", "State"]


def encode_sample(sample: Sample, layout: KeypadLayout) -> dict[str, int]:
    """Zero-based value assignment for every variable of one sample."""
    alphabet = layout.alphabet
    n = len(sample.context)
    values = {
        f"L{n - i}": alphabet.digit(sample.context[i]) for i in range(n)
    }
    values["Key"] = KEY_LABELS.index(sample.key)
    values["State"] = sample.state - 1
    return values


def write_samples_csv(samples: Iterable[Sample], fh: TextIO) -> None:
    """Debug export with one row per sample, space rendered as "_"."""
    samples = list(samples)
    n = len(samples[0].context) if samples else 3
    writer = csv.writer(fh)
    writer.writerow([name.lower() for name in variable_names(n)])
    for s in samples:
        ctx = [SPACE_GLYPH if c == " " else c for c in s.context]
        writer.writerow(ctx + [s.key, s.state])


@dataclass
class CountStore:
    """Sufficient statistics N_ijk for one network structure.

    families maps each variable to {parent-value tuple j: {value k: count}};
    parent tuples follow the order recorded in `parents`.
    """

    parents: dict[str, tuple[str, ...]]
    cardinalities: dict[str, int]
    families: dict[str, dict[tuple[int, ...], dict[int, int]]]
    total: int

    def n_ijk(self, var: str, j: tuple[int, ...], k: int) -> int:
        return self.families[var].get(j, {}).get(k, 0)

    def n_ij(self, var: str, j: tuple[int, ...]) -> int:
        return sum(self.families[var].get(j, {}).values())


def count(
    samples: Sequence[Sample],
    structure: Mapping[str, Sequence[str]],
    layout: KeypadLayout,
) -> CountStore:
    """Tally N_ijk for every variable family declared by the structure."""
    parents = {var: tuple(structure[var]) for var in structure}
    names = list(parents)
    for var, pset in parents.items():
        for p in pset:
            if p not in parents:
                raise ValueError(f"parent {p!r} of {var!r} is not a variable")
    families: dict[str, dict[tuple[int, ...], dict[int, int]]] = {
        var: defaultdict(lambda: defaultdict(int)) for var in names
    }
    for sample in samples:
        values = encode_sample(sample, layout)
        for var in names:
            j = tuple(values[p] for p in parents[var])
            families[var][j][values[var]] += 1
    cards = cardinalities(layout, _infer_n(samples, parents))
    return CountStore(
        parents=parents,
        cardinalities={v: cards[v] for v in names},
        families={v: {j: dict(ks) for j, ks in fam.items()} for v, fam in families.items()},
        total=len(samples),
    )


def cardinalities(layout: KeypadLayout, n: int) -> dict[str, int]:
    """Value counts per variable: letters y+1 (with space), 8 keys, max group."""
    cards = {f"L{k}": layout.alphabet.y + 1 for k in range(n, 0, -1)}
    cards["Key"] = len(KEY_LABELS)
    cards["State"] = layout.max_group_size
    return cards


def _infer_n(samples: Sequence[Sample], parents: Mapping[str, tuple[str, ...]]) -> int:
    if samples:
        return len(samples[0].context)
    prefix = [v for v in parents if v.startswith("L")]
    return max((int(v[1:]) for v in prefix), default=0)


class CountProvider:
    """Caches CountStores per structure for one fixed sample list."""

    def __init__(self, samples: Sequence[Sample], layout: KeypadLayout, n: int = 3):
        for s in samples:
            if len(s.context) != n:
                raise ValueError(
                    f"sample context length {len(s.context)} != n={n}"
                )
        self.samples = list(samples)
        self.layout = layout
        self.n = n
        self._cache: dict[tuple[tuple[str, tuple[str, ...]], ...], CountStore] = {}

    @property
    def total(self) -> int:
        return len(self.samples)

    def counts_for(self, structure: Mapping[str, Sequence[str]]) -> CountStore:
        sig = tuple((var, tuple(structure[var])) for var in sorted(structure))
        store = self._cache.get(sig)
        if store is None:
            store = count(self.samples, structure, self.layout)
            self._cache[sig] = store
        return store
