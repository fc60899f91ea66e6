"""Bayesian belief network over letter contexts: scoring, search, prediction.

Variables are the n preceding symbols L{n}..L1, the pressed Key, and the
letter's in-key State.  Only State takes parents; structure search picks the
parent subset of {L{n}..L1, Key} with the highest Bayesian-Dirichlet marginal
likelihood under a single equivalent sample size Xi.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import CountProvider, CountStore, Sample, cardinalities, variable_names
from .keypad import KEY_LABELS, Alphabet, KeypadLayout


@dataclass(frozen=True)
class VariableSpec:
    name: str
    cardinality: int

    def __post_init__(self) -> None:
        if self.cardinality < 2:
            raise ValueError(f"variable {self.name} needs at least 2 values")


def variable_specs(layout: KeypadLayout, n: int = 3) -> list[VariableSpec]:
    cards = cardinalities(layout, n)
    return [VariableSpec(name, cards[name]) for name in variable_names(n)]


def default_xi(specs: Sequence[VariableSpec]) -> float:
    """Default equivalent sample size: half the mean variable cardinality."""
    if not specs:
        raise ValueError("no variables")
    return sum(s.cardinality for s in specs) / len(specs) / 2


@dataclass(frozen=True)
class NetworkStructure:
    """Parent sets per variable; must be acyclic over known variables."""

    parents: dict[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "parents", {v: tuple(ps) for v, ps in self.parents.items()}
        )
        for var, pset in self.parents.items():
            if len(set(pset)) != len(pset):
                raise ValueError(f"duplicate parents on {var}")
            for p in pset:
                if p not in self.parents:
                    raise ValueError(f"parent {p!r} of {var!r} is not a variable")
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        done: set[str] = set()
        in_progress: set[str] = set()

        def visit(var: str) -> None:
            if var in done:
                return
            if var in in_progress:
                raise ValueError(f"structure has a cycle through {var!r}")
            in_progress.add(var)
            for p in self.parents[var]:
                visit(p)
            in_progress.discard(var)
            done.add(var)

        for var in self.parents:
            visit(var)


def state_structure(parent_vars: Sequence[str], n: int = 3) -> NetworkStructure:
    """Structure where only State takes parents, everything else is a root."""
    names = variable_names(n)
    candidates = [v for v in names if v != "State"]
    ordered = tuple(v for v in candidates if v in parent_vars)
    if len(ordered) != len(set(parent_vars)):
        unknown = set(parent_vars) - set(candidates)
        raise ValueError(f"unknown parent variables: {sorted(unknown)}")
    parents: dict[str, tuple[str, ...]] = {v: () for v in names}
    parents["State"] = ordered
    return NetworkStructure(parents)


def _family_q(var: str, parents: tuple[str, ...], cards: Mapping[str, int]) -> int:
    q = 1
    for p in parents:
        q *= cards[p]
    return q


def log_marginal_likelihood(
    structure: NetworkStructure, counts: CountStore, xi: float
) -> float:
    """Log Bayesian-Dirichlet marginal likelihood of the data given a structure.

    Per family i with r_i values and q_i parent configurations, each observed
    configuration j contributes

        lgamma(Xi/q_i) - lgamma(Xi/q_i + N_ij)
        + sum_k [ lgamma(Xi/(r_i q_i) + N_ijk) - lgamma(Xi/(r_i q_i)) ]

    Unobserved cells contribute zero, so only counted rows are visited.
    """
    if xi <= 0:
        raise ValueError("Xi must be positive")
    if dict(structure.parents) != counts.parents:
        raise ValueError("counts were tallied for a different structure")
    lgamma = math.lgamma
    total = 0.0
    for var, pset in counts.parents.items():
        r = counts.cardinalities[var]
        q = _family_q(var, pset, counts.cardinalities)
        a = xi / q
        b = xi / (r * q)
        lg_a = lgamma(a)
        lg_b = lgamma(b)
        for cells in counts.families[var].values():
            n_ij = sum(cells.values())
            total += lg_a - lgamma(a + n_ij)
            for n_ijk in cells.values():
                total += lgamma(b + n_ijk) - lg_b
    return total


def bayes_factor(
    s1: NetworkStructure, s2: NetworkStructure, counts: CountProvider, xi: float
) -> float:
    """Evidence ratio P(D|s1)/P(D|s2) on the same data.

    Saturates to inf/0.0 when the true ratio leaves float range; compare
    log_marginal_likelihood values directly for extreme cases.
    """
    score1 = log_marginal_likelihood(s1, counts.counts_for(s1.parents), xi)
    score2 = log_marginal_likelihood(s2, counts.counts_for(s2.parents), xi)
    try:
        return math.exp(score1 - score2)
    except OverflowError:
        return math.inf


def state_parent_candidates(n: int = 3) -> list[tuple[str, ...]]:
    """Every subset of {L{n}..L1, Key} in search order."""
    pool = [v for v in variable_names(n) if v != "State"]
    out: list[tuple[str, ...]] = []
    for size in range(len(pool) + 1):
        out.extend(combinations(pool, size))
    return out


def learn_structure(counts: CountProvider, xi: float) -> NetworkStructure:
    """Exhaustive search over State parent sets; ties prefer fewer parents.

    Remaining ties break lexicographically on the parents' positions in the
    canonical variable order, so results are deterministic.
    """
    if counts.total == 0:
        raise ValueError("cannot learn a structure from empty data")
    order = {v: i for i, v in enumerate(variable_names(counts.n))}
    best: tuple[float, int, tuple[int, ...]] | None = None
    best_structure: NetworkStructure | None = None
    for parent_set in state_parent_candidates(counts.n):
        structure = state_structure(parent_set, counts.n)
        score = log_marginal_likelihood(
            structure, counts.counts_for(structure.parents), xi
        )
        rank = (-score, len(parent_set), tuple(order[p] for p in parent_set))
        if best is None or rank < best:
            best = rank
            best_structure = structure
    assert best_structure is not None
    return best_structure


@dataclass
class Cpt:
    """Posterior-mean conditional distribution for State given its parents.

    rows holds only parent configurations observed in training; anything
    else falls back to the uniform distribution implied by the prior.
    """

    parents: tuple[str, ...]
    r: int
    rows: dict[tuple[int, ...], tuple[float, ...]]

    def observed(self, j: tuple[int, ...]) -> bool:
        return j in self.rows

    def row(self, j: tuple[int, ...]) -> tuple[float, ...]:
        got = self.rows.get(j)
        if got is None:
            return tuple(1.0 / self.r for _ in range(self.r))
        return got


def fit_cpt(structure: NetworkStructure, counts: CountStore, xi: float) -> Cpt:
    """Dirichlet posterior means: (N_ijk + Xi/(r q)) / (N_ij + Xi/q)."""
    if xi <= 0:
        raise ValueError("Xi must be positive")
    pset = structure.parents["State"]
    r = counts.cardinalities["State"]
    q = _family_q("State", pset, counts.cardinalities)
    a = xi / q
    b = xi / (r * q)
    rows: dict[tuple[int, ...], tuple[float, ...]] = {}
    for j, cells in counts.families["State"].items():
        n_ij = sum(cells.values())
        rows[j] = tuple((cells.get(k, 0) + b) / (n_ij + a) for k in range(r))
    return Cpt(pset, r, rows)


def fallback_chain(parents: tuple[str, ...], n: int) -> list[tuple[str, ...]]:
    """Parent sets tried in order at query time: drop oldest letters first."""
    chain = [tuple(parents)]
    current = list(parents)
    for k in range(n, 0, -1):
        name = f"L{k}"
        if name in current:
            current.remove(name)
            chain.append(tuple(current))
    return chain


MODEL_FORMAT = "reducedkey-model"
MODEL_VERSION = 1


@dataclass
class Model:
    """A trained predictor: learned parents plus fitted fallback CPTs."""

    layout: KeypadLayout
    n: int
    xi: float
    parents: tuple[str, ...]
    levels: list[Cpt] = field(default_factory=list)

    def specs(self) -> list[VariableSpec]:
        return variable_specs(self.layout, self.n)

    def _evidence(self, ctx: tuple[str, ...], key: str) -> dict[str, int]:
        if len(ctx) != self.n:
            raise ValueError(f"context must hold {self.n} symbols, got {len(ctx)}")
        alphabet = self.layout.alphabet
        values = {f"L{self.n - i}": alphabet.digit(ctx[i]) for i in range(self.n)}
        values["Key"] = KEY_LABELS.index(key) if key in KEY_LABELS else -1
        if values["Key"] < 0:
            raise ValueError(f"no letter group on key {key!r}")
        return values

    def _rank(self, ctx: tuple[str, ...], key: str) -> tuple[list[int], int | None]:
        """Ranked states plus the fallback level used (None = static order)."""
        values = self._evidence(ctx, key)
        size = len(self.layout.group(key))
        for level, cpt in enumerate(self.levels):
            j = tuple(values[p] for p in cpt.parents)
            if cpt.observed(j):
                probs = cpt.rows[j]
                ranked = sorted(range(1, size + 1), key=lambda s: (-probs[s - 1], s))
                return ranked, level
        return list(range(1, size + 1)), None

    def rank_positions(self, ctx: tuple[str, ...], key: str) -> list[int]:
        """States of the key's letters, most probable first; ties keep base order."""
        return self._rank(ctx, key)[0]

    def holdout_accuracy(self, samples: Sequence[Sample]) -> float:
        """Fraction of samples whose true state is ranked first."""
        if not samples:
            raise ValueError("cannot measure accuracy on an empty sample list")
        hits = sum(
            1 for s in samples if self.rank_positions(s.context, s.key)[0] == s.state
        )
        return hits / len(samples)

    # -- persistence --------------------------------------------------------

    def to_document(self) -> dict:
        layout = self.layout
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "layout": {
                "alphabet": layout.alphabet.id,
                "symbols": list(layout.alphabet.symbols),
                "space": layout.alphabet.space,
                "groups": {key: list(layout.group(key)) for key in KEY_LABELS},
                "next_key": layout.next_key,
            },
            "n": self.n,
            "xi": self.xi,
            "variables": {
                s.name: s.cardinality for s in variable_specs(layout, self.n)
            },
            "parents": list(self.parents),
            "levels": [
                {
                    "parents": list(cpt.parents),
                    "rows": [
                        {"j": list(j), "p": list(cpt.rows[j])}
                        for j in sorted(cpt.rows)
                    ],
                }
                for cpt in self.levels
            ],
        }

    def save(self, path: str | Path) -> None:
        text = json.dumps(self.to_document(), ensure_ascii=False, indent=1)
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def from_document(cls, doc: Mapping) -> "Model":
        if doc.get("format") != MODEL_FORMAT:
            raise ValueError("not a model document")
        if doc.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported model version {doc.get('version')!r}")
        spec = doc["layout"]
        alphabet = Alphabet(spec["alphabet"], tuple(spec["symbols"]), spec["space"])
        layout = KeypadLayout(
            alphabet,
            {key: tuple(group) for key, group in spec["groups"].items()},
            spec["next_key"],
        )
        r = layout.max_group_size
        levels = [
            Cpt(
                tuple(level["parents"]),
                r,
                {tuple(row["j"]): tuple(row["p"]) for row in level["rows"]},
            )
            for level in doc["levels"]
        ]
        return cls(
            layout=layout,
            n=doc["n"],
            xi=doc["xi"],
            parents=tuple(doc["parents"]),
            levels=levels,
        )

    @classmethod
    def load(cls, path: str | Path) -> "Model":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls.from_document(doc)


def train_model(
    samples: Sequence[Sample],
    layout: KeypadLayout,
    n: int = 3,
    xi: float | None = None,
    parents: Iterable[str] | None = None,
) -> Model:
    """Learn (or accept) State parents, then fit the whole fallback chain."""
    if not samples:
        raise ValueError("cannot train on an empty sample list")
    if xi is None:
        xi = default_xi(variable_specs(layout, n))
    provider = CountProvider(samples, layout, n)
    if parents is None:
        learned = learn_structure(provider, xi).parents["State"]
    else:
        learned = state_structure(tuple(parents), n).parents["State"]
    levels = []
    for parent_set in fallback_chain(learned, n):
        structure = state_structure(parent_set, n)
        levels.append(fit_cpt(structure, provider.counts_for(structure.parents), xi))
    return Model(layout=layout, n=n, xi=xi, parents=learned, levels=levels)
