"""Deterministic keystroke replay for the three text-entry methods.

Multi-tap (STEM): each letter costs its base position on the key, a space
costs one press, and consecutive letters on the same key force a timeout
wait that costs no keystroke.  Two-key: exactly two presses per letter.
Predictive (iPRETI): one press per letter plus one "next" press per rank the
table got wrong; the context always advances by the letter actually wanted.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .corpus import normalize
from .keypad import KeypadLayout, ReorderingTable


@dataclass
class ReplayOutcome:
    keystrokes: int
    singles: int = 0
    doubles: int = 0
    timeouts: int = 0


def stem_count(stream: str, layout: KeypadLayout) -> ReplayOutcome:
    """Multi-tap press count; timeouts tally same-key letter collisions."""
    space = layout.alphabet.space
    presses = 0
    timeouts = 0
    prev_key: str | None = None
    for ch in stream:
        if ch == space:
            presses += 1
            current = "0"
        else:
            key, position = layout.position(ch)
            presses += position
            current = key
        if current == prev_key:
            timeouts += 1
        prev_key = current
    return ReplayOutcome(keystrokes=presses, timeouts=timeouts)


def twokey_count(stream: str, layout: KeypadLayout) -> ReplayOutcome:
    """Two presses per letter (key then in-key index), one per space."""
    space = layout.alphabet.space
    presses = 0
    for ch in stream:
        if ch == space:
            presses += 1
        else:
            layout.position(ch)
            presses += 2
    return ReplayOutcome(keystrokes=presses)


def _letter_ranks(
    stream: str, table: ReorderingTable, layout: KeypadLayout
) -> Iterator[int]:
    """Yield, per letter, the 0-based rank the table offers it at."""
    if table.alphabet_id != layout.alphabet.id:
        raise ValueError(
            f"table alphabet {table.alphabet_id!r} does not match layout "
            f"{layout.alphabet.id!r}"
        )
    space = layout.alphabet.space
    context = [space] * table.n
    for ch in stream:
        if ch != space:
            key, _ = layout.position(ch)
            ranked = table.lookup(tuple(context), key)
            yield ranked.index(ch)
        context.pop(0)
        context.append(ch)


def ipreti_replay(
    stream: str, table: ReorderingTable, layout: KeypadLayout
) -> ReplayOutcome:
    """Predictive replay.  A letter at rank 0 is a hit; rank 1 is a single
    (one extra press), rank 2 a double, and rank 3 on a 4-letter key costs a
    third extra press tallied as an additional double."""
    space = layout.alphabet.space
    presses = singles = doubles = 0
    for ch, rank in zip(
        (c for c in stream if c != space), _letter_ranks(stream, table, layout)
    ):
        presses += 1 + rank
        if rank == 1:
            singles += 1
        elif rank >= 2:
            doubles += rank - 1
    presses += sum(1 for c in stream if c == space)
    return ReplayOutcome(keystrokes=presses, singles=singles, doubles=doubles)


def first_guess_accuracy(
    stream: str, table: ReorderingTable, layout: KeypadLayout
) -> float:
    """Fraction of letters the table offers first try."""
    ranks = list(_letter_ranks(stream, table, layout))
    if not ranks:
        raise ValueError("stream holds no letters")
    return sum(1 for r in ranks if r == 0) / len(ranks)


@dataclass
class PhraseReport:
    words: int
    characters: int
    letters: int
    spaces: int
    ipreti_keystrokes: int
    stem_keystrokes: int
    improvement_pct: float
    single_rate: float
    double_rate: float
    singles: int
    doubles: int


@dataclass
class Aggregate:
    total: PhraseReport
    kspc_ipreti: float
    kspc_stem: float
    kspc_ipreti_letters: float
    kspc_stem_letters: float
    first_guess_pct: float


@dataclass
class SimulationResult:
    phrases: list[PhraseReport] = field(default_factory=list)
    aggregate: Aggregate | None = None


def _phrase_report(
    stream: str, table: ReorderingTable, layout: KeypadLayout
) -> PhraseReport:
    space = layout.alphabet.space
    letters = sum(1 for c in stream if c != space)
    spaces = len(stream) - letters
    characters = letters + spaces
    words = len([w for w in stream.split(space) if w]) if stream else 0
    ipreti = ipreti_replay(stream, table, layout)
    stem = stem_count(stream, layout)
    improvement = (
        (stem.keystrokes - ipreti.keystrokes) / stem.keystrokes * 100
        if stem.keystrokes
        else 0.0
    )
    return PhraseReport(
        words=words,
        characters=characters,
        letters=letters,
        spaces=spaces,
        ipreti_keystrokes=ipreti.keystrokes,
        stem_keystrokes=stem.keystrokes,
        improvement_pct=improvement,
        single_rate=ipreti.singles / characters * 100 if characters else 0.0,
        double_rate=ipreti.doubles / characters * 100 if characters else 0.0,
        singles=ipreti.singles,
        doubles=ipreti.doubles,
    )


def evaluate(
    phrases: Sequence[str], table: ReorderingTable, layout: KeypadLayout
) -> SimulationResult:
    """Normalize and replay each phrase; totals are recomputed, not averaged."""
    if not phrases:
        raise ValueError("no phrases to evaluate")
    result = SimulationResult()
    for phrase in phrases:
        stream = normalize(phrase, layout.alphabet)
        result.phrases.append(_phrase_report(stream, table, layout))
    totals = result.phrases
    letters = sum(p.letters for p in totals)
    spaces = sum(p.spaces for p in totals)
    characters = sum(p.characters for p in totals)
    ipreti = sum(p.ipreti_keystrokes for p in totals)
    stem = sum(p.stem_keystrokes for p in totals)
    singles = sum(p.singles for p in totals)
    doubles = sum(p.doubles for p in totals)
    total = PhraseReport(
        words=sum(p.words for p in totals),
        characters=characters,
        letters=letters,
        spaces=spaces,
        ipreti_keystrokes=ipreti,
        stem_keystrokes=stem,
        improvement_pct=(stem - ipreti) / stem * 100 if stem else 0.0,
        single_rate=singles / characters * 100 if characters else 0.0,
        double_rate=doubles / characters * 100 if characters else 0.0,
        singles=singles,
        doubles=doubles,
    )
    result.aggregate = Aggregate(
        total=total,
        kspc_ipreti=ipreti / characters if characters else 0.0,
        kspc_stem=stem / characters if characters else 0.0,
        kspc_ipreti_letters=(ipreti - spaces) / letters if letters else 0.0,
        kspc_stem_letters=(stem - spaces) / letters if letters else 0.0,
        first_guess_pct=(1 - (singles + doubles) / letters) * 100 if letters else 0.0,
    )
    return result


# --- report rendering -------------------------------------------------------

_COLUMNS = (
    "phrase", "words", "chars", "ipreti", "stem",
    "improvement_pct", "single_pct", "double_pct",
)


def _rows(result: SimulationResult) -> list[list]:
    rows: list[list] = []
    for i, p in enumerate(result.phrases, start=1):
        rows.append(
            [i, p.words, p.characters, p.ipreti_keystrokes, p.stem_keystrokes,
             round(p.improvement_pct, 1), round(p.single_rate, 1),
             round(p.double_rate, 1)]
        )
    assert result.aggregate is not None
    t = result.aggregate.total
    rows.append(
        ["total", t.words, t.characters, t.ipreti_keystrokes, t.stem_keystrokes,
         round(t.improvement_pct, 1), round(t.single_rate, 1),
         round(t.double_rate, 1)]
    )
    return rows


def render_text(result: SimulationResult) -> str:
    rows = [list(_COLUMNS)] + [[str(c) for c in row] for row in _rows(result)]
    widths = [max(len(row[i]) for row in rows) for i in range(len(_COLUMNS))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    agg = result.aggregate
    assert agg is not None
    lines.append("")
    lines.append(
        f"KSPC incl. spaces: iPRETI {agg.kspc_ipreti:.3f}  STEM {agg.kspc_stem:.3f}"
    )
    lines.append(
        f"KSPC excl. spaces: iPRETI {agg.kspc_ipreti_letters:.3f}  "
        f"STEM {agg.kspc_stem_letters:.3f}"
    )
    lines.append(f"first-guess accuracy: {agg.first_guess_pct:.1f}%")
    return "\n".join(lines) + "\n"


def render_csv(result: SimulationResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    writer.writerows(_rows(result))
    return buf.getvalue()


def render_json(result: SimulationResult) -> str:
    agg = result.aggregate
    assert agg is not None
    doc = {
        "phrases": [
            {
                "words": p.words,
                "characters": p.characters,
                "ipreti_keystrokes": p.ipreti_keystrokes,
                "stem_keystrokes": p.stem_keystrokes,
                "improvement_pct": p.improvement_pct,
                "single_rate": p.single_rate,
                "double_rate": p.double_rate,
            }
            for p in result.phrases
        ],
        "total": {
            "words": agg.total.words,
            "characters": agg.total.characters,
            "ipreti_keystrokes": agg.total.ipreti_keystrokes,
            "stem_keystrokes": agg.total.stem_keystrokes,
            "improvement_pct": agg.total.improvement_pct,
            "single_rate": agg.total.single_rate,
            "double_rate": agg.total.double_rate,
        },
        "kspc": {
            "ipreti": agg.kspc_ipreti,
            "stem": agg.kspc_stem,
            "ipreti_letters_only": agg.kspc_ipreti_letters,
            "stem_letters_only": agg.kspc_stem_letters,
        },
        "first_guess_pct": agg.first_guess_pct,
    }
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"
