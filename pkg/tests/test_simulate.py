"""Keystroke replay for multi-tap, two-key, and predictive entry."""

from __future__ import annotations

import csv
import io
import json
import random

import pytest

from reducedkey.corpus import normalize
from reducedkey.keypad import (
    CODES_PER_SIZE,
    KEY_LABELS,
    Alphabet,
    KeypadLayout,
    ReorderingTable,
    encode_permutation,
    enumerate_contexts,
)
from reducedkey.simulate import (
    evaluate,
    first_guess_accuracy,
    ipreti_replay,
    render_csv,
    render_json,
    render_text,
    stem_count,
    twokey_count,
)


def crafted_table(layout, stream: str, rank_of_truth: int, n: int = 3) -> ReorderingTable:
    """A table whose rows put each letter of the stream at a chosen rank."""
    space = layout.alphabet.space
    rows: dict[tuple[str, ...], tuple[int, ...]] = {}
    context = [space] * n
    for ch in stream:
        if ch != space:
            key, state = layout.position(ch)
            group = layout.group(key)
            rank = min(rank_of_truth, len(group) - 1)
            order = [s for s in range(1, len(group) + 1) if s != state]
            order.insert(rank, state)
            codes = list(rows.get(tuple(context), (1,) * 8))
            codes[KEY_LABELS.index(key)] = encode_permutation(tuple(order)).value
            rows[tuple(context)] = tuple(codes)
        context.pop(0)
        context.append(ch)
    return ReorderingTable(layout, n, rows)


# --- multi-tap -----------------------------------------------------------------

def test_stem_imera_takes_nine_presses(greek) -> None:
    outcome = stem_count("ΗΜΕΡΑ", greek)
    assert outcome.keystrokes == 9
    assert outcome.keystrokes / 5 == pytest.approx(1.8)
    assert outcome.timeouts == 0


def test_stem_single_letters(greek) -> None:
    assert stem_count("Α", greek).keystrokes == 1
    assert stem_count("Γ", greek).keystrokes == 3
    assert stem_count("", greek).keystrokes == 0


def test_stem_same_key_letters_cost_a_timeout(greek) -> None:
    outcome = stem_count("ΑΒ", greek)
    assert outcome.keystrokes == 3
    assert outcome.timeouts == 1
    # a space between same-key letters clears the collision
    spaced = stem_count("Α Α", greek)
    assert spaced.keystrokes == 3
    assert spaced.timeouts == 0


def test_stem_spaces_cost_one_press(greek) -> None:
    assert stem_count("Α Α", greek).keystrokes == 3
    assert stem_count("ΗΜΕΡΑ ΗΜΕΡΑ", greek).keystrokes == 19


def test_alternative_layout_thought_experiment(greek) -> None:
    """A keypad rearranged for this word types ΗΜΕΡΑ in five presses."""
    base = {k: greek.group(k) for k in KEY_LABELS}
    base["3"] = ("Ε", "Δ", "Ζ")
    base["5"] = ("Μ", "Λ", "Κ")
    base["7"] = ("Ρ", "Π", "Σ")
    rearranged = KeypadLayout(greek.alphabet, base)
    assert stem_count("ΗΜΕΡΑ", rearranged).keystrokes == 5


# --- two-key ---------------------------------------------------------------------

def test_twokey_is_two_per_letter_plus_spaces(greek, markov_stream) -> None:
    assert twokey_count("ΗΜΕΡΑ", greek).keystrokes == 10
    assert twokey_count("Α Β", greek).keystrokes == 5
    assert twokey_count("", greek).keystrokes == 0
    stream = markov_stream[:3000]
    letters = sum(1 for c in stream if c != " ")
    spaces = len(stream) - letters
    assert twokey_count(stream, greek).keystrokes == 2 * letters + spaces


# --- predictive -------------------------------------------------------------------

def test_ipreti_perfect_table_is_one_press_per_character(greek) -> None:
    stream = normalize("ΗΜΕΡΑ ΚΑΛΗ", greek.alphabet)
    table = crafted_table(greek, stream, rank_of_truth=0)
    outcome = ipreti_replay(stream, table, greek)
    assert outcome.keystrokes == len(stream)
    assert outcome.singles == 0
    assert outcome.doubles == 0
    assert first_guess_accuracy(stream, table, greek) == 1.0


def test_ipreti_second_guesses_are_singles(greek) -> None:
    stream = "ΗΜΕΡΑ"
    table = crafted_table(greek, stream, rank_of_truth=1)
    outcome = ipreti_replay(stream, table, greek)
    assert outcome.keystrokes == 2 * 5
    assert outcome.singles == 5
    assert outcome.doubles == 0


def test_ipreti_third_guesses_are_doubles(greek) -> None:
    stream = "ΗΜΕΡΑ"
    table = crafted_table(greek, stream, rank_of_truth=2)
    outcome = ipreti_replay(stream, table, greek)
    assert outcome.keystrokes == 3 * 5
    assert outcome.singles == 0
    assert outcome.doubles == 5
    assert first_guess_accuracy(stream, table, greek) == 0.0


def test_ipreti_worst_case_is_bounded_by_group_size(greek) -> None:
    stream = normalize("ΗΜΕΡΑ ΚΑΛΗ ΣΠΙΤΙ", greek.alphabet)
    letters = sum(1 for c in stream if c != " ")
    spaces = len(stream) - letters
    table = crafted_table(greek, stream, rank_of_truth=3)  # clamps to last
    outcome = ipreti_replay(stream, table, greek)
    assert outcome.keystrokes == 3 * letters + spaces


def test_ipreti_fourth_rank_on_a_4_group_counts_an_extra_double(latin) -> None:
    stream = "S"  # position 4 on key 7
    table = crafted_table(latin, stream, rank_of_truth=3)
    outcome = ipreti_replay(stream, table, latin)
    assert outcome.keystrokes == 4
    assert outcome.singles == 0
    assert outcome.doubles == 2


def test_ipreti_missing_rows_behave_statically(greek) -> None:
    # empty table: every first guess is the base-order head of the key group
    outcome = ipreti_replay("ΗΜΕΡΑ", ReorderingTable(greek, 3, {}), greek)
    # positions are 1,3,2,2,1 so extra presses are 0,2,1,1,0
    assert outcome.keystrokes == 5 + 4
    assert outcome.singles == 2
    assert outcome.doubles == 1


def test_ipreti_context_advances_by_the_true_letter(greek) -> None:
    # the second word sees contexts that cross the space boundary
    stream = normalize("ΗΜΕΡΑ ΚΑΛΗ", greek.alphabet)
    table = crafted_table(greek, stream, rank_of_truth=0)
    # remove the row for Κ (context Ρ,Α,space): Κ is already first statically
    assert first_guess_accuracy(stream, table, greek) == 1.0


def test_ipreti_keystroke_identity_on_random_tables(greek, markov_stream) -> None:
    rng = random.Random(31)
    stream = markov_stream[:1500]
    letters = sum(1 for c in stream if c != " ")
    spaces = len(stream) - letters
    for trial in range(5):
        rows = {}
        for ctx in enumerate_contexts(greek.alphabet, 1):
            rows[ctx] = tuple(rng.randint(1, 6) for _ in KEY_LABELS)
        table = ReorderingTable(greek, 1, rows)
        outcome = ipreti_replay(stream, table, greek)
        assert (
            outcome.keystrokes - spaces
            == letters + outcome.singles + 2 * outcome.doubles
        )
        accuracy = first_guess_accuracy(stream, table, greek)
        assert accuracy == pytest.approx(
            1 - (outcome.singles + outcome.doubles) / letters
        )


def test_ipreti_is_deterministic(greek, markov_stream) -> None:
    stream = markov_stream[:800]
    table = crafted_table(greek, stream, rank_of_truth=0)
    assert ipreti_replay(stream, table, greek) == ipreti_replay(stream, table, greek)


def test_ipreti_rejects_alphabet_mismatch(greek, latin) -> None:
    table = ReorderingTable(latin, 3, {})
    with pytest.raises(ValueError, match="does not match"):
        ipreti_replay("ΗΜΕΡΑ", table, greek)


def test_first_guess_accuracy_rejects_letterless_streams(greek) -> None:
    table = ReorderingTable(greek, 3, {})
    with pytest.raises(ValueError):
        first_guess_accuracy("", table, greek)


# --- phrase evaluation ----------------------------------------------------------------

def test_evaluate_counts_words_and_characters(greek) -> None:
    table = ReorderingTable(greek, 3, {})
    result = evaluate(["ΗΜΕΡΑ ΚΑΛΗ", "ΝΑΙ"], table, greek)
    first, second = result.phrases
    assert (first.words, first.characters, first.letters, first.spaces) == (2, 10, 9, 1)
    assert (second.words, second.characters) == (1, 3)
    total = result.aggregate.total
    assert total.words == 3
    assert total.characters == 13
    assert total.ipreti_keystrokes == first.ipreti_keystrokes + second.ipreti_keystrokes
    assert total.stem_keystrokes == first.stem_keystrokes + second.stem_keystrokes


def test_evaluate_improvement_and_rates(greek) -> None:
    stream = "ΗΜΕΡΑ"
    table = crafted_table(greek, stream, rank_of_truth=0)
    result = evaluate([stream], table, greek)
    report = result.phrases[0]
    assert report.ipreti_keystrokes == 5
    assert report.stem_keystrokes == 9
    assert report.improvement_pct == pytest.approx((9 - 5) / 9 * 100)
    assert report.single_rate == 0.0
    assert report.double_rate == 0.0
    agg = result.aggregate
    assert agg.kspc_ipreti == pytest.approx(1.0)
    assert agg.kspc_stem == pytest.approx(1.8)
    assert agg.first_guess_pct == pytest.approx(100.0)


def test_evaluate_normalizes_raw_phrases(greek) -> None:
    table = ReorderingTable(greek, 3, {})
    result = evaluate(["ημέρα, καλή!"], table, greek)
    assert result.phrases[0].characters == 10


def test_evaluate_rates_use_characters_as_denominator(greek) -> None:
    stream = "ΗΜΕΡΑ"
    table = crafted_table(greek, stream, rank_of_truth=1)
    result = evaluate([stream], table, greek)
    report = result.phrases[0]
    assert report.singles == 5
    assert report.single_rate == pytest.approx(100.0)  # 5 singles / 5 characters
    assert result.aggregate.first_guess_pct == pytest.approx(0.0)


def test_evaluate_rejects_empty_phrase_list(greek) -> None:
    with pytest.raises(ValueError):
        evaluate([], ReorderingTable(greek, 3, {}), greek)


def test_evaluate_totals_match_column_sums(greek, markov_stream) -> None:
    table = ReorderingTable(greek, 1, {})
    words = markov_stream.split(" ")
    phrases = [" ".join(words[i * 8 : (i + 1) * 8]) for i in range(6)]
    result = evaluate(phrases, table, greek)
    total = result.aggregate.total
    for field in ("words", "characters", "ipreti_keystrokes", "stem_keystrokes",
                  "singles", "doubles"):
        assert getattr(total, field) == sum(getattr(p, field) for p in result.phrases)


# --- rendering --------------------------------------------------------------------------

@pytest.fixture()
def sample_result(greek):
    table = ReorderingTable(greek, 3, {})
    return evaluate(["ΗΜΕΡΑ ΚΑΛΗ", "ΣΠΙΤΙ", "ΝΑΙ Η ΟΧΙ"], table, greek)


def test_render_text_has_header_rows_and_totals(sample_result) -> None:
    text = render_text(sample_result)
    lines = text.splitlines()
    assert lines[0].split() == [
        "phrase", "words", "chars", "ipreti", "stem",
        "improvement_pct", "single_pct", "double_pct",
    ]
    assert len([ln for ln in lines if ln and ln[0] != "K" and "accuracy" not in ln]) >= 5
    assert any(ln.strip().startswith("total") for ln in lines)
    assert any("KSPC incl. spaces" in ln for ln in lines)
    assert any("KSPC excl. spaces" in ln for ln in lines)
    assert any("first-guess accuracy" in ln for ln in lines)


def test_render_csv_parses_back(sample_result) -> None:
    rows = list(csv.reader(io.StringIO(render_csv(sample_result))))
    assert rows[0][0] == "phrase"
    assert len(rows) == 1 + 3 + 1  # header, three phrases, totals
    assert rows[-1][0] == "total"
    total = sample_result.aggregate.total
    assert int(rows[-1][3]) == total.ipreti_keystrokes
    assert int(rows[-1][4]) == total.stem_keystrokes


def test_render_json_round_trips(sample_result) -> None:
    doc = json.loads(render_json(sample_result))
    assert len(doc["phrases"]) == 3
    assert doc["total"]["words"] == sample_result.aggregate.total.words
    assert "kspc" in doc and "ipreti" in doc["kspc"]
    assert doc["first_guess_pct"] == sample_result.aggregate.first_guess_pct
