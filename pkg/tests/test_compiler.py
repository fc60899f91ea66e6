"""Table compilation and verification."""

from __future__ import annotations

import random

import pytest

from reducedkey.bbn import Model, train_model
from reducedkey.compiler import compile_table, verify_table
from reducedkey.corpus import extract_samples, normalize
from reducedkey.keypad import (
    KEY_LABELS,
    ReorderingTable,
    decode_permutation,
    PermutationCode,
    enumerate_contexts,
    write_binary,
)


@pytest.fixture(scope="module")
def small_model(greek, markov_samples):
    return train_model(markov_samples[:3000], greek, 3)


def test_uniform_model_compiles_to_all_identity_codes(greek) -> None:
    model = Model(layout=greek, n=1, xi=8.6, parents=(), levels=[])
    table, report = compile_table(model, greek, 1)
    assert report.rows_written == 25
    assert set(table.rows.values()) == {(1,) * 8}
    assert report.contexts_fallback == 25
    assert report.code_histogram["2"] == {1: 25}


def test_compile_covers_every_context(greek, small_model) -> None:
    table, report = compile_table(small_model, greek, 3)
    assert report.rows_written == 25**3
    assert len(table.rows) == 25**3
    assert table.is_complete()


def test_compiled_codes_reproduce_model_rankings(greek, small_model) -> None:
    table, _ = compile_table(small_model, greek, 3)
    rng = random.Random(21)
    contexts = list(enumerate_contexts(greek.alphabet, 3))
    for ctx in rng.sample(contexts, 300):
        for key in KEY_LABELS:
            want = small_model.rank_positions(ctx, key)
            got = table.lookup(ctx, key)
            group = greek.group(key)
            assert got == [group[s - 1] for s in want]


def test_compile_is_deterministic(greek, markov_samples) -> None:
    samples = markov_samples[:2000]
    first = write_binary(compile_table(train_model(samples, greek, 3), greek, 3)[0])
    second = write_binary(compile_table(train_model(samples, greek, 3), greek, 3)[0])
    assert first == second


def test_compile_histogram_totals(greek, small_model) -> None:
    _, report = compile_table(small_model, greek, 3)
    for key in KEY_LABELS:
        assert sum(report.code_histogram[key].values()) == 25**3
        assert all(1 <= code <= 6 for code in report.code_histogram[key])


def test_compile_rejects_mismatches(greek, latin, small_model) -> None:
    with pytest.raises(ValueError, match="alphabet"):
        compile_table(small_model, latin, 3)
    with pytest.raises(ValueError, match="n="):
        compile_table(small_model, greek, 2)


def test_verify_accepts_a_fresh_compile(greek, small_model) -> None:
    table, _ = compile_table(small_model, greek, 3)
    report = verify_table(table, greek)
    assert report.ok
    assert report.rows_checked == 25**3
    assert report.violations == []


def test_verify_flags_out_of_range_code(greek) -> None:
    rows = {ctx: (1,) * 8 for ctx in enumerate_contexts(greek.alphabet, 1)}
    ctx = ("Α",)
    rows[ctx] = (7, 1, 1, 1, 1, 1, 1, 1)  # 7 impossible on a 3-group
    report = verify_table(ReorderingTable(greek, 1, rows), greek)
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert violation.context == "Α"
    assert violation.key == "2"
    assert "out of range" in violation.message


def test_verify_flags_truncated_row(greek) -> None:
    rows = {ctx: (1,) * 8 for ctx in enumerate_contexts(greek.alphabet, 1)}
    rows[("Β",)] = (1, 1, 1)
    report = verify_table(ReorderingTable(greek, 1, rows), greek)
    assert any("expected 8" in v.message for v in report.violations)
    assert not report.ok


def test_verify_flags_missing_rows(greek) -> None:
    rows = {ctx: (1,) * 8 for ctx in enumerate_contexts(greek.alphabet, 1)}
    del rows[("Ω",)]
    report = verify_table(ReorderingTable(greek, 1, rows), greek)
    assert any("expected 25" in v.message for v in report.violations)


def test_verify_flags_alphabet_mismatch(greek, latin) -> None:
    report = verify_table(ReorderingTable(greek, 1, {}), latin)
    assert not report.ok


def test_every_compiled_code_decodes(greek, small_model) -> None:
    table, report = compile_table(small_model, greek, 3)
    for key in KEY_LABELS:
        size = len(greek.group(key))
        for code in report.code_histogram[key]:
            perm = decode_permutation(PermutationCode(code, size))
            assert sorted(perm) == list(range(1, size + 1))
