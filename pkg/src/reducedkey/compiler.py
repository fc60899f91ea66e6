"""Compile a trained model into a complete reordering table, and verify tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .bbn import Model
from .keypad import (
    CODES_PER_SIZE,
    KEY_LABELS,
    KeypadLayout,
    PermutationCode,
    ReorderingTable,
    context_to_string,
    decode_permutation,
    encode_permutation,
    enumerate_contexts,
)


@dataclass
class CompileReport:
    rows_written: int
    contexts_fallback: int
    code_histogram: dict[str, dict[int, int]]


def compile_table(
    model: Model, layout: KeypadLayout, n: int = 3
) -> tuple[ReorderingTable, CompileReport]:
    """Rank every (context, key) pair and encode the orders as a full table.

    A row counts as fallback if any of its keys was ranked by something other
    than the model's first (full-parent) conditional.
    """
    if layout.alphabet.id != model.layout.alphabet.id:
        raise ValueError(
            f"model alphabet {model.layout.alphabet.id!r} does not match "
            f"layout {layout.alphabet.id!r}"
        )
    if n != model.n:
        raise ValueError(f"model was trained with n={model.n}, cannot compile n={n}")
    histogram: dict[str, Counter] = {key: Counter() for key in KEY_LABELS}
    rows: dict[tuple[str, ...], tuple[int, ...]] = {}
    fallback_rows = 0
    for ctx in enumerate_contexts(layout.alphabet, n):
        codes = []
        fell_back = False
        for key in KEY_LABELS:
            ranked, level = model._rank(ctx, key)
            code = encode_permutation(tuple(ranked)).value
            codes.append(code)
            histogram[key][code] += 1
            if level != 0:
                fell_back = True
        rows[ctx] = tuple(codes)
        if fell_back:
            fallback_rows += 1
    table = ReorderingTable(layout, n, rows)
    report = CompileReport(
        rows_written=len(rows),
        contexts_fallback=fallback_rows,
        code_histogram={key: dict(histogram[key]) for key in KEY_LABELS},
    )
    return table, report


@dataclass
class Violation:
    context: str | None
    key: str | None
    message: str

    def __str__(self) -> str:
        where = []
        if self.context is not None:
            where.append(f"context {self.context!r}")
        if self.key is not None:
            where.append(f"key {self.key}")
        prefix = " ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message


@dataclass
class VerifyReport:
    rows_checked: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_table(table: ReorderingTable, layout: KeypadLayout) -> VerifyReport:
    """Check completeness, row shape, code ranges, and decodability."""
    alphabet = layout.alphabet
    report = VerifyReport(rows_checked=len(table.rows))
    if table.alphabet_id != alphabet.id:
        report.violations.append(
            Violation(None, None,
                      f"table alphabet {table.alphabet_id!r} != layout {alphabet.id!r}")
        )
        return report
    expected = (alphabet.y + 1) ** table.n
    if len(table.rows) != expected:
        report.violations.append(
            Violation(None, None, f"{len(table.rows)} rows, expected {expected}")
        )
    sizes = {key: len(layout.group(key)) for key in KEY_LABELS}
    decoded: set[tuple[int, int]] = set()
    for ctx, codes in table.rows.items():
        label = context_to_string(ctx, alphabet) if len(ctx) == table.n else repr(ctx)
        if len(ctx) != table.n or any(s not in alphabet for s in ctx):
            report.violations.append(Violation(label, None, "malformed context"))
            continue
        if len(codes) != len(KEY_LABELS):
            report.violations.append(
                Violation(label, None, f"row holds {len(codes)} codes, expected 8")
            )
            continue
        for key, code in zip(KEY_LABELS, codes):
            size = sizes[key]
            if not isinstance(code, int) or not 1 <= code <= CODES_PER_SIZE[size]:
                report.violations.append(
                    Violation(label, key,
                              f"code {code!r} out of range 1..{CODES_PER_SIZE[size]}")
                )
                continue
            if (code, size) not in decoded:
                decode_permutation(PermutationCode(code, size))
                decoded.add((code, size))
    return report
