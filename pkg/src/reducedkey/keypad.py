"""Keypad layouts, permutation codes, and context-indexed reordering tables.

A reduced keypad maps an alphabet onto the digit keys 2..9, three or four
letters per key.  A reordering table assigns each (context, key) pair a
compact permutation code describing how that key's letters should be offered
to the user, most probable first.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator

KEY_LABELS = ("2", "3", "4", "5", "6", "7", "8", "9")
SPACE = " "
SPACE_GLYPH = "_"

GREEK_CAPS = "ΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩ"
LATIN_CAPS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

# Number of distinct codes per group size: k! permutations, codes 1..k!.
CODES_PER_SIZE = {3: 6, 4: 24}

_MAGIC = b"IPRT"
_FORMAT_VERSION = 1


class TableFormatError(ValueError):
    """A serialized table is malformed.  Carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of letter symbols plus a dedicated word-boundary symbol."""

    id: str
    symbols: tuple[str, ...]
    space: str = SPACE

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("alphabet id must be non-empty")
        if len(self.symbols) < 2:
            raise ValueError("alphabet needs at least two symbols")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if self.space in self.symbols:
            raise ValueError("space symbol may not double as a letter")
        for s in self.symbols + (self.space,):
            if len(s) != 1:
                raise ValueError(f"symbols must be single characters: {s!r}")
        # Digit 0 is the space; letters get 1..y in alphabet order.
        digits = {self.space: 0}
        for i, s in enumerate(self.symbols):
            digits[s] = i + 1
        object.__setattr__(self, "_digits", digits)

    @property
    def y(self) -> int:
        """Number of letter symbols."""
        return len(self.symbols)

    def digit(self, symbol: str) -> int:
        try:
            return self._digits[symbol]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.id!r}") from None

    def symbol_for_digit(self, digit: int) -> str:
        if digit == 0:
            return self.space
        if 1 <= digit <= self.y:
            return self.symbols[digit - 1]
        raise ValueError(f"digit {digit} out of range for alphabet {self.id!r}")

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._digits  # type: ignore[attr-defined]


@dataclass(frozen=True)
class KeypadLayout:
    """Assignment of an alphabet to keys 2..9 in a fixed base order per key.

    Keys 1 and 0 carry no letters; 0 enters the space.  The base order of a
    group is the "static" order a plain multi-tap phone would use.
    """

    alphabet: Alphabet
    groups: dict[str, tuple[str, ...]]
    next_key: str = "#"

    def __post_init__(self) -> None:
        if set(self.groups) != set(KEY_LABELS):
            raise ValueError("layout must define exactly the keys 2..9")
        seen: dict[str, str] = {}
        positions: dict[str, tuple[str, int]] = {}
        for key in KEY_LABELS:
            group = tuple(self.groups[key])
            if len(group) not in (3, 4):
                raise ValueError(f"key {key} group must hold 3 or 4 symbols")
            for i, sym in enumerate(group):
                if sym in seen:
                    raise ValueError(f"symbol {sym!r} appears on keys {seen[sym]} and {key}")
                if sym not in self.alphabet:
                    raise ValueError(f"symbol {sym!r} not in alphabet {self.alphabet.id!r}")
                if sym == self.alphabet.space:
                    raise ValueError("space may not sit on a letter key")
                seen[sym] = key
                positions[sym] = (key, i + 1)
        missing = set(self.alphabet.symbols) - set(seen)
        if missing:
            raise ValueError(f"symbols missing from layout: {sorted(missing)}")
        object.__setattr__(self, "groups", {k: tuple(v) for k, v in self.groups.items()})
        object.__setattr__(self, "_positions", positions)

    def group(self, key: str) -> tuple[str, ...]:
        try:
            return self.groups[key]
        except KeyError:
            raise ValueError(f"no letter group on key {key!r}") from None

    def position(self, symbol: str) -> tuple[str, int]:
        """Return (key label, 1-based base position) for a letter."""
        try:
            return self._positions[symbol]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not on this keypad") from None

    def key_of(self, symbol: str) -> str:
        return self.position(symbol)[0]

    @property
    def max_group_size(self) -> int:
        return max(len(g) for g in self.groups.values())


def _greek_caps_layout() -> KeypadLayout:
    alphabet = Alphabet("greek-caps", tuple(GREEK_CAPS))
    groups = {
        KEY_LABELS[i]: tuple(GREEK_CAPS[3 * i : 3 * i + 3]) for i in range(8)
    }
    return KeypadLayout(alphabet, groups)


def _latin_caps_layout() -> KeypadLayout:
    alphabet = Alphabet("latin-caps", tuple(LATIN_CAPS))
    groups = {
        "2": ("A", "B", "C"),
        "3": ("D", "E", "F"),
        "4": ("G", "H", "I"),
        "5": ("J", "K", "L"),
        "6": ("M", "N", "O"),
        "7": ("P", "Q", "R", "S"),
        "8": ("T", "U", "V"),
        "9": ("W", "X", "Y", "Z"),
    }
    return KeypadLayout(alphabet, groups)


_BUILTIN_LAYOUTS = {
    "greek-caps": _greek_caps_layout,
    "latin-caps": _latin_caps_layout,
}


def builtin_layout(name: str) -> KeypadLayout:
    """Return a named built-in layout ("greek-caps" or "latin-caps")."""
    try:
        factory = _BUILTIN_LAYOUTS[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTIN_LAYOUTS))
        raise ValueError(f"unknown layout {name!r} (built-ins: {known})") from None
    return factory()


def builtin_layout_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN_LAYOUTS))


@dataclass(frozen=True)
class PermutationCode:
    """A 1-based lexicographic rank of a permutation of {1..group_size}.

    Code 1 is the identity (static base order).  For a 3-group the codes run
    1..6; for a 4-group 1..24, where 24 encodes full reversal [4,3,2,1].
    """

    value: int
    group_size: int

    def __post_init__(self) -> None:
        if self.group_size not in CODES_PER_SIZE:
            raise ValueError(f"group size must be 3 or 4, got {self.group_size}")
        top = CODES_PER_SIZE[self.group_size]
        if not 1 <= self.value <= top:
            raise ValueError(
                f"code {self.value} out of range 1..{top} for group size {self.group_size}"
            )


def encode_permutation(order: tuple[int, ...] | list[int]) -> PermutationCode:
    """Rank a permutation of {1..k} lexicographically, 1-based."""
    k = len(order)
    if k not in CODES_PER_SIZE:
        raise ValueError(f"group size must be 3 or 4, got {k}")
    if sorted(order) != list(range(1, k + 1)):
        raise ValueError(f"{order!r} is not a permutation of 1..{k}")
    remaining = list(range(1, k + 1))
    rank = 0
    for i, v in enumerate(order):
        idx = remaining.index(v)
        rank += idx * factorial(k - 1 - i)
        remaining.pop(idx)
    return PermutationCode(rank + 1, k)


def decode_permutation(code: PermutationCode) -> tuple[int, ...]:
    """Invert encode_permutation."""
    k = code.group_size
    remaining = list(range(1, k + 1))
    rest = code.value - 1
    out = []
    for i in range(k):
        idx, rest = divmod(rest, factorial(k - 1 - i))
        out.append(remaining.pop(idx))
    return tuple(out)


# --- contexts -------------------------------------------------------------

def context_to_string(ctx: tuple[str, ...], alphabet: Alphabet) -> str:
    return "".join(SPACE_GLYPH if s == alphabet.space else s for s in ctx)

def context_from_string(text: str, alphabet: Alphabet) -> tuple[str, ...]:
    ctx = tuple(alphabet.space if ch == SPACE_GLYPH else ch for ch in text)
    for s in ctx:
        alphabet.digit(s)
    return ctx


def context_index(ctx: tuple[str, ...], alphabet: Alphabet) -> int:
    """Mixed-radix row index of a context, oldest symbol most significant."""
    base = alphabet.y + 1
    idx = 0
    for s in ctx:
        idx = idx * base + alphabet.digit(s)
    return idx


def context_from_index(index: int, alphabet: Alphabet, n: int) -> tuple[str, ...]:
    base = alphabet.y + 1
    if not 0 <= index < base**n:
        raise ValueError(f"context index {index} out of range for n={n}")
    digits = []
    for _ in range(n):
        index, d = divmod(index, base)
        digits.append(d)
    return tuple(alphabet.symbol_for_digit(d) for d in reversed(digits))


def enumerate_contexts(alphabet: Alphabet, n: int) -> Iterator[tuple[str, ...]]:
    """All (y+1)^n contexts in ascending row-index order."""
    if n < 1:
        raise ValueError("context length must be at least 1")
    base = alphabet.y + 1
    ctx_digits = [0] * n
    total = base**n
    for _ in range(total):
        yield tuple(alphabet.symbol_for_digit(d) for d in ctx_digits)
        for pos in range(n - 1, -1, -1):
            ctx_digits[pos] += 1
            if ctx_digits[pos] < base:
                break
            ctx_digits[pos] = 0


# --- the table ------------------------------------------------------------

@dataclass
class ReorderingTable:
    """Maps contexts to one permutation code per key, in key order 2..9.

    Rows may be sparse; a missing row means every key keeps its static base
    order.  Codes are stored 1-based.
    """

    layout: KeypadLayout
    n: int
    rows: dict[tuple[str, ...], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("context length must be at least 1")

    @property
    def alphabet_id(self) -> str:
        return self.layout.alphabet.id

    def is_complete(self) -> bool:
        return len(self.rows) == (self.layout.alphabet.y + 1) ** self.n

    def _check_context(self, ctx: tuple[str, ...]) -> None:
        if len(ctx) != self.n:
            raise ValueError(f"context must hold {self.n} symbols, got {len(ctx)}")
        for s in ctx:
            self.layout.alphabet.digit(s)

    def lookup(self, ctx: tuple[str, ...], key: str) -> list[str]:
        """Ranked symbols for a key under a context; static order if no row."""
        self._check_context(ctx)
        group = self.layout.group(key)
        codes = self.rows.get(tuple(ctx))
        if codes is None:
            return list(group)
        key_idx = KEY_LABELS.index(key)
        if len(codes) != len(KEY_LABELS):
            raise ValueError(f"corrupt row for context {ctx!r}: {len(codes)} codes")
        perm = decode_permutation(PermutationCode(codes[key_idx], len(group)))
        return [group[p - 1] for p in perm]


def table_lookup(table: ReorderingTable, ctx: tuple[str, ...], key: str) -> list[str]:
    return table.lookup(ctx, key)


# --- binary format ---------------------------------------------------------
#
# magic "IPRT" | version u8 | alphabet-id length u8 + UTF-8 bytes | n u8 |
# y u16 LE | row count u32 LE | rows.  Rows cover every context in ascending
# mixed-radix index order, 8 bytes each, byte i holding the ZERO-based code
# for key 2+i.

def write_binary(table: ReorderingTable) -> bytes:
    layout = table.layout
    alphabet = layout.alphabet
    if not table.is_complete():
        raise ValueError(
            f"binary tables must be complete: {len(table.rows)} rows, "
            f"need {(alphabet.y + 1) ** table.n}"
        )
    ident = table.alphabet_id.encode("utf-8")
    if len(ident) > 255:
        raise ValueError("alphabet id too long for binary header")
    out = bytearray()
    out += _MAGIC
    out.append(_FORMAT_VERSION)
    out.append(len(ident))
    out += ident
    out.append(table.n)
    out += struct.pack("<H", alphabet.y)
    out += struct.pack("<I", len(table.rows))
    sizes = [len(layout.group(k)) for k in KEY_LABELS]
    for ctx in enumerate_contexts(alphabet, table.n):
        codes = table.rows.get(ctx)
        if codes is None or len(codes) != len(KEY_LABELS):
            raise ValueError(f"missing or corrupt row for context {ctx!r}")
        for code, size in zip(codes, sizes):
            if not 1 <= code <= CODES_PER_SIZE[size]:
                raise ValueError(f"code {code} out of range for group size {size}")
            out.append(code - 1)
    return bytes(out)


def read_binary(data: bytes, layout: KeypadLayout | None = None) -> ReorderingTable:
    """Parse the binary format; resolves built-in layouts by alphabet id."""
    if len(data) < 6:
        raise TableFormatError("truncated header", offset=len(data))
    if data[:4] != _MAGIC:
        raise TableFormatError(f"bad magic {data[:4]!r}", offset=0)
    if data[4] != _FORMAT_VERSION:
        raise TableFormatError(f"unsupported version {data[4]}", offset=4)
    id_len = data[5]
    pos = 6
    if len(data) < pos + id_len + 7:
        raise TableFormatError("truncated header", offset=len(data))
    alphabet_id = data[pos : pos + id_len].decode("utf-8")
    pos += id_len
    n = data[pos]
    pos += 1
    if n < 1:
        raise TableFormatError("context length must be at least 1", offset=pos - 1)
    (y,) = struct.unpack_from("<H", data, pos)
    pos += 2
    (row_count,) = struct.unpack_from("<I", data, pos)
    pos += 4

    if layout is None:
        if alphabet_id not in _BUILTIN_LAYOUTS:
            raise ValueError(
                f"alphabet {alphabet_id!r} is not built in; pass the layout explicitly"
            )
        layout = builtin_layout(alphabet_id)
    if layout.alphabet.id != alphabet_id:
        raise ValueError(
            f"table alphabet {alphabet_id!r} does not match layout {layout.alphabet.id!r}"
        )
    if y != layout.alphabet.y:
        raise TableFormatError(f"alphabet size {y} does not match layout", offset=pos - 6)
    expected_rows = (y + 1) ** n
    if row_count != expected_rows:
        raise TableFormatError(
            f"row count {row_count} != (y+1)^n = {expected_rows}", offset=pos - 4
        )
    expected_len = pos + row_count * len(KEY_LABELS)
    if len(data) != expected_len:
        raise TableFormatError(
            f"file is {len(data)} bytes, expected {expected_len}",
            offset=min(len(data), expected_len),
        )
    sizes = [len(layout.group(k)) for k in KEY_LABELS]
    rows: dict[tuple[str, ...], tuple[int, ...]] = {}
    for ctx in enumerate_contexts(layout.alphabet, n):
        codes = []
        for size in sizes:
            raw = data[pos]
            if raw + 1 > CODES_PER_SIZE[size]:
                raise TableFormatError(
                    f"code {raw + 1} out of range for group size {size}", offset=pos
                )
            codes.append(raw + 1)
            pos += 1
        rows[ctx] = tuple(codes)
    return ReorderingTable(layout, n, rows)


# --- JSON export ------------------------------------------------------------

def export_json(table: ReorderingTable, layout: KeypadLayout) -> str:
    """Serialize a table for external consumers (e.g. the browser emulator).

    Object keys: alphabet, n, keypad (key label -> symbol array), rows
    (context string with "_" for space -> array of 8 one-based codes).
    Rows appear in ascending mixed-radix order; output is byte-stable.
    """
    if layout.alphabet.id != table.alphabet_id:
        raise ValueError(
            f"table alphabet {table.alphabet_id!r} does not match layout "
            f"{layout.alphabet.id!r}"
        )
    alphabet = layout.alphabet
    ordered = sorted(table.rows, key=lambda c: context_index(c, alphabet))
    doc = {
        "alphabet": table.alphabet_id,
        "n": table.n,
        "keypad": {key: list(layout.group(key)) for key in KEY_LABELS},
        "rows": {
            context_to_string(ctx, alphabet): list(table.rows[ctx]) for ctx in ordered
        },
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def table_from_json(text: str, layout: KeypadLayout | None = None) -> ReorderingTable:
    """Parse an export_json document back into a table."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    for field_name in ("alphabet", "n", "keypad", "rows"):
        if field_name not in doc:
            raise ValueError(f"table document missing field {field_name!r}")
    alphabet_id = doc["alphabet"]
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"bad context length {n!r}")
    keypad = doc["keypad"]
    if layout is None:
        if alphabet_id in _BUILTIN_LAYOUTS:
            layout = builtin_layout(alphabet_id)
        else:
            # Reconstruct: alphabet order taken as key-order concatenation.
            symbols = tuple(s for key in KEY_LABELS for s in keypad.get(key, ()))
            layout = KeypadLayout(
                Alphabet(alphabet_id, symbols),
                {key: tuple(keypad[key]) for key in KEY_LABELS},
            )
    if layout.alphabet.id != alphabet_id:
        raise ValueError(
            f"table alphabet {alphabet_id!r} does not match layout {layout.alphabet.id!r}"
        )
    if {k: list(v) for k, v in layout.groups.items()} != keypad:
        raise ValueError("keypad groups in document do not match layout")
    sizes = [len(layout.group(k)) for k in KEY_LABELS]
    rows: dict[tuple[str, ...], tuple[int, ...]] = {}
    for ctx_text, codes in doc["rows"].items():
        ctx = context_from_string(ctx_text, layout.alphabet)
        if len(ctx) != n:
            raise ValueError(f"context {ctx_text!r} does not hold {n} symbols")
        if len(codes) != len(KEY_LABELS):
            raise ValueError(f"row {ctx_text!r} must hold 8 codes")
        for code, size in zip(codes, sizes):
            if not isinstance(code, int) or not 1 <= code <= CODES_PER_SIZE[size]:
                raise ValueError(f"row {ctx_text!r}: code {code!r} out of range")
        rows[ctx] = tuple(codes)
    return ReorderingTable(layout, n, rows)
