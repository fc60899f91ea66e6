/** Reordering table documents: parsing, validation and ranked lookups. */

export const KEY_LABELS = ["2", "3", "4", "5", "6", "7", "8", "9"] as const;

export type KeyLabel = (typeof KEY_LABELS)[number];

export interface TableDocument {
    /** Alphabet identifier, e.g. "greek-caps"; the symbols live in keypad. */
    alphabet: string;
    n: number;
    keypad: Record<KeyLabel, string[]>;
    rows: Record<string, number[]>;
}

/** Every symbol on the keypad, in key order. */
export function alphabetSymbols(doc: TableDocument): string[] {
    return KEY_LABELS.flatMap((key) => doc.keypad[key]);
}

const FACTORIALS = [1, 1, 2, 6, 24];

/** Number of valid permutation codes for a key with `size` symbols. */
export function codeCount(size: number): number {
    const count = FACTORIALS[size];
    if (size < 1 || count === undefined) {
        throw new Error(`unsupported group size ${size}`);
    }
    return count;
}

/**
 * Turn a 1-based lexicographic permutation code into 1-based source
 * positions.  decodePermutation(5, 3) is [3, 1, 2]: the third symbol of
 * the group is shown first, then the first, then the second.
 */
export function decodePermutation(code: number, size: number): number[] {
    const total = codeCount(size);
    if (!Number.isInteger(code) || code < 1 || code > total) {
        throw new Error(`permutation code ${code} out of range 1..${total}`);
    }
    const remaining: number[] = [];
    for (let i = 1; i <= size; i++) {
        remaining.push(i);
    }
    const out: number[] = [];
    let rest = code - 1;
    for (let slot = size - 1; slot >= 0; slot--) {
        const block = FACTORIALS[slot] as number;
        const index = Math.floor(rest / block);
        rest = rest % block;
        out.push(remaining.splice(index, 1)[0] as number);
    }
    return out;
}

function isStringArray(value: unknown): value is string[] {
    return Array.isArray(value) && value.every((item) => typeof item === "string");
}

function plainObject(value: unknown, what: string): Record<string, unknown> {
    if (typeof value !== "object" || value === null || Array.isArray(value)) {
        throw new Error(`${what} must be an object`);
    }
    return value as Record<string, unknown>;
}

/**
 * Validate a parsed JSON document and return it as a TableDocument.
 * Throws Error with a human-readable reason on the first violation.
 */
export function validateTable(raw: unknown): TableDocument {
    const doc = plainObject(raw, "table document");
    for (const field of ["alphabet", "n", "keypad", "rows"]) {
        if (!(field in doc)) {
            throw new Error(`missing field "${field}"`);
        }
    }

    const alphabet = doc["alphabet"];
    if (typeof alphabet !== "string" || alphabet.length === 0) {
        throw new Error("alphabet identifier must be a non-empty string");
    }

    const n = doc["n"];
    if (typeof n !== "number" || !Number.isInteger(n) || n < 1) {
        throw new Error("n must be a positive integer");
    }

    const keypad = plainObject(doc["keypad"], "keypad");
    const letters: string[] = [];
    for (const key of KEY_LABELS) {
        const group = keypad[key];
        if (!isStringArray(group)) {
            throw new Error(`keypad key ${key} is missing or not a string array`);
        }
        if (group.length < 3 || group.length > 4) {
            throw new Error(`keypad key ${key} must hold 3 or 4 symbols, got ${group.length}`);
        }
        for (const symbol of group) {
            if (Array.from(symbol).length !== 1) {
                throw new Error(`keypad key ${key} holds multi-character entry "${symbol}"`);
            }
            if (symbol === " " || symbol === "_") {
                throw new Error(`keypad key ${key} uses the reserved symbol "${symbol}"`);
            }
            letters.push(symbol);
        }
    }
    for (const extra of Object.keys(keypad)) {
        if (!(KEY_LABELS as readonly string[]).includes(extra)) {
            throw new Error(`keypad has unexpected key "${extra}"`);
        }
    }
    if (new Set(letters).size !== letters.length) {
        throw new Error("keypad symbols repeat across keys");
    }

    const rows = plainObject(doc["rows"], "rows");
    for (const [context, codes] of Object.entries(rows)) {
        const symbols = Array.from(context);
        if (symbols.length !== n) {
            throw new Error(`row context "${context}" is not ${n} symbols long`);
        }
        for (const symbol of symbols) {
            if (symbol !== "_" && !letters.includes(symbol)) {
                throw new Error(`row context "${context}" uses unknown symbol "${symbol}"`);
            }
        }
        if (!Array.isArray(codes) || codes.length !== KEY_LABELS.length) {
            throw new Error(`row "${context}" must list ${KEY_LABELS.length} codes`);
        }
        KEY_LABELS.forEach((key, i) => {
            const code = codes[i];
            const limit = codeCount((keypad[key] as string[]).length);
            if (typeof code !== "number" || !Number.isInteger(code) || code < 1 || code > limit) {
                throw new Error(`row "${context}" key ${key}: code ${code} out of range 1..${limit}`);
            }
        });
    }

    return {
        alphabet,
        n,
        keypad: keypad as unknown as Record<KeyLabel, string[]>,
        rows: rows as Record<string, number[]>,
    };
}

/** Parse JSON text and validate it as a table document. */
export function parseTable(text: string): TableDocument {
    let raw: unknown;
    try {
        raw = JSON.parse(text);
    } catch (err) {
        throw new Error(`not valid JSON: ${(err as Error).message}`);
    }
    return validateTable(raw);
}

function rowKey(context: string[]): string {
    return context.map((symbol) => (symbol === " " ? "_" : symbol)).join("");
}

/**
 * Ranked symbols for a key given the preceding context (oldest first,
 * spaces allowed).  Contexts without a stored row fall back to the
 * static keypad order.
 */
export function lookup(doc: TableDocument, context: string[], key: KeyLabel): string[] {
    if (context.length !== doc.n) {
        throw new Error(`context must hold ${doc.n} symbols`);
    }
    const group = doc.keypad[key];
    const codes = doc.rows[rowKey(context)];
    if (codes === undefined) {
        return [...group];
    }
    const code = codes[KEY_LABELS.indexOf(key)] as number;
    return decodePermutation(code, group.length).map((position) => group[position - 1] as string);
}

/** Key label owning a symbol. */
export function keyOf(doc: TableDocument, symbol: string): KeyLabel {
    for (const key of KEY_LABELS) {
        if (doc.keypad[key].includes(symbol)) {
            return key;
        }
    }
    throw new Error(`symbol "${symbol}" is not on the keypad`);
}

/** 1-based position of a symbol within its key's static order. */
export function staticPosition(doc: TableDocument, symbol: string): number {
    return doc.keypad[keyOf(doc, symbol)].indexOf(symbol) + 1;
}
