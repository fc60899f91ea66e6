/**
 * Text entry state machine.
 *
 * A letter is composed by pressing its key once (the table's first guess
 * appears) and cycling with "#" until the wanted symbol shows.  Any other
 * key press commits the shown symbol first.  "0" commits a space.  The
 * committed history is a stack of snapshots, so backspace is an exact
 * rewind of text, context and counters.
 */

import { KeyLabel, KEY_LABELS, TableDocument, lookup, staticPosition } from "./table.js";

interface Snapshot {
    composed: string;
    ipretiPresses: number;
    stemEquivalent: number;
    singles: number;
    doubles: number;
}

interface Pending {
    key: KeyLabel;
    ranked: string[];
    depth: number;
}

export interface Stats {
    composed: string;
    shown: string;
    pendingSymbol: string | null;
    ipretiPresses: number;
    stemEquivalent: number;
    singles: number;
    doubles: number;
    letters: number;
    spaces: number;
}

export interface Curves {
    ipreti: number[];
    stem: number[];
}

function cycleSingles(depth: number): number {
    return depth === 1 ? 1 : 0;
}

function cycleDoubles(depth: number): number {
    return depth >= 2 ? depth - 1 : 0;
}

export class Emulator {
    readonly doc: TableDocument;
    private snapshots: Snapshot[];
    private pending: Pending | null;

    constructor(doc: TableDocument) {
        this.doc = doc;
        this.snapshots = [
            { composed: "", ipretiPresses: 0, stemEquivalent: 0, singles: 0, doubles: 0 },
        ];
        this.pending = null;
    }

    private top(): Snapshot {
        return this.snapshots[this.snapshots.length - 1] as Snapshot;
    }

    /** Last n committed symbols, oldest first, padded with leading spaces. */
    private context(): string[] {
        const chars = Array.from(this.top().composed);
        const context: string[] = [];
        for (let back = this.doc.n; back >= 1; back--) {
            context.push(chars[chars.length - back] ?? " ");
        }
        return context;
    }

    private pendingSymbol(): string | null {
        if (this.pending === null) {
            return null;
        }
        const { ranked, depth } = this.pending;
        return ranked[depth % ranked.length] as string;
    }

    private commitPending(): void {
        if (this.pending === null) {
            return;
        }
        const symbol = this.pendingSymbol() as string;
        const { depth } = this.pending;
        const top = this.top();
        this.snapshots.push({
            composed: top.composed + symbol,
            ipretiPresses: top.ipretiPresses + 1 + depth,
            stemEquivalent: top.stemEquivalent + staticPosition(this.doc, symbol),
            singles: top.singles + cycleSingles(depth),
            doubles: top.doubles + cycleDoubles(depth),
        });
        this.pending = null;
    }

    private commitSpace(): void {
        const top = this.top();
        this.snapshots.push({
            composed: top.composed + " ",
            ipretiPresses: top.ipretiPresses + 1,
            stemEquivalent: top.stemEquivalent + 1,
            singles: top.singles,
            doubles: top.doubles,
        });
    }

    /** Handle one keypad press: "2".."9", "0" or "#".  Others are inert. */
    pressKey(key: string): void {
        if (key === "#") {
            if (this.pending !== null) {
                this.pending.depth += 1;
            }
            return;
        }
        if (key === "0") {
            this.commitPending();
            this.commitSpace();
            return;
        }
        if ((KEY_LABELS as readonly string[]).includes(key)) {
            this.commitPending();
            const label = key as KeyLabel;
            this.pending = {
                key: label,
                ranked: lookup(this.doc, this.context(), label),
                depth: 0,
            };
        }
    }

    /** Drop the uncommitted letter if any, else remove the last symbol. */
    backspace(): void {
        if (this.pending !== null) {
            this.pending = null;
            return;
        }
        if (this.snapshots.length > 1) {
            this.snapshots.pop();
        }
    }

    /** Feed a whole key sequence, e.g. "43#305#...". */
    type(keys: string): void {
        for (const key of keys) {
            this.pressKey(key);
        }
    }

    stats(): Stats {
        const top = this.top();
        const pendingSymbol = this.pendingSymbol();
        const depth = this.pending?.depth ?? 0;
        const pendingPresses = this.pending === null ? 0 : 1 + depth;
        const chars = Array.from(top.composed);
        const spaces = chars.filter((c) => c === " ").length;
        return {
            composed: top.composed,
            shown: top.composed + (pendingSymbol ?? ""),
            pendingSymbol,
            ipretiPresses: top.ipretiPresses + pendingPresses,
            stemEquivalent: top.stemEquivalent,
            singles: top.singles + (this.pending === null ? 0 : cycleSingles(depth)),
            doubles: top.doubles + (this.pending === null ? 0 : cycleDoubles(depth)),
            letters: chars.length - spaces,
            spaces,
        };
    }

    /** Cumulative press counts per committed symbol, for plotting. */
    curves(): Curves {
        const ipreti: number[] = [];
        const stem: number[] = [];
        for (const snapshot of this.snapshots.slice(1)) {
            ipreti.push(snapshot.ipretiPresses);
            stem.push(snapshot.stemEquivalent);
        }
        return { ipreti, stem };
    }
}
