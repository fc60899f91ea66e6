/** DOM wiring: load a table document, render the keypad, run the emulator. */

import { Emulator } from "./engine.js";
import { drawCurves } from "./graph.js";
import { keypadCells } from "./keypad.js";
import { TableDocument, alphabetSymbols, parseTable } from "./table.js";

function byId<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (node === null) {
        throw new Error(`missing #${id}`);
    }
    return node as T;
}

let emulator: Emulator | null = null;

function setStatus(message: string, isError: boolean): void {
    const status = byId<HTMLDivElement>("status");
    status.textContent = message;
    status.className = isError ? "status error" : "status";
}

function render(): void {
    if (emulator === null) {
        return;
    }
    const stats = emulator.stats();
    byId<HTMLDivElement>("screen").textContent = stats.shown + "‸";

    const kspcBase = stats.letters + stats.spaces;
    const fields: Array<[string, string]> = [
        ["stat-ipreti", String(stats.ipretiPresses)],
        ["stat-stem", String(stats.stemEquivalent)],
        ["stat-singles", String(stats.singles)],
        ["stat-doubles", String(stats.doubles)],
        ["stat-letters", String(stats.letters)],
        ["stat-kspc", kspcBase === 0 ? "-" : (stats.ipretiPresses / kspcBase).toFixed(3)],
    ];
    for (const [id, value] of fields) {
        byId<HTMLSpanElement>(id).textContent = value;
    }
    drawCurves(byId<HTMLCanvasElement>("graph"), emulator.curves());
}

function buildKeypad(doc: TableDocument): void {
    const grid = byId<HTMLDivElement>("keypad");
    grid.textContent = "";
    for (const cell of keypadCells(doc)) {
        const button = document.createElement("button");
        button.className = "key";
        button.disabled = cell.action === "none";

        const digit = document.createElement("div");
        digit.className = "digit";
        digit.textContent = cell.label;
        const letters = document.createElement("div");
        letters.className = "letters";
        letters.textContent = cell.letters;
        button.append(digit, letters);

        button.addEventListener("click", () => {
            emulator?.pressKey(cell.label);
            render();
        });
        grid.append(button);
    }
}

function loadDocument(text: string, origin: string): void {
    let doc: TableDocument;
    try {
        doc = parseTable(text);
    } catch (err) {
        setStatus(`could not load ${origin}: ${(err as Error).message}`, true);
        return;
    }
    emulator = new Emulator(doc);
    buildKeypad(doc);
    setStatus(
        `loaded ${origin}: alphabet "${doc.alphabet}" with ${alphabetSymbols(doc).length} ` +
            `letters, ${Object.keys(doc.rows).length} stored contexts, n=${doc.n}`,
        false,
    );
    render();
}

function wireControls(): void {
    const picker = byId<HTMLInputElement>("table-file");
    picker.addEventListener("change", () => {
        const file = picker.files?.[0];
        if (file === undefined) {
            return;
        }
        file.text().then((text) => loadDocument(text, file.name));
    });

    byId<HTMLButtonElement>("backspace").addEventListener("click", () => {
        emulator?.backspace();
        render();
    });
    byId<HTMLButtonElement>("clear").addEventListener("click", () => {
        if (emulator !== null) {
            emulator = new Emulator(emulator.doc);
            render();
        }
    });

    document.addEventListener("keydown", (event) => {
        if (emulator === null) {
            return;
        }
        if (event.key === "Backspace") {
            emulator.backspace();
            render();
            event.preventDefault();
        } else if (/^[0-9#]$/.test(event.key)) {
            emulator.pressKey(event.key);
            render();
        }
    });
}

function boot(): void {
    wireControls();
    const fromQuery = new URLSearchParams(window.location.search).get("table");
    if (fromQuery !== null) {
        fetch(fromQuery)
            .then((response) => {
                if (!response.ok) {
                    throw new Error(`HTTP ${response.status}`);
                }
                return response.text();
            })
            .then((text) => loadDocument(text, fromQuery))
            .catch((err: Error) => setStatus(`could not fetch ${fromQuery}: ${err.message}`, true));
    } else {
        setStatus("choose a reordering table JSON file to start", false);
    }
}

boot();
