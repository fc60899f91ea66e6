/** Phone keypad grid model: 4 rows of 3 keys, letters under the digits. */

import { KeyLabel, TableDocument } from "./table.js";

export interface KeyCell {
    label: string;
    letters: string;
    action: "letter" | "space" | "next" | "none";
}

export function keypadCells(doc: TableDocument): KeyCell[] {
    const letterCell = (key: KeyLabel): KeyCell => ({
        label: key,
        letters: doc.keypad[key].join(""),
        action: "letter",
    });
    return [
        { label: "1", letters: "", action: "none" },
        letterCell("2"),
        letterCell("3"),
        letterCell("4"),
        letterCell("5"),
        letterCell("6"),
        letterCell("7"),
        letterCell("8"),
        letterCell("9"),
        { label: "*", letters: "", action: "none" },
        { label: "0", letters: "space", action: "space" },
        { label: "#", letters: "next", action: "next" },
    ];
}
