/** Tiny canvas line chart for cumulative keystroke curves. */

import { Curves } from "./engine.js";

const MARGIN = 28;

function polyline(
    ctx: CanvasRenderingContext2D,
    values: number[],
    peak: number,
    width: number,
    height: number,
    color: string,
): void {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    const span = Math.max(values.length - 1, 1);
    values.forEach((value, i) => {
        const x = MARGIN + ((width - 2 * MARGIN) * i) / span;
        const y = height - MARGIN - ((height - 2 * MARGIN) * value) / peak;
        if (i === 0) {
            ctx.moveTo(x, y);
        } else {
            ctx.lineTo(x, y);
        }
    });
    ctx.stroke();
}

export function drawCurves(canvas: HTMLCanvasElement, curves: Curves): void {
    const ctx = canvas.getContext("2d");
    if (ctx === null) {
        return;
    }
    const { width, height } = canvas;
    ctx.clearRect(0, 0, width, height);

    ctx.strokeStyle = "#888";
    ctx.lineWidth = 1;
    ctx.strokeRect(MARGIN, MARGIN, width - 2 * MARGIN, height - 2 * MARGIN);

    ctx.fillStyle = "#444";
    ctx.font = "11px sans-serif";
    ctx.fillText("cumulative presses per committed symbol", MARGIN, MARGIN - 8);

    if (curves.ipreti.length === 0) {
        ctx.fillText("(nothing typed yet)", MARGIN + 8, height / 2);
        return;
    }

    const peak = Math.max(...curves.stem, ...curves.ipreti, 1);
    polyline(ctx, curves.stem, peak, width, height, "#b03a2b");
    polyline(ctx, curves.ipreti, peak, width, height, "#2b6cb0");

    ctx.fillStyle = "#2b6cb0";
    ctx.fillText("predictive", width - MARGIN - 110, MARGIN + 14);
    ctx.fillStyle = "#b03a2b";
    ctx.fillText("multi-tap", width - MARGIN - 110, MARGIN + 28);
}
