"""Command-line pipeline: train, compile, verify, export, simulate, klm."""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import bbn, compiler, corpus, keypad, klm, simulate

DATA_DIR_ENV = "REDUCEDKEY_DATA_DIR"
PHRASE_FIXTURE = "phrases_el.txt"


def _default_phrase_path() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override) / PHRASE_FIXTURE
    return Path(str(resources.files("reducedkey") / "data" / PHRASE_FIXTURE))


def _load_table(path: Path, layout_name: str | None) -> keypad.ReorderingTable:
    """Load a table file, binary or JSON, sniffed by magic bytes."""
    layout = keypad.builtin_layout(layout_name) if layout_name else None
    data = path.read_bytes()
    if data[:4] == b"IPRT":
        return keypad.read_binary(data, layout)
    return keypad.table_from_json(data.decode("utf-8"), layout)


def _read_phrases(path: Path) -> list[str]:
    lines = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines()]
    phrases = [ln for ln in lines if ln]
    if not phrases:
        raise ValueError(f"no phrases in {path}")
    return phrases


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_train(args: argparse.Namespace) -> int:
    layout = keypad.builtin_layout(args.layout)
    text = "".join(Path(p).read_text(encoding="utf-8") for p in args.corpus)
    stream = corpus.normalize(text, layout.alphabet)
    samples = corpus.extract_samples(stream, layout, args.n)
    if not samples:
        raise ValueError("corpus holds no letters after normalization")
    model = bbn.train_model(samples, layout, args.n, args.xi)
    model.save(args.model)
    if args.dump_samples:
        with open(args.dump_samples, "w", encoding="utf-8", newline="") as fh:
            corpus.write_samples_csv(samples, fh)
    parents = ",".join(model.parents) if model.parents else "(none)"
    print(f"samples: {len(samples)}")
    print(f"xi: {model.xi:g}")
    print(f"state parents: {parents}")
    print(f"in-sample first-guess accuracy: {model.holdout_accuracy(samples):.1%}")
    print(f"model written to {args.model}")
    return 0


def cmd_compile(args: argparse.Namespace) -> int:
    model = bbn.Model.load(args.model)
    layout = model.layout
    table, report = compiler.compile_table(model, layout, model.n)
    blob = keypad.write_binary(table)
    Path(args.table).write_bytes(blob)
    json_path = Path(args.json) if args.json else Path(args.table).with_suffix(".json")
    json_path.write_text(keypad.export_json(table, layout), encoding="utf-8")
    print(f"rows written: {report.rows_written}")
    print(f"rows using fallback: {report.contexts_fallback}")
    print(f"binary table: {args.table} ({len(blob)} bytes)")
    print(f"json table: {json_path}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    table = _load_table(Path(args.table), args.layout)
    report = compiler.verify_table(table, table.layout)
    print(f"rows checked: {report.rows_checked}")
    if report.ok:
        print("ok: no violations")
        return 0
    for violation in report.violations:
        print(f"violation: {violation}", file=sys.stderr)
    print(f"{len(report.violations)} violation(s)", file=sys.stderr)
    return 1


def cmd_export(args: argparse.Namespace) -> int:
    table = _load_table(Path(args.table), args.layout)
    text = keypad.export_json(table, table.layout)
    _emit(text + "\n", Path(args.out) if args.out else None)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    table = _load_table(Path(args.table), args.layout)
    layout = table.layout
    phrases = _read_phrases(Path(args.phrases) if args.phrases else _default_phrase_path())
    result = simulate.evaluate(phrases, table, layout)
    renderer = {
        "text": simulate.render_text,
        "csv": simulate.render_csv,
        "json": simulate.render_json,
    }[args.format]
    _emit(renderer(result), Path(args.out) if args.out else None)
    if args.figure:
        from . import plots

        plots.save_simulation_figure(result, args.figure)
    return 0


def _klm_params(args: argparse.Namespace) -> klm.KlmParams:
    return klm.KlmParams(
        n=args.n_avg,
        t_p=args.t_p,
        t_per=args.t_per,
        p_ck=args.p_ck,
        t_wait=args.t_wait,
        t_ck=args.t_ck,
        p_error1=args.p_error1,
        p_error2=args.p_error2,
    )


def _render_klm_text(result: klm.KlmComparison, reference: dict | None) -> str:
    lines = [
        f"word length X = {result.x:g}",
        f"T_STEM:   {result.t_stem_ms:.1f} ms",
        f"T_iPRETI: {result.t_ipreti_ms:.1f} ms",
        f"time improvement: {result.time_improvement_pct:.2f}%",
        f"keystrokes STEM:   {result.keystrokes_stem:.4f}",
        f"keystrokes iPRETI: {result.keystrokes_ipreti:.4f}",
        f"keystroke improvement: {result.keystroke_improvement_pct:.2f}%",
    ]
    if reference:
        lines.append("")
        lines.append("reference figures for this parameter set (times differ from")
        lines.append("direct evaluation of the formulas; both are shown on purpose):")
        lines.append(f"  T_STEM {reference['t_stem_ms']} ms, "
                     f"T_iPRETI {reference['t_ipreti_ms']} ms, "
                     f"time improvement {reference['time_improvement_pct']}%")
        lines.append(f"  keystrokes {reference['keystrokes_stem']} vs "
                     f"{reference['keystrokes_ipreti']}, "
                     f"improvement {reference['keystroke_improvement_pct']}%")
    return "\n".join(lines) + "\n"


def cmd_klm(args: argparse.Namespace) -> int:
    params = _klm_params(args)
    result = klm.compare(params, args.x)
    reference = (
        dict(klm.REFERENCE_VALUES)
        if params == klm.default_params() and args.x == klm.REFERENCE_X
        else None
    )
    if args.format == "json":
        doc = {
            "x": result.x,
            "computed": {
                "t_stem_ms": result.t_stem_ms,
                "t_ipreti_ms": result.t_ipreti_ms,
                "time_improvement_pct": result.time_improvement_pct,
                "keystrokes_stem": result.keystrokes_stem,
                "keystrokes_ipreti": result.keystrokes_ipreti,
                "keystroke_improvement_pct": result.keystroke_improvement_pct,
            },
            "reference": reference,
        }
        text = json.dumps(doc, indent=1) + "\n"
    elif args.format == "csv":
        rows = ["quantity,computed,reference"]
        ref = reference or {}
        for field in (
            "t_stem_ms", "t_ipreti_ms", "time_improvement_pct",
            "keystrokes_stem", "keystrokes_ipreti", "keystroke_improvement_pct",
        ):
            rows.append(f"{field},{getattr(result, field)},{ref.get(field, '')}")
        text = "\n".join(rows) + "\n"
    else:
        text = _render_klm_text(result, reference)
    _emit(text, Path(args.out) if args.out else None)
    if args.figure:
        from . import plots

        plots.save_klm_figure(params, args.figure, args.x_max)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reducedkey",
        description="Train, compile, and evaluate predictive reduced-keypad text entry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="learn a letter model from text corpora")
    p.add_argument("--layout", default="greek-caps", help="built-in keypad layout name")
    p.add_argument("--corpus", nargs="+", required=True, help="UTF-8 text files")
    p.add_argument("--n", type=int, default=3, help="context length (default 3)")
    p.add_argument("--xi", type=float, default=None, help="prior strength override")
    p.add_argument("--model", required=True, help="output model JSON path")
    p.add_argument("--dump-samples", default=None, help="optional samples CSV path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("compile", help="compile a model into a reordering table")
    p.add_argument("--model", required=True, help="trained model JSON path")
    p.add_argument("--table", required=True, help="output binary table path")
    p.add_argument("--json", default=None,
                   help="output JSON table path (default: table path with .json)")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="validate a table file")
    p.add_argument("--table", required=True, help="table path (binary or JSON)")
    p.add_argument("--layout", default=None, help="layout for non-built-in alphabets")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="convert a table to the JSON exchange format")
    p.add_argument("--table", required=True, help="table path (binary or JSON)")
    p.add_argument("--layout", default=None, help="layout for non-built-in alphabets")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("simulate", help="replay evaluation phrases against a table")
    p.add_argument("--table", required=True, help="table path (binary or JSON)")
    p.add_argument("--layout", default=None, help="layout for non-built-in alphabets")
    p.add_argument("--phrases", default=None,
                   help=f"phrase file, one per line (default: bundled fixture, "
                        f"honoring ${DATA_DIR_ENV})")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="report path (default stdout)")
    p.add_argument("--figure", default=None, help="optional figure output path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("klm", help="analytic keystroke-level timing comparison")
    p.add_argument("--x", type=float, default=6, help="word length (default 6)")
    p.add_argument("--n-avg", type=float, default=2.0229,
                   help="average multi-tap keystrokes per letter")
    p.add_argument("--t-p", type=float, default=165.0, help="key press time, ms")
    p.add_argument("--t-per", type=float, default=500.0, help="perception time, ms")
    p.add_argument("--p-ck", type=float, default=0.89, help="visual check probability")
    p.add_argument("--t-wait", type=float, default=1500.0, help="timeout wait, ms")
    p.add_argument("--t-ck", type=float, default=215.0, help="visual check time, ms")
    p.add_argument("--p-error1", type=float, default=0.045,
                   help="first-guess miss probability")
    p.add_argument("--p-error2", type=float, default=0.002,
                   help="second miss probability")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="report path (default stdout)")
    p.add_argument("--figure", default=None, help="optional figure output path")
    p.add_argument("--x-max", type=int, default=12, help="figure word-length range")
    p.set_defaults(func=cmd_klm)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
