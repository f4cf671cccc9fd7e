"""Command-line front end.

Every command that writes files also writes a run manifest (JSON) next to
its main output, recording the argument vector, the resolved configuration
and digests of the inputs.  ``tangseg replay MANIFEST`` re-runs it.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import io
import json
import os
import sys

from . import __version__
from .corpus import (
    TEST_POETS,
    CorpusError,
    filter_by_author,
    format_pattern_stats,
    parse_corpus,
    parse_gold,
    pattern_stats,
    report_diagnostics,
    write_corpus,
    write_gold,
)
from .counting import WeightConfig, count_corpus, parse_priors
from .evaluate import (
    align,
    dump_report,
    eval_corpus,
    filter_conforming,
    load_report,
    render_grid,
    render_text,
    render_tsv,
    report_row,
)
from .pmi import SmoothingConfig, load_model, save_model, train
from .segmenter import (
    MODES,
    SegmenterConfig,
    decision_rows,
    predicted_poem,
    segment_poem,
)
from .synth import SynthConfig, synthesize

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_IO = 0, 1, 2

STRATEGY_LABELS = {
    "completely_random": "completely random",
    "pattern_random": "4 patterns, but random",
    "pmi": "4 patterns + PMI",
    "pmi_parallel": "4 patterns + PMI + parallelism",
}


class CommandError(Exception):
    def __init__(self, message, code=EXIT_DIAGNOSTICS):
        super().__init__(message)
        self.code = code


# -- helpers ------------------------------------------------------------------


def _read_bytes(path):
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise CommandError(f"cannot read {path}: {e.strerror}", EXIT_IO) from e


def _digest(path):
    return hashlib.sha256(_read_bytes(path)).hexdigest()


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise CommandError(f"cannot write {path}: {e.strerror}", EXIT_IO) from e


def _load_config(args):
    if not getattr(args, "config", None):
        return {}
    try:
        return json.loads(_read_bytes(args.config).decode("utf-8"))
    except ValueError as e:
        raise CommandError(f"bad config file {args.config}: {e}", EXIT_IO) from e


def _resolve(args, config, name, default):
    """Command-line flag, else config-file entry, else built-in default."""
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


def _write_manifest(args, argv, config, inputs, outputs, path=None):
    path = args.manifest or path or (outputs[0] + ".manifest.json" if outputs else None)
    if path is None:
        return
    manifest = {
        "command": args.command,
        "argv": list(argv),
        "config": config,
        "inputs": {p: _digest(p) for p in inputs},
        "outputs": list(outputs),
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    _write_text(path, json.dumps(manifest, ensure_ascii=False, indent=1, sort_keys=True) + "\n")


def _parse_couplets(text):
    pairs = []
    for item in text.split(","):
        i, _, j = item.partition("-")
        pairs.append((int(i), int(j)))
    return tuple(pairs)


def _gold_file(path, octave=False):
    try:
        gold, diags = parse_gold(_read_bytes(path), octave=octave)
    except CorpusError as e:
        raise CommandError(f"{path}: {e}") from e
    report_diagnostics(diags)
    return gold, diags


# -- commands -----------------------------------------------------------------


def cmd_validate(args, argv):
    data = _read_bytes(args.path)
    try:
        if args.gold:
            records, diags = parse_gold(data, octave=args.octave)
            poems = [g.poem for g in records]
        else:
            poems, diags = parse_corpus(data, octave=args.octave)
    except CorpusError as e:
        raise CommandError(f"{args.path}: {e}") from e
    report_diagnostics(diags)
    lines = sum(len(p.lines) for p in poems)
    print(f"{len(poems)} poems, {lines} lines, {len(diags)} diagnostics")
    _write_manifest(args, argv, {"gold": args.gold, "octave": args.octave}, [args.path], [])
    return EXIT_DIAGNOSTICS if diags else EXIT_OK


def cmd_train(args, argv):
    conf = _load_config(args)
    weights = parse_priors(str(_resolve(args, conf, "priors", "uniform")))
    weights = WeightConfig(weights.priors_5, weights.priors_7,
                           float(_resolve(args, conf, "epsilon", 0.0)))
    smoothing = SmoothingConfig(float(_resolve(args, conf, "alpha", 1.0)),
                                _resolve(args, conf, "unigram_source", "raw_char"))
    excluded = _resolve(args, conf, "exclude_authors", "")
    excluded = [a for a in (excluded.split(",") if isinstance(excluded, str) else excluded) if a]
    if _resolve(args, conf, "exclude_test_poets", False):
        excluded += [a for a in TEST_POETS if a not in excluded]

    try:
        poems, diags = parse_corpus(_read_bytes(args.corpus))
    except CorpusError as e:
        raise CommandError(f"{args.corpus}: {e}") from e
    report_diagnostics(diags)
    kept = filter_by_author(poems, excluded)
    if not kept:
        raise CommandError("no poems left to train on after author exclusion")
    model = train(count_corpus(kept, weights), smoothing)

    buf = io.StringIO()
    save_model(model, buf)
    _write_text(args.out, buf.getvalue())
    config = {"weights": weights.to_dict(), "smoothing": smoothing.to_dict(),
              "excluded_authors": excluded, "poems_used": len(kept),
              "poems_excluded": len(poems) - len(kept)}
    _write_manifest(args, argv, config, [args.corpus], [args.out])
    print(f"trained on {len(kept)} poems ({len(poems) - len(kept)} excluded by author)")
    return EXIT_DIAGNOSTICS if diags else EXIT_OK


def cmd_segment(args, argv):
    conf = _load_config(args)
    couplets = _resolve(args, conf, "couplets", "3-4,5-6")
    if isinstance(couplets, str):
        couplets = _parse_couplets(couplets)
    seg_config = SegmenterConfig(
        mode=_resolve(args, conf, "mode", "pmi"),
        rng_seed=int(_resolve(args, conf, "seed", 0)),
        parallel_couplets=couplets,
    )
    model = None
    inputs = [args.corpus]
    if seg_config.mode in ("pmi", "pmi_parallel"):
        if not args.model:
            raise CommandError(f"mode {seg_config.mode} requires --model", EXIT_IO)
        model = load_model(_read_bytes(args.model).decode("utf-8").split("\n"))
        inputs.append(args.model)

    gold, diags = _gold_file(args.corpus)
    diags = list(diags)
    predictions, rows = [], []
    for g in gold:
        try:
            decisions = segment_poem(model, g.poem, seg_config)
        except ValueError as e:
            # non-octave poem in parallel mode: fall back to per-line decisions
            diags.append(e)
            sys.stderr.write(f"{g.poem.id}\t{e}\n")
            decisions = segment_poem(model, g.poem, SegmenterConfig("pmi", seg_config.rng_seed))
        predictions.append(predicted_poem(g.poem, decisions))
        rows.extend(decision_rows(g.poem, decisions))

    buf = io.StringIO()
    write_gold(predictions, buf)
    _write_text(args.out, buf.getvalue())
    outputs = [args.out]
    if args.tsv:
        _write_text(args.tsv, "".join(r + "\n" for r in rows))
        outputs.append(args.tsv)
    _write_manifest(args, argv, {"segmenter": seg_config.to_dict()}, inputs, outputs)
    print(f"segmented {len(predictions)} poems with mode {seg_config.mode}")
    return EXIT_DIAGNOSTICS if diags else EXIT_OK


def _strategy_label(pred_path):
    try:
        with open(pred_path + ".manifest.json", encoding="utf-8") as f:
            mode = json.load(f)["config"]["segmenter"]["mode"]
        return STRATEGY_LABELS[mode]
    except (OSError, KeyError, ValueError):
        return os.path.basename(pred_path)


def cmd_eval(args, argv):
    gold, gdiags = _gold_file(args.gold)
    pred, pdiags = _gold_file(args.pred)
    if args.conforming_only:
        gold = filter_conforming(gold)
    try:
        report = eval_corpus(align(pred, gold))
    except ValueError as e:
        raise CommandError(str(e)) from e
    strategy = args.strategy or _strategy_label(args.pred)
    dataset = args.dataset or f"{report.poem_count} poems"
    sys.stdout.write(render_text(strategy, dataset, report))
    outputs = []
    if args.out:
        _write_text(args.out + ".tsv", render_tsv([report_row(strategy, dataset, report)]))
        _write_text(args.out + ".report.json", dump_report(strategy, dataset, report))
        outputs = [args.out + ".report.json", args.out + ".tsv"]
    config = {"conforming_only": args.conforming_only, "strategy": strategy, "dataset": dataset}
    _write_manifest(args, argv, config, [args.pred, args.gold], outputs,
                    path=args.out + ".manifest.json" if args.out else None)
    return EXIT_DIAGNOSTICS if gdiags or pdiags else EXIT_OK


def cmd_stats(args, argv):
    gold, diags = _gold_file(args.gold)
    text = format_pattern_stats(pattern_stats(gold))
    sys.stdout.write(text)
    if args.out:
        _write_text(args.out, text)
    _write_manifest(args, argv, {}, [args.gold], [args.out] if args.out else [])
    return EXIT_DIAGNOSTICS if diags else EXIT_OK


def cmd_synth(args, argv):
    config = SynthConfig(
        poems_5=args.poems_5, poems_7=args.poems_7, mix=args.pattern_mix, seed=args.seed,
        alphabet_size=args.alphabet_size, lexicon_size=args.lexicon_size,
        lexicon_seed=args.lexicon_seed, parallel=args.parallel, authors=args.authors,
        author_prefix=args.author_prefix, id_prefix=args.id_prefix,
    )
    try:
        gold = synthesize(config)
    except ValueError as e:
        raise CommandError(str(e), EXIT_IO) from e
    buf = io.StringIO()
    if args.unsegmented:
        write_corpus([g.poem for g in gold], buf)
    else:
        write_gold(gold, buf)
    _write_text(args.out, buf.getvalue())
    _write_manifest(args, argv, {"synth": config.to_dict(), "unsegmented": args.unsegmented},
                    [], [args.out])
    print(f"wrote {len(gold)} poems, {8 * len(gold)} lines")
    return EXIT_OK


def cmd_report(args, argv):
    entries = []
    for path in args.reports:
        try:
            entries.append(load_report(_read_bytes(path).decode("utf-8")))
        except (ValueError, KeyError) as e:
            raise CommandError(f"bad report file {path}: {e}") from e
    text = render_grid(entries)
    sys.stdout.write(text)
    if args.out:
        _write_text(args.out, text)
    _write_manifest(args, argv, {}, list(args.reports), [args.out] if args.out else [])
    return EXIT_OK


def cmd_replay(args, argv):
    try:
        manifest = json.loads(_read_bytes(args.manifest_path).decode("utf-8"))
        stored_argv, inputs = manifest["argv"], manifest["inputs"]
    except (ValueError, KeyError) as e:
        raise CommandError(f"bad manifest {args.manifest_path}: {e}", EXIT_IO) from e
    for path, digest in inputs.items():
        if _digest(path) != digest:
            raise CommandError(f"input {path} changed since the manifest was written")
    return main(stored_argv)


# -- argument parsing -----------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="tangseg", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        if name != "replay":
            p.add_argument("--manifest", help="where to write the run manifest")
        return p

    p = command("validate", cmd_validate, "check a corpus or gold file")
    p.add_argument("path")
    p.add_argument("--gold", action="store_true", help="file holds space-separated words")
    p.add_argument("--octave", action="store_true", help="require eight lines per poem")

    p = command("train", cmd_train, "count a corpus and write a PMI model")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--config")
    p.add_argument("--exclude-authors", dest="exclude_authors", help="comma-separated names")
    p.add_argument("--exclude-test-poets", dest="exclude_test_poets", action="store_true",
                   default=None, help="exclude the seven poets of the gold test set")
    p.add_argument("--priors", help="uniform, table1, or four comma-separated weights")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--unigram-source", dest="unigram_source",
                   choices=("raw_char", "weighted_unigram"))

    p = command("segment", cmd_segment, "segment poems")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--model")
    p.add_argument("--config")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--seed", type=int)
    p.add_argument("--couplets", help="parallel line pairs, e.g. 3-4,5-6")
    p.add_argument("--tsv", help="also write per-line decisions here")

    p = command("eval", cmd_eval, "score predictions against gold")
    p.add_argument("pred")
    p.add_argument("gold")
    p.add_argument("--conforming-only", dest="conforming_only", action="store_true")
    p.add_argument("--strategy")
    p.add_argument("--dataset")
    p.add_argument("--out", help="prefix for .tsv and .report.json files")

    p = command("stats", cmd_stats, "pattern frequency table of a gold file")
    p.add_argument("gold")
    p.add_argument("--out")

    p = command("synth", cmd_synth, "generate a synthetic gold corpus")
    p.add_argument("--poems-5", dest="poems_5", type=int, default=0)
    p.add_argument("--poems-7", dest="poems_7", type=int, default=0)
    p.add_argument("--pattern-mix", dest="pattern_mix", default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet-size", dest="alphabet_size", type=int, default=3000)
    p.add_argument("--lexicon-size", dest="lexicon_size", type=int, default=0)
    p.add_argument("--lexicon-seed", dest="lexicon_seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true", help="couplets 3-4 and 5-6 share a pattern")
    p.add_argument("--authors", type=int, default=1)
    p.add_argument("--author-prefix", dest="author_prefix", default="synth")
    p.add_argument("--id-prefix", dest="id_prefix", default="p")
    p.add_argument("--unsegmented", action="store_true", help="write a training corpus")
    p.add_argument("--out", required=True)

    p = command("report", cmd_report, "join eval .json outputs into one grid")
    p.add_argument("reports", nargs="+")
    p.add_argument("--out")

    p = command("replay", cmd_replay, "re-run the command recorded in a manifest")
    p.add_argument("manifest_path")
    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except CommandError as e:
        sys.stderr.write(f"tangseg {args.command}: {e}\n")
        return e.code
    except ValueError as e:
        sys.stderr.write(f"tangseg {args.command}: {e}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
