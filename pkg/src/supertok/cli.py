"""``supertok`` command line.

Exit status: 0 on success, 2 for usage/configuration errors, 1 for runtime
failures. ``SUPERTOK_LOG`` sets the log level. Every command that writes
``--out`` also writes ``<out>.config`` with the resolved options in the same
``key = value`` format accepted by ``--config``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from ._io import atomic_write_text
from .ablation import AXES, SweepSpec, run_ablation
from .codec import decode, encode, token_pieces
from .embeddings import EmbeddingMatrix, classify_scan, default_scan_exclusions, glitch_scan, retok_init
from .evaluation import Corpus, CorpusManifest, ManifestError, evaluate, load_corpus, render_report
from .model import TokenizerModel
from .normalization import NormalizationForm
from .pretokenization import PreTokenPattern, SentenceDelimiterSet
from .trainer import TrainerConfig, train
from .vocab_ops import merge_tokenizers, script_distribution

log = logging.getLogger("supertok")


class ConfigError(Exception):
    pass


def _transition(value: str):
    v = float(value)
    if v <= 1.0 and ("." in value or value in ("0", "1")):
        return v
    return int(v)


def _add_training_flags(p):
    p.add_argument("--vocab-size", type=int, required=False)
    p.add_argument("--transition", type=_transition, default=None,
                   help="transition point: token count, or fraction of --vocab-size (e.g. 0.9)")
    p.add_argument("--mode", choices=["twostage", "onestage"], default="twostage")
    p.add_argument("--pattern", choices=[x.value for x in PreTokenPattern], default=None)
    p.add_argument("--norm", choices=[f.value for f in NormalizationForm], default="NFKC")
    p.add_argument("--sentence-delims", default=None, help="comma-separated U+XXXX codepoints")
    p.add_argument("--min-pair-frequency", type=int, default=2)
    p.add_argument("--dummy-tokens", type=int, default=0)
    p.add_argument("--special-token", action="append", default=[])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supertok", description="two-stage subword/superword BPE workbench")
    parser.add_argument("--config", help="key = value file; its values override command-line flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a tokenizer model")
    p.add_argument("--corpus", required=False, help="corpus manifest (JSON) or a plain UTF-8 text file")
    _add_training_flags(p)
    p.add_argument("--out", required=False)

    p = sub.add_parser("encode", help="encode stdin line by line")
    p.add_argument("--model", required=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ids", action="store_true", help="print token ids (default)")
    g.add_argument("--pieces", action="store_true", help="print token strings as JSON lists")

    p = sub.add_parser("decode", help="decode lines of space-separated ids from stdin")
    p.add_argument("--model", required=False)

    p = sub.add_parser("merge", help="stack the rules of several models")
    p.add_argument("--model", action="append", default=[], help="path.json:budget")
    p.add_argument("--out", required=False)

    p = sub.add_parser("vocab-stats", help="per-script vocabulary distribution")
    p.add_argument("--model", required=False)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")

    p = sub.add_parser("eval", help="evaluate models on a language-tagged corpus")
    p.add_argument("--manifest", required=False)
    p.add_argument("--model", action="append", default=[], help="path.json or name=path.json")
    p.add_argument("--base", help="model name or path used as the NSL base")
    p.add_argument("--alpha", type=float, default=2.5)
    p.add_argument("--macro", action="store_true", help="mean of per-line ratios instead of ratio of sums")
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="markdown")
    p.add_argument("--out")

    p = sub.add_parser("retok-init", help="initialize embeddings for a new vocabulary")
    p.add_argument("--old-model", required=False)
    p.add_argument("--old-emb", required=False)
    p.add_argument("--new-model", required=False)
    p.add_argument("--out", required=False)

    p = sub.add_parser("glitch", help="rank tokens near the mean dummy embedding")
    p.add_argument("--emb", required=False)
    p.add_argument("--model", required=False)
    p.add_argument("--dummies", help="comma-separated ids (default: the model's dummy tokens)")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--high-id-threshold", type=int, default=None)
    p.add_argument("--include-dummies", action="store_true")
    p.add_argument("--include-byte-special", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")

    p = sub.add_parser("ablate", help="sweep one training axis and tabulate fertility")
    p.add_argument("--corpus", required=False, help="training corpus manifest or text file")
    p.add_argument("--manifest", required=False, help="evaluation manifest")
    p.add_argument("--axis", choices=AXES, required=False)
    p.add_argument("--values", required=False, help="comma-separated sweep values")
    _add_training_flags(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="markdown")
    p.add_argument("--out")
    return parser


def read_config_file(path) -> dict[str, str]:
    out = {}
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _apply_config(parser, args, argv) -> None:
    if not args.config:
        return
    values = read_config_file(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    explicit = {tok.split("=", 1)[0].lstrip("-").replace("-", "_") for tok in argv if tok.startswith("--")}
    for key, raw in values.items():
        if key in ("command", "config"):
            continue
        action = actions.get(key)
        if action is None:
            raise ConfigError(f"unknown option {key!r} in {args.config} for '{args.command}'")
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            value = raw.lower() in ("1", "true", "yes", "on")
        elif isinstance(action, argparse._AppendAction):
            value = [v.strip() for v in raw.split(",") if v.strip()]
        else:
            value = action.type(raw) if action.type else raw
        if key in explicit and getattr(args, key) != value:
            raise ConfigError(f"--{key.replace('_', '-')} conflicts with {args.config}")
        setattr(args, key, value)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) in (None, [], "")]
    if missing:
        raise ConfigError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _resolved(args) -> str:
    lines = []
    for key, value in sorted(vars(args).items()):
        if key == "config" or value is None:
            continue
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        atomic_write_text(args.out, text)
        atomic_write_text(args.out + ".config", _resolved(args))
    else:
        sys.stdout.write(text)


def _read_training_lines(path) -> list[str]:
    path = Path(path)
    if path.suffix == ".json":
        corpus = load_corpus(CorpusManifest.load(path))
        return [l.text for l in corpus.lines]
    return path.read_text(encoding="utf-8").replace("\r\n", "\n").split("\n")


def _trainer_config(args) -> TrainerConfig:
    _require(args, "vocab_size")
    mode = args.mode
    pattern = args.pattern or ("boundless" if mode == "onestage" else "script_agnostic")
    delims = SentenceDelimiterSet.from_codepoints(args.sentence_delims) if args.sentence_delims else SentenceDelimiterSet()
    try:
        return TrainerConfig(
            vocab_size=args.vocab_size,
            transition_point=args.transition,
            normalization=args.norm,
            pattern=pattern,
            delims=delims,
            mode=mode,
            min_pair_frequency=args.min_pair_frequency,
            reserved_dummy_tokens=args.dummy_tokens,
            special_tokens=tuple(args.special_token),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_train(args):
    _require(args, "corpus", "out")
    config = _trainer_config(args)
    model = train(config, "\n".join(_read_training_lines(args.corpus)))
    _write(args, model.to_json())


def _stdin_lines() -> list[str]:
    lines = sys.stdin.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def cmd_encode(args):
    _require(args, "model")
    model = TokenizerModel.load(args.model)
    for line in _stdin_lines():
        ids = encode(model, line).ids
        if args.pieces:
            sys.stdout.write(json.dumps(token_pieces(model, ids), ensure_ascii=False) + "\n")
        else:
            sys.stdout.write(" ".join(map(str, ids)) + "\n")


def cmd_decode(args):
    _require(args, "model")
    model = TokenizerModel.load(args.model)
    out = sys.stdout.buffer
    for line in _stdin_lines():
        ids = [int(x) for x in line.split()]
        out.write(decode(model, ids) + b"\n")
    out.flush()


def cmd_merge(args):
    _require(args, "model", "out")
    models, budgets = [], []
    for spec in args.model:
        path, sep, budget = spec.rpartition(":")
        if not sep:
            raise ConfigError(f"--model expects path:budget, got {spec!r}")
        models.append(TokenizerModel.load(path))
        budgets.append(int(budget))
    _write(args, merge_tokenizers(models, budgets).to_json())


def cmd_vocab_stats(args):
    _require(args, "model")
    rows = script_distribution(TokenizerModel.load(args.model))
    if args.format == "json":
        text = json.dumps([{"script": s, "count": c, "percentage": round(p, 4)} for s, c, p in rows], indent=1) + "\n"
    else:
        text = "script,count,percentage\n" + "".join(f"{s},{c},{p:.4f}\n" for s, c, p in rows)
    _write(args, text)


def _named_models(specs) -> list[tuple[str, TokenizerModel, str]]:
    out = []
    for spec in specs:
        name, sep, path = spec.partition("=")
        if not sep:
            path, name = spec, Path(spec).stem
        out.append((name, TokenizerModel.load(path), path))
    return out


def cmd_eval(args):
    _require(args, "manifest", "model")
    corpus = load_corpus(CorpusManifest.load(args.manifest))
    named = _named_models(args.model)
    base = None
    if args.base:
        for name, _, path in named:
            if args.base in (name, path):
                base = name
        if base is None:
            raise ConfigError(f"--base {args.base!r} is not one of the --model arguments")
    report = evaluate([(n, m) for n, m, _ in named], corpus, base=base, alpha=args.alpha, micro=not args.macro)
    _write(args, render_report(report, args.format))


def cmd_retok_init(args):
    _require(args, "old_model", "old_emb", "new_model", "out")
    old = TokenizerModel.load(args.old_model)
    new = TokenizerModel.load(args.new_model)
    emb = retok_init(old, EmbeddingMatrix.load(args.old_emb), new)
    emb.save(args.out)
    atomic_write_text(args.out + ".config", _resolved(args))


def cmd_glitch(args):
    _require(args, "emb", "model")
    model = TokenizerModel.load(args.model)
    emb = EmbeddingMatrix.load(args.emb)
    emb.check_bound(model)
    dummies = [int(x) for x in args.dummies.split(",")] if args.dummies else model.dummy_token_ids
    if not dummies:
        raise ConfigError("no dummy ids: pass --dummies or train with --dummy-tokens")
    exclude = [] if args.include_byte_special else default_scan_exclusions(model)
    result = glitch_scan(emb, dummies, args.k, include_dummies=args.include_dummies, exclude_ids=exclude)
    counts = classify_scan(model, result, args.high_id_threshold)
    if args.format == "json":
        text = json.dumps({"results": [{"id": i, "distance": d, "token": model.token_text(i)} for i, d in result],
                           "counts": counts}, ensure_ascii=False, indent=1) + "\n"
    else:
        lines = ["rank,id,distance,multiword,token"]
        from .embeddings import is_multiword

        for r, (i, d) in enumerate(result, 1):
            lines.append(f"{r},{i},{d:.6f},{int(is_multiword(model, i))},{json.dumps(model.token_text(i), ensure_ascii=False)}")
        lines.append(f"# multiword={counts['multiword']} high_id={counts['high_id']}")
        text = "\n".join(lines) + "\n"
    _write(args, text)


def cmd_ablate(args):
    _require(args, "corpus", "manifest", "axis", "values")
    config = _trainer_config(args)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if args.axis == "normalization":
        parsed = values
    elif args.axis == "vocab_size":
        parsed = [int(v) for v in values]
    else:
        parsed = [float(v) / 100 if float(v) > 1 else float(v) for v in values]
    table = run_ablation(_read_training_lines(args.corpus), load_corpus(CorpusManifest.load(args.manifest)),
                         SweepSpec(args.axis, parsed, config), jobs=args.jobs)
    _write(args, table.render(args.format))


COMMANDS = {
    "train": cmd_train,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "merge": cmd_merge,
    "vocab-stats": cmd_vocab_stats,
    "eval": cmd_eval,
    "retok-init": cmd_retok_init,
    "glitch": cmd_glitch,
    "ablate": cmd_ablate,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=os.environ.get("SUPERTOK_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config(parser, args, argv)
        COMMANDS[args.command](args)
    except (ConfigError, ManifestError) as exc:
        print(f"supertok: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - mapped to exit status 1
        log.debug("failure", exc_info=True)
        print(f"supertok: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
