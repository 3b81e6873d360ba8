"""Language-tagged evaluation corpora and the model x language metric grid."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from . import metrics
from .codec import encode
from .metrics import LineStats, MetricError, TokenHistogram
from .model import TokenizerModel
from .normalization import InvalidUTF8Error, NormalizationForm, decode_utf8, normalize

log = logging.getLogger(__name__)

REPORT_METRICS = ("fertility", "nsl", "bytes_per_token")


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    lang: str
    path: Path
    max_lines: int | None = None


@dataclass
class CorpusManifest:
    entries: list[ManifestEntry]

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if e.lang in seen:
                raise ManifestError(f"duplicate language code {e.lang!r} in manifest")
            seen.add(e.lang)

    @classmethod
    def from_list(cls, items: list[dict], root: Path | None = None) -> "CorpusManifest":
        entries = []
        for item in items:
            try:
                path = Path(item["path"])
                lang = item["lang"]
            except (KeyError, TypeError):
                raise ManifestError(f"manifest entry needs 'lang' and 'path': {item!r}") from None
            if root is not None and not path.is_absolute():
                path = root / path
            entries.append(ManifestEntry(lang, path, item.get("max_lines")))
        return cls(entries)

    @classmethod
    def load(cls, path) -> "CorpusManifest":
        path = Path(path)
        try:
            items = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ManifestError(f"cannot read manifest {path}: {exc}") from None
        if not isinstance(items, list):
            raise ManifestError("manifest must be a JSON list of {lang, path, max_lines}")
        return cls.from_list(items, root=path.parent)


@dataclass(frozen=True)
class EvalLine:
    lang: str
    text: str


@dataclass
class LanguageStats:
    size_bytes: int
    lines: int
    words: int
    skipped_lines: int = 0

    @property
    def size_mb(self) -> float:
        return self.size_bytes / 1e6

    @property
    def avg_words_per_line(self) -> float:
        return self.words / self.lines if self.lines else 0.0


@dataclass
class Corpus:
    lines: list[EvalLine]
    stats: dict[str, LanguageStats] = field(default_factory=dict)

    @property
    def languages(self) -> list[str]:
        return sorted(self.stats)

    def lines_for(self, lang: str) -> list[str]:
        return [l.text for l in self.lines if l.lang == lang]

    @classmethod
    def from_texts(cls, texts: Mapping[str, str], normalization=NormalizationForm.IDENTITY) -> "Corpus":
        lines, stats = [], {}
        for lang, text in texts.items():
            kept, skipped = _split_lines(text, normalization)
            lines += [EvalLine(lang, t) for t in kept]
            stats[lang] = _language_stats(kept, skipped)
        return cls(lines, stats)

    def prefix(self, fraction: float) -> "Corpus":
        """First ``fraction`` of each language's lines."""
        out = {}
        for lang in self.languages:
            ls = self.lines_for(lang)
            out[lang] = "\n".join(ls[: max(1, int(len(ls) * fraction))])
        return Corpus.from_texts(out)


def _split_lines(text: str, normalization) -> tuple[list[str], int]:
    text = text.replace("\r\n", "\n")
    kept, skipped = [], 0
    raw = text.split("\n")
    if raw and raw[-1] == "":
        raw.pop()  # the final line terminator, not a line
    for line in raw:
        line = normalize(line, normalization)
        if line.strip():
            kept.append(line)
        else:
            skipped += 1
    return kept, skipped


def _language_stats(lines: list[str], skipped: int) -> LanguageStats:
    return LanguageStats(
        size_bytes=sum(len(l.encode("utf-8")) for l in lines),
        lines=len(lines),
        words=sum(metrics.count_words(l) for l in lines),
        skipped_lines=skipped,
    )


def load_corpus(manifest: CorpusManifest, normalization=NormalizationForm.IDENTITY, strict: bool = True) -> Corpus:
    """One :class:`EvalLine` per non-blank line; blank lines are tallied as skipped."""
    lines, stats = [], {}
    for entry in manifest.entries:
        try:
            data = entry.path.read_bytes()
        except OSError as exc:
            raise ManifestError(f"cannot read {entry.path}: {exc}") from None
        try:
            text = decode_utf8(data) if strict else data.decode("utf-8", "replace")
        except InvalidUTF8Error as exc:
            raise ManifestError(f"{entry.path}: {exc}") from None
        kept, skipped = _split_lines(text, normalization)
        if entry.max_lines is not None:
            kept = kept[: entry.max_lines]
        lines += [EvalLine(entry.lang, t) for t in kept]
        stats[entry.lang] = _language_stats(kept, skipped)
    return Corpus(lines, stats)


@dataclass
class MetricsReport:
    models: list[str]
    languages: list[str]
    base: str | None
    alpha: float
    micro: bool
    cells: dict[tuple[str, str], dict]
    model_metrics: dict[str, dict]
    corpus_stats: dict[str, dict]
    skipped: dict[tuple[str, str], str] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def value(self, lang: str, model: str, metric: str) -> float | None:
        return self.cells.get((lang, model), {}).get(metric)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "models": self.models,
            "languages": self.languages,
            "base": self.base,
            "alpha": self.alpha,
            "micro": self.micro,
            "corpus_stats": self.corpus_stats,
            "model_metrics": self.model_metrics,
            "cells": [
                {"language": lang, "model": model, **values}
                for (lang, model), values in sorted(self.cells.items())
            ],
            "skipped": [
                {"language": lang, "model": model, "reason": reason}
                for (lang, model), reason in sorted(self.skipped.items())
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        cells = {}
        for row in data["cells"]:
            row = dict(row)
            key = (row.pop("language"), row.pop("model"))
            cells[key] = row
        return cls(
            models=list(data["models"]),
            languages=list(data["languages"]),
            base=data["base"],
            alpha=data["alpha"],
            micro=data["micro"],
            cells=cells,
            model_metrics=data["model_metrics"],
            corpus_stats=data["corpus_stats"],
            skipped={(r["language"], r["model"]): r["reason"] for r in data["skipped"]},
            config=data.get("config", {}),
        )


def line_stats(model: TokenizerModel, lines: Sequence[str], hist: TokenHistogram | None = None):
    """Per-line statistics; a line the model cannot encode yields ``None``."""
    out: list[LineStats | None] = []
    for line in lines:
        try:
            ids = encode(model, line).ids
        except ValueError as exc:
            log.warning("line skipped: %s", exc)
            out.append(None)
            continue
        if hist is not None:
            hist.update(ids)
        words = metrics.count_words(normalize(line, model.normalization))
        out.append(LineStats(len(ids), words, len(line.encode("utf-8"))))
    return out


def _named(models) -> list[tuple[str, TokenizerModel]]:
    if isinstance(models, Mapping):
        items = list(models.items())
    else:
        items = list(models)
    if not items:
        raise ValueError("no models to evaluate")
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise ValueError("model names must be unique")
    return items


def evaluate(
    models,
    corpus: Corpus,
    base: str | None = None,
    alpha: float = metrics.DEFAULT_ALPHA,
    micro: bool = True,
) -> MetricsReport:
    """Compute fertility, NSL and bytes per token per (language, model) plus
    corpus-level Rényi entropy/efficiency per model.

    ``models`` is a mapping or list of ``(name, model)``; ``base`` names the
    NSL reference (``None`` skips NSL).
    """
    items = _named(models)
    names = [n for n, _ in items]
    if base is not None and base not in names:
        raise ValueError(f"base model {base!r} is not among the evaluated models")
    langs = corpus.languages

    per_line: dict[tuple[str, str], list] = {}
    model_metrics = {}
    for name, model in items:
        hist = TokenHistogram()
        for lang in langs:
            per_line[(lang, name)] = line_stats(model, corpus.lines_for(lang), hist)
        entry = {"vocab_size": model.vocab_size}
        try:
            entry["renyi_entropy"] = metrics.renyi_entropy(hist, alpha)
            entry["renyi_efficiency"] = metrics.renyi_efficiency(hist, alpha, model.vocab_size)
        except MetricError as exc:
            entry["skipped"] = str(exc)
        model_metrics[name] = entry

    cells, skipped = {}, {}
    for lang in langs:
        for name in names:
            stats = per_line[(lang, name)]
            good = [s for s in stats if s is not None]
            n_bad = len(stats) - len(good)
            if not good:
                skipped[(lang, name)] = "no encodable lines"
                continue
            cell = {
                "tokens": sum(s.token_count for s in good),
                "words": sum(s.word_count for s in good),
                "bytes": sum(s.byte_count for s in good),
                "lines": len(good),
                "skipped_lines": n_bad,
            }
            try:
                cell["fertility"] = metrics.fertility(good, micro=micro)
            except MetricError as exc:
                skipped[(lang, name)] = str(exc)
                continue
            cell["bytes_per_token"] = metrics.bytes_per_token(good)
            if base is not None:
                base_stats = per_line[(lang, base)]
                pairs = [(m, b) for m, b in zip(stats, base_stats) if m is not None and b is not None]
                try:
                    cell["nsl"] = metrics.nsl([m for m, _ in pairs], [b for _, b in pairs])
                except MetricError as exc:
                    cell["nsl_skipped"] = str(exc)
            if n_bad:
                skipped[(lang, name)] = f"{n_bad} line(s) could not be encoded"
            cells[(lang, name)] = cell

    corpus_stats = {
        lang: {
            "size_bytes": s.size_bytes,
            "size_mb": s.size_mb,
            "lines": s.lines,
            "avg_words_per_line": s.avg_words_per_line,
            "skipped_lines": s.skipped_lines,
        }
        for lang, s in sorted(corpus.stats.items())
    }
    return MetricsReport(
        models=names,
        languages=langs,
        base=base,
        alpha=alpha,
        micro=micro,
        cells=cells,
        model_metrics=model_metrics,
        corpus_stats=corpus_stats,
        skipped=skipped,
        config={"base": base, "alpha": alpha, "micro": micro, "models": names},
    )


# -- rendering -------------------------------------------------------------


def _fmt(v) -> str:
    return "" if v is None else f"{v:.4f}"


def _render_csv(report: MetricsReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["language", "model", "metric", "value"])
    for lang in report.languages:
        for model in report.models:
            for metric in REPORT_METRICS:
                v = report.value(lang, model, metric)
                if v is not None:
                    w.writerow([lang, model, metric, _fmt(v)])
    for model in report.models:
        for metric in ("renyi_entropy", "renyi_efficiency"):
            v = report.model_metrics.get(model, {}).get(metric)
            if v is not None:
                w.writerow(["all", model, metric, _fmt(v)])
    return buf.getvalue()


_LOWER_IS_BETTER = {"fertility": True, "nsl": True, "bytes_per_token": False}


def _render_markdown(report: MetricsReport, bold_best: bool = True) -> str:
    out = []
    langs = report.languages
    for metric in REPORT_METRICS:
        if metric == "nsl" and report.base is None:
            continue
        arrow = "↓" if _LOWER_IS_BETTER[metric] else "↑"
        out.append(f"### {metric} ({arrow})\n")
        out.append("| Tokenizer | " + " | ".join(langs) + " |")
        out.append("|---|" + "---:|" * len(langs))
        best = {}
        for lang in langs:
            vals = [report.value(lang, m, metric) for m in report.models]
            vals = [round(v, 4) for v in vals if v is not None]
            if vals:
                best[lang] = min(vals) if _LOWER_IS_BETTER[metric] else max(vals)
        for model in report.models:
            row = []
            for lang in langs:
                v = report.value(lang, model, metric)
                s = _fmt(v) if v is not None else "skipped"
                if bold_best and v is not None and len(report.models) > 1 and round(v, 4) == best.get(lang):
                    s = f"**{s}**"
                row.append(s)
            out.append(f"| {model} | " + " | ".join(row) + " |")
        out.append("")
    out.append(f"### Rényi entropy and efficiency (alpha={report.alpha})\n")
    out.append("| | " + " | ".join(report.models) + " |")
    out.append("|---|" + "---:|" * len(report.models))
    for metric, label in (("renyi_entropy", "Entropy"), ("renyi_efficiency", "Efficiency")):
        vals = [_fmt(report.model_metrics.get(m, {}).get(metric)) for m in report.models]
        out.append(f"| {label} | " + " | ".join(vals) + " |")
    out.append("")
    out.append("### Corpus\n")
    out.append("| | " + " | ".join(langs) + " |")
    out.append("|---|" + "---:|" * len(langs))
    cs = report.corpus_stats
    out.append("| Size (MB) | " + " | ".join(f"{cs[l]['size_mb']:.4f}" for l in langs) + " |")
    out.append("| # Lines | " + " | ".join(str(cs[l]["lines"]) for l in langs) + " |")
    out.append("| Avg W/Line | " + " | ".join(f"{cs[l]['avg_words_per_line']:.2f}" for l in langs) + " |")
    if report.skipped:
        out.append("")
        out.append("Skipped cells:")
        for (lang, model), reason in sorted(report.skipped.items()):
            out.append(f"- {lang} / {model}: {reason}")
    return "\n".join(out) + "\n"


def render_report(report: MetricsReport, fmt: str = "markdown") -> str:
    fmt = fmt.lower()
    if fmt == "csv":
        return _render_csv(report)
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=1, ensure_ascii=False) + "\n"
    if fmt in ("markdown", "md"):
        return _render_markdown(report)
    raise ValueError(f"unknown report format {fmt!r} (expected csv, json or markdown)")


def parse_report(text: str) -> MetricsReport:
    return MetricsReport.from_dict(json.loads(text))


def write_report(report: MetricsReport, fmt: str, path) -> None:
    from ._io import atomic_write_text

    atomic_write_text(path, render_report(report, fmt))
