"""Ablation sweeps: train one model per sweep point, evaluate all, tabulate."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .evaluation import Corpus, evaluate
from .normalization import NormalizationForm
from .trainer import TrainerConfig, train

log = logging.getLogger(__name__)

AXES = ("transition", "vocab_size", "data_size", "normalization")


@dataclass
class SweepSpec:
    """One swept axis with its values; ``base`` fixes everything else.

    ``transition`` values are fractions of the vocabulary size,
    ``vocab_size`` values are learned-token counts (on top of the
    byte, special and dummy tokens), ``data_size`` values
    are fractions of the training corpus (prefixes), ``normalization``
    values are form names.
    """

    axis: str
    values: list
    base: TrainerConfig

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown sweep axis {self.axis!r}; expected one of {AXES}")
        if not self.values:
            raise ValueError("sweep needs at least one value")


@dataclass
class AblationTable:
    axis: str
    languages: list[str]
    rows: list[dict] = field(default_factory=list)
    metric: str = "fertility"

    def to_dict(self) -> dict:
        return {"axis": self.axis, "metric": self.metric, "languages": self.languages, "rows": self.rows}

    def render(self, fmt: str = "markdown") -> str:
        fmt = fmt.lower()
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=1, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow([self.axis, "vocab_size", *self.languages, "average", "status"])
            for r in self.rows:
                vals = [_cell(r["values"].get(l)) for l in self.languages]
                w.writerow([r["label"], r.get("vocab_size", ""), *vals, _cell(r.get("average")), r["status"]])
            return buf.getvalue()
        if fmt in ("markdown", "md"):
            out = [f"| {self.axis} | " + " | ".join(self.languages) + " | Average |"]
            out.append("|---|" + "---:|" * (len(self.languages) + 1))
            for r in self.rows:
                if r["status"] != "ok":
                    out.append(f"| {r['label']} | " + " | ".join(["failed"] * len(self.languages)) + f" | {r['status']} |")
                    continue
                vals = [_cell(r["values"].get(l)) for l in self.languages]
                out.append(f"| {r['label']} | " + " | ".join(vals) + f" | {_cell(r['average'])} |")
            return "\n".join(out) + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def _cell(v) -> str:
    return "" if v is None else f"{v:.4f}"


def _point_config(spec: SweepSpec, value) -> tuple[str, TrainerConfig, float]:
    base = spec.base
    if spec.axis == "transition":
        frac = float(value)
        return f"{round(frac * 100)}%", replace(base, transition_point=frac), 1.0
    if spec.axis == "vocab_size":
        learned = int(value)
        t = base.transition_point
        if not (isinstance(t, float) and t <= 1.0):
            t = 1.0
        return f"{learned}", replace(base, vocab_size=base.base_size + learned, transition_point=t), 1.0
    if spec.axis == "data_size":
        frac = float(value)
        return f"{round(frac * 100)}%", base, frac
    form = NormalizationForm.parse(value)
    return form.value, replace(base, normalization=form), 1.0


def _train_point(args):
    config, corpus_lines, frac = args
    lines = corpus_lines[: max(1, int(len(corpus_lines) * frac))]
    return train(config, "\n".join(lines))


def run_ablation(train_lines: list[str], eval_corpus: Corpus, spec: SweepSpec, jobs: int = 1) -> AblationTable:
    """Fertility per sweep point and language. A failing point is recorded, not raised."""
    points = []
    for value in spec.values:
        try:
            label, config, frac = _point_config(spec, value)
        except ValueError as exc:
            points.append((str(value), None, None, str(exc)))
            continue
        points.append((label, config, frac, None))

    work = [(cfg, list(train_lines), frac) for _, cfg, frac, err in points if err is None]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_train_point, w) for w in work]
            results = []
            for f in futures:
                try:
                    results.append(f.result())
                except Exception as exc:  # noqa: BLE001 - recorded per point
                    results.append(exc)
    else:
        results = []
        for w in work:
            try:
                results.append(_train_point(w))
            except Exception as exc:  # noqa: BLE001 - recorded per point
                results.append(exc)

    table = AblationTable(spec.axis, eval_corpus.languages)
    it = iter(results)
    for label, config, frac, err in points:
        if err is not None:
            table.rows.append({"label": label, "status": f"error: {err}", "values": {}})
            continue
        model = next(it)
        if isinstance(model, Exception):
            log.warning("sweep point %s failed: %s", label, model)
            table.rows.append({"label": label, "status": f"error: {model}", "values": {}})
            continue
        report = evaluate({label: model}, eval_corpus)
        values = {lang: report.value(lang, label, "fertility") for lang in eval_corpus.languages}
        present = [v for v in values.values() if v is not None]
        table.rows.append(
            {
                "label": label,
                "status": "ok",
                "vocab_size": model.vocab_size,
                "values": values,
                "average": sum(present) / len(present) if present else None,
            }
        )
    return table
