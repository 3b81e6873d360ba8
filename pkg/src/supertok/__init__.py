"""Byte-level BPE with a subword stage followed by a superword stage.

The first stage learns merges inside pre-tokens; the second lifts the
whitespace restriction and learns merges across pre-tokens, but never across
a sentence delimiter. Also included: evaluation metrics, vocabulary merging,
embedding re-initialization and a glitch-token scan.
"""

from .ablation import AblationTable, SweepSpec, run_ablation
from .codec import TokenSequence, decode, decode_text, encode, encode_raw, token_pieces
from .embeddings import EmbeddingMatrix, glitch_scan, retok_init
from .evaluation import Corpus, CorpusManifest, MetricsReport, evaluate, load_corpus, render_report
from .metrics import TokenHistogram, fertility, nsl, renyi_efficiency, renyi_entropy
from .model import MergeRule, Stage, TokenizerModel, TrainingMode
from .normalization import NormalizationForm, normalize
from .pretokenization import PreTokenPattern, SentenceDelimiterSet, pretokenize, split_sentences
from .trainer import TrainerConfig, train, train_stage1, train_stage2
from .vocab_ops import merge_tokenizers, script_distribution

__version__ = "0.1.0"

__all__ = [
    "AblationTable", "Corpus", "CorpusManifest", "EmbeddingMatrix", "MergeRule", "MetricsReport",
    "NormalizationForm", "PreTokenPattern", "SentenceDelimiterSet", "Stage", "SweepSpec",
    "TokenHistogram", "TokenSequence", "TokenizerModel", "TrainerConfig", "TrainingMode",
    "decode", "decode_text", "encode", "encode_raw", "evaluate", "fertility", "glitch_scan",
    "load_corpus", "merge_tokenizers", "normalize", "nsl", "pretokenize", "render_report",
    "renyi_efficiency", "renyi_entropy", "retok_init", "run_ablation", "script_distribution",
    "split_sentences", "token_pieces", "train", "train_stage1", "train_stage2",
]
