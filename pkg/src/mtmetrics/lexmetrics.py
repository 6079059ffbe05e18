"""ROUGE-L F1 and exact-match METEOR.

ROUGE-L scores the longest common subsequence (not necessarily contiguous)
between hypothesis and reference. METEOR here runs the exact surface-match
stage only: unigram precision/recall over the same optimal alignment hLEPOR
uses, discounted by a fragmentation penalty over matched chunks. It is
named ``meteor_exact`` precisely because the stem/synonym/paraphrase stages
of the full tool are not implemented.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hlepor import AlignmentMap, align
from .textnorm import Tokens, as_tokens


@dataclass(frozen=True)
class RougeLScore:
    precision: float
    recall: float
    f1: float
    lcs_len: int


@dataclass(frozen=True)
class MeteorParams:
    """Recall weight alpha, fragmentation exponent beta, penalty weight gamma."""

    alpha: float = 0.9
    beta: float = 3.0
    gamma: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        if not self.beta > 0:
            raise ValueError("beta must be > 0")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must be in [0, 1)")


def lcs_length(a: Tokens, b: Tokens) -> int:
    """Length of the longest common subsequence of two token sequences."""
    a_toks = as_tokens(a)
    b_toks = as_tokens(b)
    if not a_toks or not b_toks:
        return 0
    vocab: dict[str, int] = {}

    def codes(tokens: tuple[str, ...]) -> np.ndarray:
        arr = np.empty(len(tokens), dtype=np.int64)
        for i, tok in enumerate(tokens):
            arr[i] = vocab.setdefault(tok, len(vocab))
        return arr

    return _kernels.lcs_length_codes(codes(a_toks), codes(b_toks))


def rouge_l_f1(hyp: Tokens, ref: Tokens) -> RougeLScore:
    """LCS-based precision, recall and F1. Two empty segments count as a
    perfect match so the function is total."""
    hyp_toks = as_tokens(hyp)
    ref_toks = as_tokens(ref)
    if not hyp_toks and not ref_toks:
        return RougeLScore(1.0, 1.0, 1.0, 0)
    lcs = lcs_length(hyp_toks, ref_toks)
    precision = lcs / len(hyp_toks) if hyp_toks else 0.0
    recall = lcs / len(ref_toks) if ref_toks else 0.0
    if precision + recall == 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return RougeLScore(precision, recall, f1, lcs)


def _chunk_count(alignment: AlignmentMap) -> int:
    # A chunk extends while matches are adjacent in the hypothesis and their
    # reference positions advance by exactly one.
    ref_at = dict(alignment.pairs)
    chunks = 0
    for h, r in alignment.pairs:  # sorted by hypothesis position
        if ref_at.get(h - 1) != r - 1:
            chunks += 1
    return chunks


def meteor_exact(hyp: Tokens, ref: Tokens,
                 params: MeteorParams | None = None) -> float:
    """Exact-surface-match METEOR score in [0, 1]. Zero matches score 0."""
    if params is None:
        params = MeteorParams()
    hyp_toks = as_tokens(hyp)
    ref_toks = as_tokens(ref)
    alignment = align(hyp_toks, ref_toks)
    matched = len(alignment)
    if matched == 0:
        return 0.0
    precision = matched / len(hyp_toks)
    recall = matched / len(ref_toks)
    f_mean = precision * recall / (
        params.alpha * precision + (1.0 - params.alpha) * recall
    )
    chunks = _chunk_count(alignment)
    penalty = params.gamma * (chunks / matched) ** params.beta
    return f_mean * (1.0 - penalty)
