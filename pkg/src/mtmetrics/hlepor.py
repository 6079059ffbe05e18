"""hLEPOR: a weighted harmonic combination of a sentence length penalty, a
position-difference penalty over an exact token alignment, and the weighted
harmonic mean of unigram precision and recall.

The alignment here is the exact optimum: among all maximum-cardinality
matchings over equal surface forms it minimizes the total normalized
position difference, with ties broken toward the lexicographically smallest
pair list. Because edges only connect equal surface forms, the optimum
decomposes per form, where an order-preserving assignment is optimal and
only the occurrence-subset choice needs a small DP (see ``_kernels``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import InputError
from .textnorm import Tokens, as_tokens


@dataclass(frozen=True)
class HleporParams:
    """The six hLEPOR hyper-parameters.

    alpha and beta weight recall vs precision inside the harmonic
    precision/recall factor; w_lp, w_npp and w_hpr weight the three outer
    components. n is the context-window order carried by the tuned presets;
    under the exact alignment used here it does not alter scores.
    """

    alpha: float = 9.0
    beta: float = 1.0
    n: int = 2
    w_lp: float = 2.0
    w_npp: float = 1.0
    w_hpr: float = 3.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "w_lp", "w_npp", "w_hpr"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")


# Manually tuned per-language-pair defaults, as (alpha, beta, n, w_lp,
# w_npp, w_hpr).
_EN_TO_CS_RU = HleporParams(9.0, 1.0, 2, 2.0, 1.0, 7.0)
_EN_TO_DE = HleporParams(9.0, 1.0, 2, 3.0, 7.0, 1.0)
_X_TO_EN = HleporParams(1.0, 9.0, 2, 2.0, 1.0, 7.0)
_WIDE = HleporParams(9.0, 1.0, 2, 2.0, 1.0, 3.0)

PRESETS = {
    "en-cs": _EN_TO_CS_RU,
    "en-ru": _EN_TO_CS_RU,
    "en-de": _EN_TO_DE,
    "cs-en": _X_TO_EN,
    "es-en": _X_TO_EN,
    "ru-en": _X_TO_EN,
    "de-en": _WIDE,
    "fr-en": _WIDE,
    "en-es": _WIDE,
    "en-fr": _WIDE,
}


def preset(language_pair: str) -> HleporParams:
    """Tuned parameters for a language pair such as ``en-de`` or ``es-en``."""
    try:
        return PRESETS[language_pair]
    except KeyError:
        raise InputError(
            f"unknown language pair {language_pair!r}; available presets: "
            + ", ".join(sorted(PRESETS))
        ) from None


@dataclass(frozen=True)
class AlignmentMap:
    """Injective matching of equal tokens, as (hyp_index, ref_index) pairs
    sorted by hypothesis position."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)


@dataclass(frozen=True)
class HleporBreakdown:
    lp: float
    npd: float
    npos_penal: float
    precision: float
    recall: float
    hpr: float
    score: float


def length_penalty(hyp_len: int, ref_len: int) -> float:
    """Exponential penalty for a length mismatch; 1 when lengths agree.

    One empty side gives the limit value 0; comparing two empty segments is
    an error.
    """
    if hyp_len == 0 and ref_len == 0:
        raise ValueError("cannot compare two empty segments")
    if hyp_len == 0 or ref_len == 0:
        return 0.0
    if hyp_len == ref_len:
        return 1.0
    if hyp_len < ref_len:
        return math.exp(1.0 - ref_len / hyp_len)
    return math.exp(1.0 - hyp_len / ref_len)


def align(hyp: Tokens, ref: Tokens) -> AlignmentMap:
    """Best exact-token alignment between hypothesis and reference.

    Maximum cardinality first; among those, minimum total normalized
    position difference sum(|i/len_hyp - j/len_ref|); remaining ties go to
    the lexicographically smallest sorted pair list.
    """
    hyp_toks = as_tokens(hyp)
    ref_toks = as_tokens(ref)
    lh, lr = len(hyp_toks), len(ref_toks)
    hyp_pos: dict[str, list[int]] = {}
    for i, tok in enumerate(hyp_toks):
        hyp_pos.setdefault(tok, []).append(i)
    ref_pos: dict[str, list[int]] = {}
    for j, tok in enumerate(ref_toks):
        ref_pos.setdefault(tok, []).append(j)

    pairs: list[tuple[int, int]] = []
    for form, hp in hyp_pos.items():
        rp = ref_pos.get(form)
        if rp is None:
            continue
        if len(hp) == len(rp):
            pairs.extend(zip(hp, rp))
        elif len(hp) < len(rp):
            # Costs |i/lh - j/lr| compared over the common denominator lh*lr,
            # so the DP stays in exact integers.
            small = np.asarray(hp, dtype=np.int64) * lr
            big = np.asarray(rp, dtype=np.int64) * lh
            choice = _kernels.ordered_selection(small, big)
            pairs.extend((hp[i], rp[int(choice[i])]) for i in range(len(hp)))
        else:
            small = np.asarray(rp, dtype=np.int64) * lh
            big = np.asarray(hp, dtype=np.int64) * lr
            choice = _kernels.ordered_selection(small, big)
            pairs.extend((hp[int(choice[j])], rp[j]) for j in range(len(rp)))
    pairs.sort()
    return AlignmentMap(tuple(pairs))


def npd(alignment: AlignmentMap, hyp_len: int, ref_len: int) -> float:
    """Normalized position difference: sum over matched pairs of
    |pos_h/hyp_len - pos_r/ref_len| with 1-based positions, divided by the
    hypothesis length. Unmatched tokens contribute nothing.
    """
    if hyp_len == 0 or not alignment.pairs:
        return 0.0
    total = math.fsum(
        abs((i + 1) / hyp_len - (j + 1) / ref_len) for i, j in alignment.pairs
    )
    return total / hyp_len


def hpr(aligned_num: int, hyp_len: int, ref_len: int,
        alpha: float, beta: float) -> float:
    """Weighted harmonic mean of unigram precision and recall."""
    if aligned_num == 0:
        return 0.0
    precision = aligned_num / hyp_len
    recall = aligned_num / ref_len
    return ((alpha + beta) * precision * recall) / (alpha * precision + beta * recall)


def hlepor_sentence(hyp: Tokens, ref: Tokens,
                    params: HleporParams | None = None) -> HleporBreakdown:
    """Sentence score with the full component breakdown.

    The score is the weighted harmonic mean of the three components; if any
    component is zero the score is zero rather than an infinity.
    """
    if params is None:
        params = HleporParams()
    hyp_toks = as_tokens(hyp)
    ref_toks = as_tokens(ref)
    lh, lr = len(hyp_toks), len(ref_toks)
    lp = length_penalty(lh, lr)
    alignment = align(hyp_toks, ref_toks)
    npd_value = npd(alignment, lh, lr)
    npos_penal = math.exp(-npd_value)
    matched = len(alignment)
    precision = matched / lh if lh else 0.0
    recall = matched / lr if lr else 0.0
    hpr_value = hpr(matched, lh, lr, params.alpha, params.beta)
    if lp == 0.0 or hpr_value == 0.0:
        score = 0.0
    else:
        weight_sum = params.w_lp + params.w_npp + params.w_hpr
        score = weight_sum / (
            params.w_lp / lp + params.w_npp / npos_penal + params.w_hpr / hpr_value
        )
    return HleporBreakdown(
        lp=lp,
        npd=npd_value,
        npos_penal=npos_penal,
        precision=precision,
        recall=recall,
        hpr=hpr_value,
        score=score,
    )


def hlepor_corpus(pairs: Iterable[tuple[Tokens, Tokens]],
                  params: HleporParams | None = None,
                  aggregation: str = "mean") -> float:
    """Corpus score on a 0-100 scale.

    ``mean`` (the default) averages sentence scores. ``counts`` pools the
    lengths, matches, and position differences over the whole corpus and
    scores the totals once.
    """
    pair_list = list(pairs)
    if not pair_list:
        raise InputError("empty corpus")
    if params is None:
        params = HleporParams()
    if aggregation == "mean":
        scores = [hlepor_sentence(h, r, params).score for h, r in pair_list]
        return 100.0 * math.fsum(scores) / len(scores)
    if aggregation != "counts":
        raise ValueError(f"unknown aggregation {aggregation!r}")

    total_h = total_r = total_m = 0
    pd_sums: list[float] = []
    for h, r in pair_list:
        hyp_toks, ref_toks = as_tokens(h), as_tokens(r)
        lh, lr = len(hyp_toks), len(ref_toks)
        alignment = align(hyp_toks, ref_toks)
        total_h += lh
        total_r += lr
        total_m += len(alignment)
        pd_sums.append(npd(alignment, lh, lr) * lh)
    lp = length_penalty(total_h, total_r)
    npos_penal = math.exp(-(math.fsum(pd_sums) / total_h)) if total_h else 1.0
    hpr_value = hpr(total_m, total_h, total_r, params.alpha, params.beta)
    if lp == 0.0 or hpr_value == 0.0:
        return 0.0
    weight_sum = params.w_lp + params.w_npp + params.w_hpr
    score = weight_sum / (
        params.w_lp / lp + params.w_npp / npos_penal + params.w_hpr / hpr_value
    )
    return 100.0 * score
