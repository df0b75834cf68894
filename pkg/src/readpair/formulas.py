"""Flesch-Kincaid grade level and the pairwise formula baseline.

The analyzer is heuristic but fully documented, so its counts are stable
and reproducible:

* sentences: runs of ``. ! ?``, optionally followed by closing quotes
  or brackets, then whitespace or end of text; a lone period after a
  known abbreviation or a single-letter initial does not end a
  sentence; any text with words counts as at least one sentence.
* words: contiguous alphanumeric runs, so hyphenated compounds split at
  the hyphen and contractions split at the apostrophe.
* syllables: vowel-group counting per word with silent-e and common
  suffix adjustments; every word counts at least one syllable, and
  tokens without letters (plain numbers) count exactly one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from sklearn.base import BaseEstimator

from .records import Harder, PairInstance
from .prompts import truncate_tokens

_WORD = re.compile(r"[^\W_]+", re.UNICODE)
_CLOSERS = "\"'”’)]"
_TERMINAL = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s|$)")
_VOWEL_RUNS = re.compile(r"[aeiouy]+")
# silent endings: consonant + "e(/es/ed)", and adverbial "-ely"
_SILENT = re.compile(r"[^aeiou]e[sd]?$|[^e]ely$")
# corrections where the silent-e rule or vowel-run merging undercounts:
# consonant+le ("table"), sibilant plurals ("raises", "crashes"),
# "-ted/-ded" pasts ("fated"), y-glides ("flying"), vowel hiatus
# ("media", "video", "evaluate"), "-ism", and "-ire" ("fire").
_EXTRA = re.compile(
    r"[^aeioulr][lr]e[sd]?$|[csgxz]es$|(?:sh|ch)es$|[td]ed$"
    r"|.y[aeiou]|(?<![cst])ia(?!n$)|(?<![gp])eo|ism$|[^aeiou]ire$|[^gq]ua"
)

_ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof rev sr jr st vs etc inc ltd co corp dept est approx
    no nos fig figs eg ie cf al
    jan feb mar apr jun jul aug sep sept oct nov dec
    mon tue tues wed thu thur thurs fri sat sun
    """.split()
)


@dataclass(frozen=True)
class TextStats:
    """Counts feeding the grade-level formula."""

    sentences: int
    words: int
    syllables: int

    def __post_init__(self) -> None:
        if self.sentences < 1 or self.words < 1:
            raise ValueError("stats require at least one sentence and one word")
        if self.syllables < self.words:
            raise ValueError("every word carries at least one syllable")


def count_word_syllables(word: str) -> int:
    """Syllables of a single word, minimum 1."""
    w = "".join(c for c in word.lower() if c.isalpha())
    if not w:
        return 1
    n = len(_VOWEL_RUNS.findall(w))
    n -= len(_SILENT.findall(w))
    n += len(_EXTRA.findall(w))
    return max(1, n)


def count_sentences(text: str) -> int:
    """Terminal-punctuation sentence count, abbreviation-safe, minimum 1."""
    count = 0
    for match in _TERMINAL.finditer(text):
        if match.group().rstrip(_CLOSERS) == ".":
            before = text[: match.start()].rsplit(None, 1)
            token = before[-1] if before else ""
            token = token.rstrip(".").rsplit(".", 1)[-1].lstrip("([\"'‘“").lower()
            if token in _ABBREVIATIONS or (len(token) == 1 and token.isalpha()):
                continue
        count += 1
    return max(1, count)


def analyze(text: str) -> TextStats:
    """Count sentences, words, and syllables of one text.

    Raises ``ValueError`` for text containing no words.
    """
    words = _WORD.findall(text)
    if not words:
        raise ValueError("unanalyzable text: no words found")
    return TextStats(
        sentences=count_sentences(text),
        words=len(words),
        syllables=sum(count_word_syllables(w) for w in words),
    )


def fkgl(stats: TextStats) -> float:
    """Flesch-Kincaid grade level: 0.39*(w/s) + 11.8*(syll/w) - 15.59."""
    return (
        0.39 * stats.words / stats.sentences
        + 11.8 * stats.syllables / stats.words
        - 15.59
    )


def grade_level(text: str) -> float:
    return fkgl(analyze(text))


def rank_pair(
    instance: PairInstance, token_budget_per_text: int | None = None
) -> Harder | None:
    """Predict the harder text as the one with the higher grade level.

    Texts are scored in full by default; pass a token budget to score the
    same truncated views a sequence model would see.  Exact ties and
    unanalyzable texts yield ``None``, which evaluation counts as an
    incorrect prediction: deterministic, and ties are rare on natural
    text.
    """
    body1, body2 = instance.text1.body, instance.text2.body
    if token_budget_per_text is not None:
        body1, _ = truncate_tokens(body1, token_budget_per_text)
        body2, _ = truncate_tokens(body2, token_budget_per_text)
    try:
        score1, score2 = grade_level(body1), grade_level(body2)
    except ValueError:
        return None
    if score1 == score2:
        return None
    return Harder.TEXT1 if score1 > score2 else Harder.TEXT2


class FleschKincaidRanker(BaseEstimator):
    """Training-free pairwise ranker backed by the grade-level formula.

    ``predict`` memoizes per-text scores, so scoring a large pair set
    costs one analysis per unique text.
    """

    def __init__(self, token_budget_per_text: int | None = None):
        self.token_budget_per_text = token_budget_per_text

    def fit(self, X=None, y=None):
        return self

    def _score(self, body: str, cache: dict[str, float | None]) -> float | None:
        if body not in cache:
            if self.token_budget_per_text is not None:
                body_view, _ = truncate_tokens(body, self.token_budget_per_text)
            else:
                body_view = body
            try:
                cache[body] = grade_level(body_view)
            except ValueError:
                cache[body] = None
        return cache[body]

    def predict(self, X: list[PairInstance]) -> list[Harder | None]:
        cache: dict[str, float | None] = {}
        out: list[Harder | None] = []
        for inst in X:
            s1 = self._score(inst.text1.body, cache)
            s2 = self._score(inst.text2.body, cache)
            if s1 is None or s2 is None or s1 == s2:
                out.append(None)
            else:
                out.append(Harder.TEXT1 if s1 > s2 else Harder.TEXT2)
        return out
