"""The nine input-output text formats and their parsing.

Each format renders a text pair into a single input string and a short
closed-class target.  Target semantics are fixed per format so that the
first target of the canonical listing always corresponds to "text 1 is
harder".  The Follow-up family labels its second hole ``Text2:`` with no
space; that irregularity is part of the published templates and is
reproduced here byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from sklearn.base import BaseEstimator, TransformerMixin

from .records import Harder, PairInstance

#: Whitespace-token budget per text.  The rendered pair must fit a
#: 512-subword sequence model with two texts plus template words, which
#: caps each text at <= 256 subwords; 230 leaves headroom for the
#: wordiest of the nine templates.
DEFAULT_TOKEN_BUDGET = 230


class FormatKind(str, Enum):
    QUESTION = "question"
    STATEMENT = "statement"
    FOLLOWUP = "follow-up"
    REVERSE_QUESTION = "reverse-question"
    REVERSE_STATEMENT = "reverse-statement"
    REVERSE_FOLLOWUP = "reverse-follow-up"
    ALTERNATE_QUESTION = "alternate-question"
    ALTERNATE_STATEMENT = "alternate-statement"
    ALTERNATE_FOLLOWUP = "alternate-follow-up"


#: Human-readable names, matching the canonical table's Type column.
DISPLAY_NAMES = {
    FormatKind.QUESTION: "Question",
    FormatKind.STATEMENT: "Statement",
    FormatKind.FOLLOWUP: "Follow-up",
    FormatKind.REVERSE_QUESTION: "Reverse-Question",
    FormatKind.REVERSE_STATEMENT: "Reverse-Statement",
    FormatKind.REVERSE_FOLLOWUP: "Reverse-Follow-up",
    FormatKind.ALTERNATE_QUESTION: "Alternate-Question",
    FormatKind.ALTERNATE_STATEMENT: "Alternate-Statement",
    FormatKind.ALTERNATE_FOLLOWUP: "Alternate-Follow-up",
}


@dataclass(frozen=True)
class FormatSpec:
    """One input-output format: template plus target semantics."""

    kind: FormatKind
    input_template: str
    target_text1_harder: str
    target_text2_harder: str

    def __post_init__(self) -> None:
        if self.target_text1_harder == self.target_text2_harder:
            raise ValueError(f"{self.kind}: the two targets must differ")
        for hole in ("{text1}", "{text2}"):
            if self.input_template.count(hole) != 1:
                raise ValueError(f"{self.kind}: template must contain {hole} exactly once")

    def target_for(self, gold: Harder) -> str:
        return self.target_text1_harder if gold is Harder.TEXT1 else self.target_text2_harder

    def table_input(self) -> str:
        """Template with holes shown as the table's ``...`` markers."""
        return self.input_template.format(text1="...", text2="...")

    def table_targets(self) -> str:
        return f'"{self.target_text1_harder}" or "{self.target_text2_harder}"'


_BUILTIN = (
    FormatSpec(
        FormatKind.QUESTION,
        "Which Text is more difficult? Text 1: {text1} Text 2: {text2}",
        "Text 1",
        "Text 2",
    ),
    FormatSpec(
        FormatKind.STATEMENT,
        "Text 1 is more difficult than Text 2. Text 1: {text1} Text 2: {text2}",
        "True",
        "False",
    ),
    FormatSpec(
        FormatKind.FOLLOWUP,
        "Text 1: {text1} Text2: {text2} More difficult:",
        "Text 1",
        "Text 2",
    ),
    FormatSpec(
        FormatKind.REVERSE_QUESTION,
        "Which Text is easier? Text 1: {text1} Text 2: {text2}",
        "Text 2",
        "Text 1",
    ),
    FormatSpec(
        FormatKind.REVERSE_STATEMENT,
        "Text 1 is easier than Text 2. Text 1: {text1} Text 2: {text2}",
        "False",
        "True",
    ),
    FormatSpec(
        FormatKind.REVERSE_FOLLOWUP,
        "Text 1: {text1} Text2: {text2} Easier:",
        "Text 2",
        "Text 1",
    ),
    FormatSpec(
        FormatKind.ALTERNATE_QUESTION,
        "Which Text is harder? Text 1: {text1} Text 2: {text2}",
        "Text 1",
        "Text 2",
    ),
    FormatSpec(
        FormatKind.ALTERNATE_STATEMENT,
        "Text 1 is harder than Text 2. Text 1: {text1} Text 2: {text2}",
        "True",
        "False",
    ),
    FormatSpec(
        FormatKind.ALTERNATE_FOLLOWUP,
        "Text 1: {text1} Text2: {text2} Harder:",
        "Text 1",
        "Text 2",
    ),
)


def builtin_formats() -> list[FormatSpec]:
    """The nine built-in format specs, in canonical table order."""
    return list(_BUILTIN)


def format_by_kind(kind: FormatKind | str) -> FormatSpec:
    kind = FormatKind(kind)
    for spec in _BUILTIN:
        if spec.kind is kind:
            return spec
    raise KeyError(kind)  # unreachable: enum covers all nine


@dataclass(frozen=True)
class RenderedInstance:
    """A pair rendered under one format, ready for a text-to-text model."""

    instance_id: str
    input: str
    target: str
    format_kind: FormatKind
    truncated: bool


def truncate_tokens(text: str, budget: int) -> tuple[str, bool]:
    """Keep at most ``budget`` whitespace tokens; flag if any were cut."""
    tokens = text.split()
    if len(tokens) <= budget:
        return text, False
    return " ".join(tokens[:budget]), True


def render(
    instance: PairInstance,
    spec: FormatSpec,
    token_budget_per_text: int = DEFAULT_TOKEN_BUDGET,
) -> RenderedInstance:
    """Render one pair under one format.

    Each text is independently cut to the whitespace-token budget before
    substitution; a sequence model applies its own subword-level limit
    downstream, so this stage stays tokenizer-agnostic.
    """
    if token_budget_per_text < 1:
        raise ValueError("token budget must be >= 1")
    body1, cut1 = truncate_tokens(instance.text1.body, token_budget_per_text)
    body2, cut2 = truncate_tokens(instance.text2.body, token_budget_per_text)
    return RenderedInstance(
        instance_id=instance.instance_id,
        input=spec.input_template.format(text1=body1, text2=body2),
        target=spec.target_for(instance.gold),
        format_kind=spec.kind,
        truncated=cut1 or cut2,
    )


def parse_output(generated: str, spec: FormatSpec) -> Harder | None:
    """Map a generated string back to a harder-text prediction.

    Matching is exact after trimming and casefolding; the targets are
    short closed-class tokens, and anything looser would silently
    inflate accuracy.  Returns ``None`` for unparseable output.
    """
    norm = generated.strip().casefold()
    if norm == spec.target_text1_harder.casefold():
        return Harder.TEXT1
    if norm == spec.target_text2_harder.casefold():
        return Harder.TEXT2
    return None


class PromptRenderer(BaseEstimator, TransformerMixin):
    """Stateless transformer from pair instances to rendered instances."""

    def __init__(
        self,
        format_kind: FormatKind | str = FormatKind.QUESTION,
        token_budget_per_text: int = DEFAULT_TOKEN_BUDGET,
    ):
        self.format_kind = format_kind
        self.token_budget_per_text = token_budget_per_text

    def fit(self, X, y=None):
        return self

    def transform(self, X: list[PairInstance]) -> list[RenderedInstance]:
        spec = format_by_kind(self.format_kind)
        return [render(inst, spec, self.token_budget_per_text) for inst in X]
