"""Batch inference: greedy decode a rendered file against a checkpoint.

Targets in the rendered file are never read here; only inputs reach the
model, and the raw generated strings are written verbatim.  Parsing the
strings into verdicts is the evaluation side's job.
"""

from __future__ import annotations

from pathlib import Path

from .config import TrainerError
from .data import load_rendered, write_predictions
from .training import greedy_decode, resolve_model


def predict(
    checkpoint: str,
    rendered_file: Path | str,
    out_file: Path | str,
    batch_size: int = 8,
    max_sequence_length: int = 512,
    max_new_tokens: int = 16,
) -> int:
    rows = load_rendered(rendered_file)
    if not rows:
        raise TrainerError(f"{rendered_file}: no instances to predict")
    tokenizer, model = resolve_model(checkpoint)
    outputs = greedy_decode(
        model, tokenizer, rows, batch_size, max_sequence_length, max_new_tokens
    )
    write_predictions(out_file, rows, outputs)
    return len(rows)
