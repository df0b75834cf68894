"""Rendered-file loading and batching.

Rendered files are the upstream pipeline's export: one JSON object per
line with ``instance_id``, ``input``, ``target``, ``format``,
``truncated``.  Prediction files are written in the matching format:
``instance_id``, ``raw_output``, ``format``, optional ``epoch``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import torch

from .config import TrainerError


@dataclass(frozen=True)
class RenderedRow:
    instance_id: str
    input: str
    target: str
    format_kind: str


def load_rendered(path: Path | str) -> list[RenderedRow]:
    path = Path(path)
    if not path.exists():
        raise TrainerError(f"rendered file not found: {path}")
    rows: list[RenderedRow] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise TrainerError(f"{path}:{lineno}: not valid JSON: {exc}") from None
            missing = {"instance_id", "input", "target", "format"} - set(obj)
            if missing:
                raise TrainerError(f"{path}:{lineno}: missing keys {sorted(missing)}")
            rows.append(
                RenderedRow(
                    instance_id=obj["instance_id"],
                    input=obj["input"],
                    target=obj["target"],
                    format_kind=obj["format"],
                )
            )
    return rows


def write_predictions(
    path: Path | str,
    rows: Iterable[RenderedRow],
    outputs: Iterable[str],
    epoch: int | None = None,
) -> None:
    """Write raw generated strings verbatim, atomically (temp + rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="\n") as fh:
        for row, output in zip(rows, outputs):
            obj = {
                "instance_id": row.instance_id,
                "raw_output": output,
                "format": row.format_kind,
            }
            if epoch is not None:
                obj["epoch"] = epoch
            fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")
    os.replace(tmp, path)


class PairDataset(torch.utils.data.Dataset):
    """Tokenized (input, target) pairs with padding label masking."""

    def __init__(self, rows, tokenizer, max_seq_len: int, max_target_tokens: int):
        self.rows = rows
        self.tokenizer = tokenizer
        self.max_seq_len = max_seq_len
        self.max_target_tokens = max_target_tokens

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: int) -> dict:
        return {"index": index}

    def collate(self, items: list[dict]) -> dict:
        rows = [self.rows[item["index"]] for item in items]
        batch = self.tokenizer(
            [r.input for r in rows],
            truncation=True,
            max_length=self.max_seq_len,
            padding=True,
            return_tensors="pt",
        )
        targets = self.tokenizer(
            [r.target for r in rows],
            truncation=True,
            max_length=self.max_target_tokens,
            padding=True,
            return_tensors="pt",
        )
        labels = targets.input_ids.masked_fill(
            targets.input_ids == self.tokenizer.pad_token_id, -100
        )
        batch["labels"] = labels
        return batch


def count_over_length(rows, tokenizer, max_seq_len: int) -> int:
    """Inputs whose subword length exceeds the model window.

    Truncation at the window is unavoidable for these, so the count is
    surfaced rather than hidden; with the upstream per-text budget at
    its default the count stays zero and template tokens are never cut.
    """
    over = 0
    for row in rows:
        if len(tokenizer(row.input).input_ids) > max_seq_len:
            over += 1
    return over
