"""Training configuration, loadable from a JSON file.

The file mirrors the pipeline manifest's key names
(``max_sequence_length``, ``batch_size``, ``learning_rate``, ...), so a
manifest's ``trainer_defaults`` block can be pasted in directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path


class TrainerError(RuntimeError):
    """Configuration or data problem the caller must fix."""


#: whitespace tokens any of the nine templates adds around the two texts
TEMPLATE_OVERHEAD_TOKENS = 16


@dataclass
class TrainConfig:
    model: str
    train_file: Path
    dev_file: Path
    out_dir: Path
    batch_size: int = 8
    learning_rate: float = 1e-5
    epochs: int = 30
    max_sequence_length: int = 512
    max_target_tokens: int = 16
    decode: str = "greedy"
    seed: int = 42
    #: per-text whitespace budget the rendered files were produced with;
    #: when given, the sequence length is checked against it.
    text_token_budget: int | None = None

    def __post_init__(self) -> None:
        self.train_file = Path(self.train_file)
        self.dev_file = Path(self.dev_file)
        self.out_dir = Path(self.out_dir)
        if self.batch_size < 1:
            raise TrainerError("batch_size must be >= 1")
        if self.epochs < 1:
            raise TrainerError("epochs must be >= 1")
        if self.decode != "greedy":
            raise TrainerError(f"unsupported decode strategy {self.decode!r}")
        if self.text_token_budget is not None:
            needed = 2 * self.text_token_budget + TEMPLATE_OVERHEAD_TOKENS
            if self.max_sequence_length < needed:
                raise TrainerError(
                    f"max_sequence_length {self.max_sequence_length} cannot hold two "
                    f"{self.text_token_budget}-token texts plus the template "
                    f"(needs >= {needed})"
                )

    @classmethod
    def from_json(cls, path: Path | str) -> "TrainConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise TrainerError(f"cannot read config {path}: {exc}") from None
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise TrainerError(f"{path}: unknown config keys {sorted(unknown)}")
        missing = {"model", "train_file", "dev_file", "out_dir"} - set(raw)
        if missing:
            raise TrainerError(f"{path}: missing config keys {sorted(missing)}")
        return cls(**raw)
