"""Fine-tuning loop: fixed-rate AdamW, per-epoch dev decoding.

Each epoch ends with greedy decoding of the dev file into a prediction
file (``epoch`` field set) and an exact-match dev accuracy; the best
epoch's checkpoint feeds joint training and test prediction.  No
learning-rate schedule: the rate stays fixed for the whole run.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

import torch

from .config import TrainConfig, TrainerError
from .data import PairDataset, count_over_length, load_rendered, write_predictions

logger = logging.getLogger(__name__)


def resolve_model(name_or_path: str):
    from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(name_or_path)
        model = AutoModelForSeq2SeqLM.from_pretrained(name_or_path)
    except Exception as exc:
        raise TrainerError(f"cannot resolve checkpoint {name_or_path!r}: {exc}") from None
    return tokenizer, model


def set_seeds(seed: int) -> None:
    random.seed(seed)
    torch.manual_seed(seed)


@dataclass
class EpochRecord:
    epoch: int
    train_loss: float
    dev_accuracy: float
    checkpoint_dir: str
    predictions_file: str


@dataclass
class TrainResult:
    epochs: list[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    best_dev_accuracy: float = 0.0
    best_checkpoint: str = ""
    over_length_inputs: int = 0

    def to_dict(self) -> dict:
        return {
            "epochs": [vars(e) for e in self.epochs],
            "best_epoch": self.best_epoch,
            "best_dev_accuracy": self.best_dev_accuracy,
            "best_checkpoint": self.best_checkpoint,
            "over_length_inputs": self.over_length_inputs,
        }


def greedy_decode(model, tokenizer, rows, batch_size, max_seq_len, max_new_tokens):
    """Generate one output string per row, inputs only."""
    model.eval()
    outputs: list[str] = []
    device = next(model.parameters()).device
    with torch.no_grad():
        for start in range(0, len(rows), batch_size):
            chunk = rows[start : start + batch_size]
            batch = tokenizer(
                [r.input for r in chunk],
                truncation=True,
                max_length=max_seq_len,
                padding=True,
                return_tensors="pt",
            ).to(device)
            generated = model.generate(
                **batch,
                max_new_tokens=max_new_tokens,
                do_sample=False,
                num_beams=1,
            )
            outputs.extend(tokenizer.batch_decode(generated, skip_special_tokens=True))
    return outputs


def exact_match_accuracy(outputs, rows) -> float:
    hits = sum(
        out.strip().casefold() == row.target.strip().casefold()
        for out, row in zip(outputs, rows)
    )
    return hits / len(rows) if rows else 0.0


def train(config: TrainConfig) -> TrainResult:
    """Run the fine-tuning loop and write per-epoch artifacts.

    Layout under ``config.out_dir``: ``checkpoints/epoch<N>/``,
    ``predictions/dev.epoch<N>.preds``, ``metrics.json``.
    """
    train_rows = load_rendered(config.train_file)
    dev_rows = load_rendered(config.dev_file)
    if not train_rows:
        raise TrainerError(f"{config.train_file}: no training instances")
    if not dev_rows:
        raise TrainerError(f"{config.dev_file}: no dev instances")

    set_seeds(config.seed)
    tokenizer, model = resolve_model(config.model)
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model.to(device)

    result = TrainResult()
    result.over_length_inputs = count_over_length(
        train_rows + dev_rows, tokenizer, config.max_sequence_length
    )
    if result.over_length_inputs:
        logger.warning(
            "%d input(s) exceed max_sequence_length=%d and will be truncated "
            "at the model window; lower the render-time text budget to avoid this",
            result.over_length_inputs,
            config.max_sequence_length,
        )

    dataset = PairDataset(
        train_rows, tokenizer, config.max_sequence_length, config.max_target_tokens
    )
    generator = torch.Generator().manual_seed(config.seed)
    loader = torch.utils.data.DataLoader(
        dataset,
        batch_size=config.batch_size,
        shuffle=True,
        generator=generator,
        collate_fn=dataset.collate,
    )
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)

    out = Path(config.out_dir)
    (out / "checkpoints").mkdir(parents=True, exist_ok=True)
    (out / "predictions").mkdir(parents=True, exist_ok=True)

    best = (-1.0, 0)  # (accuracy, -epoch) ordering handled explicitly below
    for epoch in range(1, config.epochs + 1):
        model.train()
        total_loss = 0.0
        batches = 0
        for batch in loader:
            batch = {k: v.to(device) for k, v in batch.items()}
            loss = model(**batch).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total_loss += loss.item()
            batches += 1
        train_loss = total_loss / batches

        outputs = greedy_decode(
            model,
            tokenizer,
            dev_rows,
            config.batch_size,
            config.max_sequence_length,
            config.max_target_tokens,
        )
        predictions_file = out / "predictions" / f"dev.epoch{epoch}.preds"
        write_predictions(predictions_file, dev_rows, outputs, epoch=epoch)
        dev_accuracy = exact_match_accuracy(outputs, dev_rows)

        checkpoint_dir = out / "checkpoints" / f"epoch{epoch}"
        model.save_pretrained(checkpoint_dir)
        tokenizer.save_pretrained(checkpoint_dir)

        record = EpochRecord(
            epoch=epoch,
            train_loss=train_loss,
            dev_accuracy=dev_accuracy,
            checkpoint_dir=str(checkpoint_dir),
            predictions_file=str(predictions_file),
        )
        result.epochs.append(record)
        logger.info(
            "epoch %d: loss %.4f, dev accuracy %.3f", epoch, train_loss, dev_accuracy
        )
        if dev_accuracy > best[0]:
            best = (dev_accuracy, epoch)

    result.best_dev_accuracy, result.best_epoch = best
    result.best_checkpoint = str(out / "checkpoints" / f"epoch{result.best_epoch}")
    (out / "metrics.json").write_text(
        json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return result


def train_joint(stage1: TrainConfig, stage2: TrainConfig) -> tuple[TrainResult, TrainResult]:
    """Sequential fine-tuning: stage 2 resumes the best stage-1 weights.

    Only the weights carry over; stage 2 builds a fresh optimizer, so no
    optimizer state leaks across corpora.  Both stages' data files are
    validated up front, before any training step runs.
    """
    for config in (stage1, stage2):
        if not load_rendered(config.train_file):
            raise TrainerError(f"{config.train_file}: no training instances")
        if not load_rendered(config.dev_file):
            raise TrainerError(f"{config.dev_file}: no dev instances")
    first = train(stage1)
    if not Path(first.best_checkpoint).exists():
        raise TrainerError(f"stage-1 checkpoint missing: {first.best_checkpoint}")
    stage2.model = first.best_checkpoint
    second = train(stage2)
    return first, second
