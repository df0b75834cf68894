"""Trainer test fixtures: tiny offline checkpoints and rendered files.

Tests never touch the network: model checkpoints are built locally with
a word-level tokenizer trained on the very texts under test.
"""

from __future__ import annotations

import json
import os
import random
from pathlib import Path

import pytest

os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("HF_HUB_OFFLINE", "1")

REPO_ROOT = Path(__file__).resolve().parent.parent.parent
DATA_DIR = Path(os.environ.get("READPAIR_DATA", REPO_ROOT / "data"))

EASY_WORDS = "the cat dog sun run big red we go it is fun day".split()
HARD_WORDS = (
    "notwithstanding institutional deliberation comprehensive "
    "extraordinarily necessitating unprecedented infrastructure"
).split()


@pytest.fixture(scope="session")
def checkpoint_factory(tmp_path_factory):
    """Build a small random-weight encoder-decoder over given texts."""

    def make(texts: list[str], name: str = "tiny") -> str:
        from tokenizers import Tokenizer, models, pre_tokenizers, trainers
        from transformers import (
            BartConfig,
            BartForConditionalGeneration,
            PreTrainedTokenizerFast,
        )

        word_level = Tokenizer(models.WordLevel(unk_token="<unk>"))
        word_level.pre_tokenizer = pre_tokenizers.Whitespace()
        word_level.train_from_iterator(
            texts, trainers.WordLevelTrainer(special_tokens=["<s>", "</s>", "<pad>", "<unk>"])
        )
        tokenizer = PreTrainedTokenizerFast(
            tokenizer_object=word_level,
            bos_token="<s>",
            eos_token="</s>",
            pad_token="<pad>",
            unk_token="<unk>",
        )
        config = BartConfig(
            vocab_size=tokenizer.vocab_size,
            d_model=32,
            encoder_layers=1,
            decoder_layers=1,
            encoder_attention_heads=2,
            decoder_attention_heads=2,
            encoder_ffn_dim=64,
            decoder_ffn_dim=64,
            max_position_embeddings=520,
            pad_token_id=tokenizer.pad_token_id,
            bos_token_id=tokenizer.bos_token_id,
            eos_token_id=tokenizer.eos_token_id,
            decoder_start_token_id=tokenizer.eos_token_id,
            forced_eos_token_id=tokenizer.eos_token_id,
        )
        import torch

        torch.manual_seed(0)
        model = BartForConditionalGeneration(config)
        target = tmp_path_factory.mktemp(name)
        model.save_pretrained(target)
        tokenizer.save_pretrained(target)
        return str(target)

    return make


def _rendered_row(i: int, rng: random.Random) -> dict:
    easy = " ".join(rng.choice(EASY_WORDS) for _ in range(8))
    hard = " ".join(rng.choice(HARD_WORDS) for _ in range(8))
    if i % 2 == 0:
        text1, text2, target = hard, easy, "Text 1"
    else:
        text1, text2, target = easy, hard, "Text 2"
    return {
        "instance_id": f"smoke-{i:04d}",
        "input": f"Which Text is more difficult? Text 1: {text1} Text 2: {text2}",
        "target": target,
        "format": "question",
        "truncated": False,
    }


@pytest.fixture(scope="session")
def rendered_factory():
    """Write a synthetic question-format rendered file; returns its rows."""

    def make(path: Path, count: int, seed: int = 0) -> list[dict]:
        rng = random.Random(seed)
        rows = [_rendered_row(i, rng) for i in range(count)]
        with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
            for row in rows:
                fh.write(json.dumps(row) + "\n")
        return rows

    return make


@pytest.fixture
def small_task(tmp_path, rendered_factory, checkpoint_factory):
    """A ready-to-train toy task: files, checkpoint, and an out dir."""
    train_file = tmp_path / "toy.question.train.txtpairs"
    dev_file = tmp_path / "toy.question.dev.txtpairs"
    train_rows = rendered_factory(train_file, 24, seed=1)
    dev_rows = rendered_factory(dev_file, 8, seed=2)
    texts = [r["input"] for r in train_rows + dev_rows] + ["Text 1", "Text 2"]
    checkpoint = checkpoint_factory(texts, name="toy")
    return {
        "train_file": train_file,
        "dev_file": dev_file,
        "checkpoint": checkpoint,
        "out_dir": tmp_path / "run",
        "train_rows": train_rows,
        "dev_rows": dev_rows,
    }
