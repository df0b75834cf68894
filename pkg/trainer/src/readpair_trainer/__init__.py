"""Seq2seq fine-tuning over rendered text-pair files."""

__version__ = "0.1.0"

from .config import TrainConfig, TrainerError
from .predicting import predict
from .training import TrainResult, train, train_joint

__all__ = [
    "TrainConfig",
    "TrainResult",
    "TrainerError",
    "predict",
    "train",
    "train_joint",
]
