"""Entry point: ``readpair-trainer train`` / ``readpair-trainer predict``."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import TrainConfig, TrainerError
from .predicting import predict
from .training import train, train_joint


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="readpair-trainer",
        description="Fine-tune a seq2seq model on rendered text-pair files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train_cmd = sub.add_parser("train", help="fine-tune per a JSON config file")
    train_cmd.add_argument("--config", required=True, help="TrainConfig JSON")
    train_cmd.add_argument(
        "--stage2-config",
        default=None,
        help="second-stage config for joint training; resumes stage 1's best weights",
    )

    predict_cmd = sub.add_parser("predict", help="greedy-decode a rendered file")
    predict_cmd.add_argument("--checkpoint", required=True)
    predict_cmd.add_argument("--input", required=True, help="rendered .txtpairs file")
    predict_cmd.add_argument("--out", required=True, help="prediction file to write")
    predict_cmd.add_argument("--batch-size", type=int, default=8)
    predict_cmd.add_argument("--max-sequence-length", type=int, default=512)
    predict_cmd.add_argument("--max-new-tokens", type=int, default=16)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            config = TrainConfig.from_json(args.config)
            if args.stage2_config:
                first, second = train_joint(config, TrainConfig.from_json(args.stage2_config))
                print(
                    f"stage 1 best: {first.best_dev_accuracy:.3f}({first.best_epoch})  "
                    f"stage 2 best: {second.best_dev_accuracy:.3f}({second.best_epoch})"
                )
            else:
                result = train(config)
                print(f"best: {result.best_dev_accuracy:.3f}({result.best_epoch})")
        else:
            count = predict(
                args.checkpoint,
                args.input,
                args.out,
                batch_size=args.batch_size,
                max_sequence_length=args.max_sequence_length,
                max_new_tokens=args.max_new_tokens,
            )
            print(f"wrote {count} predictions to {args.out}")
    except TrainerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
