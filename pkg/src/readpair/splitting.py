"""Deterministic train/dev/test splitting of pair instances.

Shuffling uses Python's Mersenne Twister (``random.Random(seed)``),
whose sequence is guaranteed stable across platforms and CPython
versions, so a (instances, ratios, seed, mode) tuple always reproduces
the same partition byte-for-byte.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .records import DataError, PairInstance

RATIO_TOLERANCE = 1e-9

INSTANCE_LEVEL = "instance"
SLUG_LEVEL = "slug"
SPLIT_MODES = (INSTANCE_LEVEL, SLUG_LEVEL)


def check_ratios(ratios: Sequence[float]) -> tuple[float, float, float]:
    if len(ratios) != 3:
        raise ValueError(f"expected 3 ratios (train, dev, test), got {len(ratios)}")
    if any(r <= 0 for r in ratios):
        raise ValueError(f"ratios must be positive, got {tuple(ratios)}")
    if not math.isclose(sum(ratios), 1.0, abs_tol=1e-6):
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)!r}")
    return tuple(ratios)  # type: ignore[return-value]


def largest_remainder_sizes(total: int, ratios: Sequence[float]) -> list[int]:
    """Apportion ``total`` units over ratios exactly.

    Floors every quota, then hands the leftover units to the largest
    fractional remainders (ties broken by bucket order).  Exact and
    order-independent, so bucket sizes never drift by more than 1 from
    the ideal quota.
    """
    quotas = [total * r for r in ratios]
    sizes = [int(q) for q in quotas]
    leftover = total - sum(sizes)
    by_remainder = sorted(range(len(ratios)), key=lambda i: (-(quotas[i] - sizes[i]), i))
    for i in by_remainder[:leftover]:
        sizes[i] += 1
    return sizes


def train_dev_test_split(
    instances: Sequence[PairInstance],
    ratios: Sequence[float] = (0.6, 0.2, 0.2),
    seed: int = 0,
    mode: str = INSTANCE_LEVEL,
) -> tuple[list[PairInstance], list[PairInstance], list[PairInstance]]:
    """Partition instances into train/dev/test.

    ``instance`` mode shuffles and slices the instances themselves, which
    can place two pairings of the same underlying texts in different
    buckets.  ``slug`` mode shuffles whole slugs and keeps every instance
    of a slug in one bucket, at the cost of bucket sizes tracking slug
    counts rather than instance counts.
    """
    ratios = check_ratios(ratios)
    if mode not in SPLIT_MODES:
        raise ValueError(f"unknown split mode {mode!r}; expected one of {SPLIT_MODES}")
    if not instances:
        return [], [], []

    rng = random.Random(seed)

    if mode == INSTANCE_LEVEL:
        order = list(range(len(instances)))
        rng.shuffle(order)
        sizes = largest_remainder_sizes(len(instances), ratios)
        buckets = []
        start = 0
        for size in sizes:
            buckets.append([instances[i] for i in order[start : start + size]])
            start += size
        return buckets[0], buckets[1], buckets[2]

    # slug mode: shuffle slug ids in first-appearance order, apportion
    # slugs, then collect each bucket's instances in input order.
    slug_order: list[str] = []
    by_slug: dict[str, list[PairInstance]] = {}
    for inst in instances:
        if inst.slug_id is None:
            raise DataError(
                f"instance {inst.instance_id} has no slug_id; "
                "slug-level splitting requires parallel-corpus instances"
            )
        if inst.slug_id not in by_slug:
            slug_order.append(inst.slug_id)
            by_slug[inst.slug_id] = []
        by_slug[inst.slug_id].append(inst)

    rng.shuffle(slug_order)
    sizes = largest_remainder_sizes(len(slug_order), ratios)
    buckets = []
    start = 0
    for size in sizes:
        chosen = set(slug_order[start : start + size])
        buckets.append([inst for inst in instances if inst.slug_id in chosen])
        start += size
    return buckets[0], buckets[1], buckets[2]
