"""Seeded training runs with fixed optimizer settings.

Settings are part of the harness contract (Adam, lr 1e-3, mini-batch 128) so
that origin/vortex/random comparisons differ only in the data.
"""

from __future__ import annotations

import math
import time

import numpy as np
import torch
from torch import nn

from .config import ExperimentConfig, RunResult
from .data import Split, load
from .errors import RunError
from .model import SmallConvNet

BATCH_SIZE = 128
LEARNING_RATE = 1e-3


def _evaluate(model: nn.Module, split: Split) -> float:
    model.eval()
    correct = 0
    with torch.no_grad():
        for start in range(0, len(split.images), 512):
            xb = torch.from_numpy(split.images[start : start + 512])
            logits = model(xb)
            correct += int((logits.argmax(dim=1).numpy() == split.labels[start : start + 512]).sum())
    return correct / len(split.images)


def train_eval(config: ExperimentConfig) -> RunResult:
    """Train the reference classifier and score it on the matching test split."""
    started = time.perf_counter()
    train, test = load(config)

    torch.manual_seed(config.seed)
    count, channels, rows, cols = train.images.shape
    model = SmallConvNet(channels, rows, cols)
    optimizer = torch.optim.Adam(model.parameters(), lr=LEARNING_RATE)
    loss_fn = nn.CrossEntropyLoss()
    order_rng = np.random.default_rng(config.seed)

    curve = []
    for _ in range(config.epochs):
        model.train()
        order = order_rng.permutation(count)
        for start in range(0, count, BATCH_SIZE):
            batch = order[start : start + BATCH_SIZE]
            xb = torch.from_numpy(train.images[batch])
            yb = torch.from_numpy(train.labels[batch])
            optimizer.zero_grad()
            loss = loss_fn(model(xb), yb)
            loss_value = float(loss.detach())
            if not math.isfinite(loss_value):
                raise RunError(f"training diverged (loss={loss_value})")
            loss.backward()
            optimizer.step()
        curve.append(1.0 - _evaluate(model, test))

    return RunResult(
        test_accuracy=1.0 - curve[-1],
        train_curve=curve,
        config=config.to_dict(),
        wall_time=time.perf_counter() - started,
    )
