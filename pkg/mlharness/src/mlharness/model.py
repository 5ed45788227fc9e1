"""The fixed reference classifier.

Two 3x3 convolution stages (32 then 64 filters), each followed by ReLU and
2x2 max pooling, then a single fully connected classification layer.  Kept
deliberately small and frozen so accuracy differences between dataset
variants reflect the data, not architecture search.
"""

from __future__ import annotations

import torch
from torch import nn


class SmallConvNet(nn.Module):
    def __init__(self, channels: int, rows: int, cols: int, num_classes: int = 10):
        super().__init__()
        self.features = nn.Sequential(
            nn.Conv2d(channels, 32, kernel_size=3, padding=1),
            nn.ReLU(),
            nn.MaxPool2d(2),
            nn.Conv2d(32, 64, kernel_size=3, padding=1),
            nn.ReLU(),
            nn.MaxPool2d(2),
        )
        self.classifier = nn.Linear(64 * (rows // 4) * (cols // 4), num_classes)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.classifier(torch.flatten(self.features(x), 1))
