import sys

import numpy as np
import pytest

from separability import Dataset


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance verdict lines after capture has ended."""
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None) if mod else None
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)


def rng(seed: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))


def random_dataset(
    n_per_class: int = 30, dim: int = 3, classes: int = 2, seed: int = 0, spread: float = 0.0
) -> Dataset:
    """Gaussian classes; ``spread`` moves the class means apart."""
    g = rng(seed)
    points = []
    labels = []
    for c in range(classes):
        center = np.zeros(dim)
        center[0] = c * spread
        points.append(center + g.normal(size=(n_per_class, dim)))
        labels.append(np.full(n_per_class, c))
    return Dataset(np.vstack(points), np.concatenate(labels))


@pytest.fixture
def small_two_class() -> Dataset:
    return random_dataset(n_per_class=20, dim=2, seed=7, spread=3.0)
