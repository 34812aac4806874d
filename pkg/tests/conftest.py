import math

import hypothesis
import numpy as np
import pytest

from complex_ds.complex_scalar import Complex
from complex_ds.evidence import CBBA, Frame

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")

R2_8 = math.sqrt(2) / 8
R3_10 = math.sqrt(3) / 10


@pytest.fixture
def ab():
    return Frame(("A", "B"))


@pytest.fixture
def abc():
    return Frame(("A", "B", "C"))


def example1_pair():
    m1 = CBBA.from_labels("AB", {
        "A": Complex(0.1, -R2_8), "B": Complex(0.7, 2 * R2_8), ("A", "B"): Complex(0.2, -R2_8)})
    m2 = CBBA.from_labels("AB", {
        "A": Complex(0.1, 2 * R3_10), "B": Complex(0.6, R3_10), ("A", "B"): Complex(0.3, -3 * R3_10)})
    return m1, m2


def example5_pair():
    m1 = CBBA.from_labels("ABC", {"A": Complex(0.99, 0.1411), "C": Complex(0.01, -0.1411)})
    m2 = CBBA.from_labels("ABC", {"B": Complex(0.99, 0.1411), "C": Complex(0.01, -0.1411)})
    return m1, m2


def random_cbba(rng: np.random.Generator, n: int, real: bool = False) -> CBBA:
    """Valid CBBA on an n-element frame with a random set of focal elements."""
    frame = Frame(tuple("ABCDEFGH"[:n]))
    subsets = np.arange(1, 2 ** n)
    k = int(rng.integers(1, len(subsets) + 1))
    focal = sorted(rng.choice(subsets, size=k, replace=False).tolist())
    re = rng.dirichlet(np.ones(k))
    if real or k == 1:
        return CBBA(frame, {f: Complex(r) for f, r in zip(focal, re)})
    u = rng.normal(size=k)
    u -= u.mean()
    room = np.sqrt(np.clip(1.0 - re ** 2, 0.0, None))
    scale = np.min(room / np.maximum(np.abs(u), 1e-300)) * rng.uniform(0.0, 1.0)
    im = u * scale
    im -= im.mean()
    return CBBA(frame, {f: Complex(r, i) for f, r, i in zip(focal, re, im)})


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
