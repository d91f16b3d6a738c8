from __future__ import annotations

import random
import time
from pathlib import Path

import pytest

from repdim.exactlin import QMatrix
from repdim.quiverrep import Quiver, Rep

INSTANCE_DIR = Path(__file__).resolve().parents[1] / "src" / "repdim" / "instances"

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def kronecker() -> Quiver:
    return Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])


def affine_a3() -> Quiver:
    return Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "4"), ("d", "4", "3")])


def linear_a3() -> Quiver:
    return Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])


def random_rep(q: Quiver, rng: random.Random, max_dim: int = 2, max_entry: int = 2) -> Rep:
    dims = {v: rng.randint(0, max_dim) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        r, c = dims[a.target], dims[a.source]
        maps[a.name] = QMatrix(r, c, [rng.randint(-max_entry, max_entry) for _ in range(r * c)])
    return Rep(q, dims, maps)


@pytest.fixture(scope="session")
def kq() -> Quiver:
    return kronecker()


@pytest.fixture(scope="session")
def aq() -> Quiver:
    return affine_a3()


@pytest.fixture(scope="session")
def kron_instance():
    from repdim.pipeline import build_instance

    return build_instance(kronecker(), [("1", 2), ("2", 2)])


@pytest.fixture(scope="session")
def affine_instance():
    from repdim.pipeline import build_instance

    return build_instance(affine_a3(), [(v, 2) for v in "1234"])


@pytest.fixture(scope="session")
def kron_generator(kron_instance):
    from repdim.pipeline import build_generator

    return build_generator(kron_instance)


def _timed_certificate(q, spec):
    """Build and certify an instance from scratch; returns (certificate, seconds)."""
    from repdim.pipeline import build_instance, certify

    start = time.perf_counter()
    cert = certify(build_instance(q, spec), samples=20, seed=7, bound=10)
    return cert, time.perf_counter() - start


@pytest.fixture(scope="session")
def kron_certificate():
    return _timed_certificate(kronecker(), [("1", 2), ("2", 2)])


@pytest.fixture(scope="session")
def affine_certificate():
    return _timed_certificate(affine_a3(), [(v, 2) for v in "1234"])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        name, ok, detail = ACCEPTANCE_RESULTS[n]
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}: {name}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
