import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dubcover.gridmap import OccupancyGrid, Point

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def grid_from_ascii(text: str, res: float = 1.0, depot=(0.0, 0.0)) -> OccupancyGrid:
    rows = [r.strip() for r in text.strip().splitlines()]
    return OccupancyGrid(np.array([[c == "." for c in r] for r in rows]), res, Point(*depot))


def random_raster(rng: np.random.Generator, h: int, w: int, p_free: float = 0.7) -> np.ndarray:
    return rng.random((h, w)) < p_free


@pytest.fixture
def ring_grid():
    # 12 x 8 rectangle with a centred 4 x 2 block
    free = np.ones((8, 12), dtype=bool)
    free[3:5, 4:8] = False
    return OccupancyGrid(free, 1.0, Point(-1.0, 4.0))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
