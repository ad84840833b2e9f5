import random

import pytest

from sslplan.search import warmup
from sslplan.worldmodel import BallState, FieldGeometry, RobotState, Team, Vec2, WorldState

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernel():
    warmup()


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def field():
    return FieldGeometry()


def make_world(ours=(), theirs=(), ball=(0.0, 0.0), ball_vel=(0.0, 0.0), fld=None):
    """``ours``/``theirs`` are sequences of (x, y) or (x, y, vx, vy); ids follow list order."""
    robots = []
    for team, specs in ((Team.OURS, ours), (Team.THEIRS, theirs)):
        for i, s in enumerate(specs):
            vel = Vec2(s[2], s[3]) if len(s) > 2 else Vec2(0.0, 0.0)
            robots.append(RobotState(i, team, Vec2(s[0], s[1]), vel))
    return WorldState(fld or FieldGeometry(), BallState(Vec2(*ball), Vec2(*ball_vel)), tuple(robots))


def report(line: str) -> None:
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
