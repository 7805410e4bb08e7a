"""
Reference walk fixtures shipped as plain text (one integer per token, '#'
comments). One line is a hermitian path, two lines a directed pair.
"""
from pathlib import Path
from typing import List

from ..errors import NotFoundError, ValidationError
from .paths import Walk, WalkPair, WalkPath

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def available_fixtures() -> List[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.txt"))


def parse_fixture(text: str) -> Walk:
    lines = [
        line.split("#", 1)[0].strip() for line in text.splitlines()
    ]
    lines = [line for line in lines if line]
    if len(lines) == 1:
        return WalkPath.parse(lines[0])
    if len(lines) == 2:
        return WalkPair.parse(lines[0], lines[1])
    raise ValidationError(
        f"a fixture holds one path or a pair of paths, got {len(lines)} lines",
        field="fixture",
    )


def load_fixture(name: str) -> Walk:
    path = FIXTURE_DIR / f"{name}.txt"
    if not path.exists():
        raise NotFoundError(
            f"Walk fixture '{name}' not found",
            resource_type="fixture",
            resource_id=name,
            suggestions=available_fixtures(),
        )
    return parse_fixture(path.read_text())
