from __future__ import annotations

import pytest
from hypothesis import settings

from mrrsph.rootsys import build_root_system

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]


@pytest.fixture(params=SMALL_TYPES, ids=lambda t: f"{t[0]}{t[1]}")
def small_rs(request):
    return build_root_system(*request.param)
