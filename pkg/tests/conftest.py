import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles helper


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    """Point the level-set cache at a per-session directory."""
    import os

    cache = tmp_path_factory.mktemp("levelset-cache")
    old = os.environ.get("PUNIF_CACHE_DIR")
    os.environ["PUNIF_CACHE_DIR"] = str(cache)
    yield
    if old is None:
        os.environ.pop("PUNIF_CACHE_DIR", None)
    else:
        os.environ["PUNIF_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def weyl_set():
    from punif.hierarchy import enumerate_level

    return enumerate_level(1, 2, 1)


@pytest.fixture(scope="session")
def clifford_set():
    from punif.hierarchy import enumerate_level

    return enumerate_level(1, 2, 2)


@pytest.fixture(scope="session")
def level3_set():
    from punif.hierarchy import enumerate_level

    return enumerate_level(1, 2, 3)
