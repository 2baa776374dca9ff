import pytest

from gaschuetz.catalog import load_bundled_catalog


@pytest.fixture(scope="session")
def catalog_entries():
    return load_bundled_catalog()


@pytest.fixture(scope="session")
def catalog_groups(catalog_entries):
    """(entry, group) pairs; groups carry caches shared across the session."""
    return [(e, e.group()) for e in catalog_entries]


@pytest.fixture(scope="session")
def small_catalog_groups(catalog_groups):
    """Only the exhaustive part: every group of order <= 63."""
    return [(e, G) for e, G in catalog_groups if "named-large" not in e.tags]


@pytest.fixture(scope="session")
def named_large_groups(catalog_groups):
    return [(e, G) for e, G in catalog_groups if "named-large" in e.tags]
