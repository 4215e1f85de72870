"""Shared fixtures: zero tables are expensive, so build each once per session."""

import time

import pytest

from zetasum.zeros import find_zeros


@pytest.fixture(scope="session")
def table_1000():
    # 649 zeros, ~1 s
    return find_zeros(1000.0)


@pytest.fixture(scope="session")
def table_10k_timed():
    # first 10^4 zeros end near t = 9877.8; ~half a minute
    t0 = time.time()
    table = find_zeros(9880.0)
    return table, time.time() - t0


@pytest.fixture(scope="session")
def table_10k(table_10k_timed):
    return table_10k_timed[0]


@pytest.fixture(scope="session")
def zeros_file_1000(table_1000, tmp_path_factory):
    from zetasum.zeros import write_zeros

    path = tmp_path_factory.mktemp("tables") / "z1000.tsv"
    write_zeros(table_1000, path)
    return path
