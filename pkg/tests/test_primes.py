#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
測試質數模組：篩法、區間查詢、Bertrand 區間與篩法上限
"""

import sys
from pathlib import Path

# 添加專案根目錄到 Python 路徑
sys.path.append(str(Path(__file__).parent.parent))

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from config.config import config
from src.error_handler import ConfigurationError, ExitCode
from src.primes import (
    bertrand_gaps, prime_in_bertrand_interval, primes_up_to, table_covering,
)


def _is_prime_naive(value: int) -> bool:
    return value >= 2 and all(value % k for k in range(2, int(value ** 0.5) + 1))


def test_primes_up_to_small_limits():
    assert primes_up_to(10).as_tuple() == (2, 3, 5, 7)
    assert primes_up_to(20).as_tuple() == (2, 3, 5, 7, 11, 13, 17, 19)


def test_primes_up_to_19_gives_intro_table_primes():
    odd = tuple(p for p in primes_up_to(19) if p != 2)
    assert odd == (3, 5, 7, 11, 13, 17, 19)


@pytest.mark.parametrize("limit", [-5, 0, 1])
def test_small_limits_give_empty_table(limit):
    assert len(primes_up_to(limit)) == 0


def test_table_matches_trial_division():
    table = primes_up_to(2000)
    assert table.as_tuple() == tuple(k for k in range(2001) if _is_prime_naive(k))
    assert np.all(np.diff(table.primes) > 0)


def test_table_is_read_only():
    table = primes_up_to(100)
    with pytest.raises(ValueError):
        table.primes[0] = 4


def test_interval_queries():
    table = primes_up_to(100)
    assert table.between(10, 20).tolist() == [11, 13, 17, 19]
    assert table.between(20, 10).size == 0
    assert table.up_to(20).tolist() == [2, 3, 5, 7, 11, 13, 17, 19]
    assert table.smallest_at_least(90) == 97
    assert table.smallest_at_least(98) is None
    assert 97 in table and 91 not in table


def test_query_beyond_limit_is_configuration_error():
    with pytest.raises(ConfigurationError):
        primes_up_to(50).is_prime(51)


def test_table_covering_rounds_up():
    table = table_covering(100)
    assert table.limit >= 100
    assert table.is_prime(97)


@pytest.mark.parametrize("theta, expected", [(10, 5), (2, 2), (1.5, None), (0.5, None), (7.9, 5)])
def test_prime_in_bertrand_interval_examples(theta, expected):
    assert prime_in_bertrand_interval(theta) == expected


@given(st.floats(min_value=2, max_value=10 ** 5, allow_nan=False))
def test_bertrand_prime_lies_in_interval(theta):
    p = prime_in_bertrand_interval(theta)
    assert p is not None
    assert theta / 2 <= p <= theta


def test_bertrand_gaps_vectorized():
    thetas = np.arange(2.0, 5000.0, 0.37)
    assert bertrand_gaps(table_covering(5000), thetas).size == 0
    below = np.array([0.5, 1.2, 1.9])
    assert bertrand_gaps(table_covering(64), below).size == 3


def test_sieve_cap_from_environment(monkeypatch):
    monkeypatch.setenv(config.SIEVE_LIMIT_ENV, "1000")
    with pytest.raises(ConfigurationError) as excinfo:
        primes_up_to(1237)
    assert excinfo.value.exit_code == ExitCode.USAGE


@pytest.mark.parametrize("raw", ["abc", "0", "-3"])
def test_invalid_sieve_cap(monkeypatch, raw):
    monkeypatch.setenv(config.SIEVE_LIMIT_ENV, raw)
    with pytest.raises(ConfigurationError):
        config.get_sieve_cap()
