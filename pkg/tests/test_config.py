import math

import pytest

from algorithms.config import (
    AlgoConfig,
    a3_round_cap,
    auto_m_bar,
    clamp_eps,
    finding_eps,
    finding_repetitions,
    listing_eps,
    listing_repetitions,
    log2n,
    x_probability,
)
from errors import ConfigurationError


def test_log2n():
    assert log2n(1) == 0.0
    assert log2n(1024) == 10.0


def test_clamp_eps():
    assert clamp_eps(-0.2) == (0.0, True)
    assert clamp_eps(0.4) == (0.4, False)
    assert clamp_eps(1.3) == (1.0, True)


def test_finding_eps():
    assert finding_eps(1) == (0.0, True)
    assert finding_eps(4)[0] == pytest.approx(0.0, abs=1e-12)
    assert finding_eps(2**16) == (pytest.approx(1 / 6), False)


def test_listing_eps():
    assert listing_eps(32) == (0.0, True)
    assert listing_eps(2**256) == (pytest.approx(0.4375), False)


def test_derived_quantities():
    assert auto_m_bar(16, 0.0) == math.sqrt(54 * 16 * 4)
    assert auto_m_bar(1, 0.5) == 1.0
    assert x_probability(16, 0.5) == 1 / 36
    assert a3_round_cap(16, 0.0, 4.0) == 128
    assert finding_repetitions(0.1, 4.0) == 14
    assert finding_repetitions(0.9, 0.01) == 1
    assert listing_repetitions(16, 3.0) == 12
    assert listing_repetitions(1, 3.0) == 1


@pytest.mark.parametrize(
    "settings",
    [{"eps": 1.5}, {"eps": -0.1}, {"m_bar": 0}, {"c_stop": 0}, {"delta": 1.0}, {"delta": 0.0}, {"log_base": 10}],
)
def test_algo_config_rejects(settings):
    with pytest.raises(ConfigurationError):
        AlgoConfig(**settings)


def test_algo_config_documents():
    config = AlgoConfig(eps=0.25, c_rep_list=2.0)
    assert AlgoConfig.from_dict(config.to_dict()) == config
    assert config.m_bar_for(16, 0.0) == auto_m_bar(16, 0.0)
    assert AlgoConfig(m_bar=5.0).m_bar_for(16, 0.0) == 5.0
    with pytest.raises(ConfigurationError):
        AlgoConfig.from_dict({"epsilon": 0.2})
