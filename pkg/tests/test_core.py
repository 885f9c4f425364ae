import warnings

import pytest

from mimorate.core import (ConfigError, IllConditionedWarning, Scheme, SystemConfig, db_to_linear,
                           linear_to_db, validate_config)


def test_valid_zf_config_is_returned_unchanged():
    cfg = SystemConfig(m=24, k=20, pt=1.0, pu=1.0, trials=100, seed=7)
    assert validate_config(cfg, Scheme.ZF) is cfg


def test_zf_rejects_more_users_than_antennas():
    with pytest.raises(ConfigError, match="k exceeds m"):
        validate_config(SystemConfig(m=4, k=5), Scheme.ZF)


@pytest.mark.parametrize("scheme", [Scheme.MRT, Scheme.MRC, None])
def test_matched_filters_accept_k_above_m(scheme):
    cfg = SystemConfig(m=4, k=5)
    assert validate_config(cfg, scheme) is cfg


def test_square_zf_warns():
    with pytest.warns(IllConditionedWarning):
        validate_config(SystemConfig(m=8, k=8), Scheme.ZF)


@pytest.mark.parametrize("field,value", [
    ("m", 0), ("k", -1), ("pt", 0.0), ("pu", -2.0), ("trials", 0), ("seed", -1), ("seed", 2**64),
    ("pt", float("nan")),
])
def test_error_names_the_field(field, value):
    cfg = SystemConfig(m=4, k=2).replace(**{field: value})
    with pytest.raises(ConfigError, match=field):
        validate_config(cfg)


def test_idempotent():
    cfg = SystemConfig(m=10, k=3, trials=5, seed=1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert validate_config(validate_config(cfg, Scheme.ZF), Scheme.ZF) == cfg


def test_db_roundtrip():
    assert db_to_linear(0.0) == 1.0
    assert linear_to_db(db_to_linear(-13.8)) == pytest.approx(-13.8)
