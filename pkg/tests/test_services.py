import json
import logging

import pytest

from ffzeta.exceptions import InvalidInputError
from ffzeta.services import cache_services
from ffzeta.services.cache_services import CACHE_FILE, PowerSumCache, cache_key
from ffzeta.services.fields import FieldSpec, ZpExp
from ffzeta.services.metrics_services import push_metric
from ffzeta.services.parallel_services import thread_count
from ffzeta.services.polyring import APoly
from ffzeta.services.validation_services import (build_field, parse_apoly,
                                                 parse_digits, parse_indices,
                                                 parse_int_list, parse_laurent,
                                                 validate_budget)
from ffzeta.services.zeta import power_sum, power_sum_enumerated

F2 = FieldSpec.default(2, 1)
F3 = FieldSpec.default(3, 1)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FFZETA_CACHE", str(tmp_path))
    monkeypatch.setattr(cache_services, "_caches", {})
    return tmp_path


def test_cache_is_written_and_reused(cache_dir, caplog):
    caplog.set_level(logging.INFO, logger="ffzeta.metrics")
    first = power_sum(F3, 2, 5)
    lines = (cache_dir / CACHE_FILE).read_text().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["key"] == cache_key(F3, 2, 5)
    assert power_sum(F3, 2, 5) == first
    assert len((cache_dir / CACHE_FILE).read_text().splitlines()) == 1
    assert "PowerSumCacheHit" in caplog.text


def test_corrupted_cache_lines_are_ignored(cache_dir, caplog):
    caplog.set_level(logging.INFO, logger="ffzeta.metrics")
    key = cache_key(F2, 1, 1)
    with open(cache_dir / CACHE_FILE, "w", encoding="utf-8") as f:
        f.write("not json\n")
        f.write(json.dumps({"key": key, "coeffs": [0, 1], "check": "bogus"}) + "\n")
    assert power_sum(F2, 1, 1) == APoly.one(F2)
    assert "CacheEntryRejected" in caplog.text


def test_cache_reload_from_disk(tmp_path):
    store = PowerSumCache(str(tmp_path))
    store.put("k", [1, 0, 1], d=2)
    assert PowerSumCache(str(tmp_path)).get("k") == [1, 0, 1]
    assert PowerSumCache(str(tmp_path)).get("missing") is None


def test_cache_off_by_default(monkeypatch):
    monkeypatch.delenv("FFZETA_CACHE", raising=False)
    assert cache_services.get_cache() is None


def test_thread_count(monkeypatch):
    monkeypatch.delenv("FFZETA_THREADS", raising=False)
    assert thread_count() == 1
    monkeypatch.setenv("FFZETA_THREADS", "0")
    with pytest.raises(InvalidInputError):
        thread_count()
    monkeypatch.setenv("FFZETA_THREADS", "many")
    with pytest.raises(InvalidInputError):
        thread_count()


def test_threads_do_not_change_results(monkeypatch):
    monkeypatch.setenv("FFZETA_THREADS", "1")
    serial = power_sum_enumerated(F3, 3, 7)
    monkeypatch.setenv("FFZETA_THREADS", "3")
    assert power_sum_enumerated(F3, 3, 7) == serial


def test_push_metric_logs_sorted_json(caplog):
    caplog.set_level(logging.INFO, logger="ffzeta.metrics")
    push_metric({"event": "Test", "b": 2, "a": 1})
    record = caplog.records[-1]
    assert record.name == "ffzeta.metrics"
    assert json.loads(record.getMessage()) == {"event": "Test", "a": 1, "b": 2}
    assert record.getMessage().startswith('{"a": 1')


def test_parse_int_list():
    assert parse_int_list("-3, 1,0", "indices") == (-3, 1, 0)
    with pytest.raises(InvalidInputError) as err:
        parse_int_list("1,x", "indices")
    assert err.value.detail["position"] == 1
    with pytest.raises(InvalidInputError):
        parse_indices("")


def test_parse_digits():
    assert parse_digits("1,0,1", 2) == ZpExp(2, (1, 0, 1))
    with pytest.raises(InvalidInputError):
        parse_digits("2", 2)


def test_build_field():
    assert build_field(2, 2).q == 4
    assert build_field(2, 2, "[1, 1, 1]").modulus == (1, 1, 1)
    assert build_field(2, 2, [1, 1, 1]).q == 4
    with pytest.raises(InvalidInputError):
        build_field(2, 2, "[1, 1")
    with pytest.raises(InvalidInputError):
        build_field(2, 2, [1, 0, 1])
    with pytest.raises(InvalidInputError):
        build_field(4)


def test_parse_apoly_and_laurent():
    assert parse_apoly(F3, '{"coeffs": [0, 1]}') == APoly.theta(F3)
    x = parse_laurent(F3, '{"val": -1, "prec": 5, "coeffs": [1]}')
    assert x.val == -1 and x.prec == 5
    with pytest.raises(InvalidInputError) as err:
        parse_apoly(F3, '{"coefs": [0, 1]}')
    assert err.value.detail["errors"][0]["loc"] == ["coeffs"]


def test_validate_budget():
    assert validate_budget(None) is None
    assert validate_budget(5) == 5
    with pytest.raises(InvalidInputError):
        validate_budget(0)
