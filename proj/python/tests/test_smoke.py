from fractions import Fraction

import pytest

import cumpoly


def poisson(order, rate=1):
    return {"d": 1, "order": order, "entries": {str(k): str(rate) for k in range(1, order + 1)}}


def test_bell_numbers():
    m = cumpoly.moments_from_cumulants(poisson(6))
    assert m["kind"] == "moment"
    assert [m["entries"][str(k)] for k in range(1, 7)] == [1, 2, 5, 15, 52, 203]
    assert all(isinstance(m["entries"][str(k)], Fraction) for k in range(1, 7))


def test_round_trip_exact():
    c = {"d": 2, "order": 3, "entries": {"1,0": "1/2", "0,1": "-2/3", "2,0": "3", "1,1": "1/7", "0,2": "5",
                                         "3,0": "0", "2,1": "-1/5", "1,2": "2", "0,3": "9/4"}}
    back = cumpoly.cumulants_from_moments(cumpoly.moments_from_cumulants(c))
    assert back["entries"]["2,1"] == Fraction(-1, 5)
    assert back["entries"]["0,3"] == Fraction(9, 4)


def test_partitions_of_2_1():
    p = cumpoly.partitions((2, 1))
    assert p["count"] == 4
    assert [q["columns"] for q in p["partitions"]] == [["2,1"], ["0,1", "2,0"], ["1,0", "1,1"], ["0,1", "1,0", "1,0"]]


def test_symbolic_cumulant_polynomial():
    c = {"d": 1, "order": 2, "entries": {"1": "a", "2": "b"}}
    p = cumpoly.cumulant_polynomial(2, c)
    assert sorted(p["vars"]) == ["a", "b", "y"]
    assert len(p["terms"]) == 2


def test_hermite_univariate():
    h = cumpoly.hermite(2, [["1"]])
    assert sorted(h["terms"].values()) == [-1, 1]


def test_cli_in_process():
    out = cumpoly.run("c2m", "--cumulants", "-", stdin='{"d":1,"order":2,"entries":{"1":"1","2":"1"}}')
    assert out["entries"]["2"] == "2"


def test_cli_errors_raise():
    with pytest.raises(cumpoly.CliError) as info:
        cumpoly.run("c2m", "--cumulants", "{not json")
    assert info.value.code == 2


def test_malformed_table_rejected():
    with pytest.raises(ValueError):
        cumpoly.moments_from_cumulants({"d": 1, "order": 2, "entries": {"1": [1, 2]}})
