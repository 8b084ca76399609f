import json

import pytest

from vcsp.errors import InstanceFormatError
from vcsp.generators import grid_left, is_right, path_left, vc_right
from vcsp.jsonio import (dumps_instance, instance_to_obj, loads_instance,
                         parse_instance)
from vcsp.rational import Q, rat
from vcsp.structures import value


def sample_obj():
    return {
        "signature": [{"name": "f", "arity": 2}, {"name": "u", "arity": 1}],
        "left": {
            "domain": ["v1", "v2"],
            "default": "0",
            "tuples": [
                {"sym": "f", "args": ["v1", "v2"], "value": "1"},
                {"sym": "u", "args": ["v1"], "value": "1/2"},
            ],
        },
        "right": {
            "domain": ["0", "1"],
            "tables": [
                {"sym": "f", "default": "0",
                 "entries": [{"args": ["0", "0"], "value": "inf"}]},
                {"sym": "u", "default": "0",
                 "entries": [{"args": ["1"], "value": "1"}]},
            ],
        },
    }


def test_parse_sample():
    A, C = parse_instance(sample_obj())
    assert A.domain == ("v1", "v2")
    assert A.get("f", ("v1", "v2")) == rat(1)
    assert A.get("u", ("v1",)) == rat(Q(1, 2))
    assert C.get("f", ("0", "0")).is_plus_inf
    assert C.get("f", ("1", "0")).is_zero()
    assert value(A, C, {"v1": "1", "v2": "0"}) == rat(Q(1, 2))


def test_round_trip_identity():
    for A, C in [(path_left(4), vc_right()), (grid_left(2, 3), is_right())]:
        A2, C2 = loads_instance(dumps_instance(A, C))
        assert A2 == A
        assert C2 == C


def test_dumps_is_stable():
    a = dumps_instance(path_left(3), vc_right())
    b = dumps_instance(path_left(3), vc_right())
    assert a == b
    json.loads(a)  # well-formed
    assert a.endswith("\n")


def _broken(mutate):
    obj = sample_obj()
    mutate(obj)
    return obj


@pytest.mark.parametrize("mutate", [
    lambda o: o.pop("signature"),
    lambda o: o.update(extra=1),
    lambda o: o["signature"].__setitem__(0, {"name": "f", "arity": "2"}),
    lambda o: o["left"].pop("default"),
    lambda o: o["left"].update(default="1"),
    lambda o: o["left"]["domain"].append("v1"),
    lambda o: o["left"]["domain"].clear(),
    lambda o: o["left"]["tuples"].append(
        {"sym": "f", "args": ["v1", "v2"], "value": "2"}),
    lambda o: o["left"]["tuples"].append(
        {"sym": "g", "args": ["v1"], "value": "1"}),
    lambda o: o["left"]["tuples"].append(
        {"sym": "f", "args": ["v1", "zz"], "value": "1"}),
    lambda o: o["left"]["tuples"].append(
        {"sym": "f", "args": ["v2"], "value": "1"}),
    lambda o: o["left"]["tuples"].append(
        {"sym": "u", "args": ["v2"], "value": "-1"}),
    lambda o: o["left"]["tuples"].append(
        {"sym": "u", "args": ["v2"], "value": "inf"}),
    lambda o: o["right"]["tables"].pop(),
    lambda o: o["right"]["tables"].append(
        {"sym": "u", "default": "0", "entries": []}),
    lambda o: o["right"]["tables"][0]["entries"].append(
        {"args": ["1", "1"], "value": "-inf"}),
    lambda o: o["right"]["tables"][0]["entries"][0].update(value="0.5"),
    lambda o: o["right"]["tables"][0]["entries"][0].__setitem__("args", ["0", 0]),
])
def test_malformed_instances_rejected(mutate):
    with pytest.raises(InstanceFormatError):
        parse_instance(_broken(mutate))


def test_not_json_rejected():
    with pytest.raises(InstanceFormatError):
        loads_instance("{nope")


def test_to_obj_sorts_entries():
    A, C = parse_instance(sample_obj())
    obj = instance_to_obj(A, C)
    syms = [t["sym"] for t in obj["right"]["tables"]]
    assert syms == sorted(syms)
    # left tuples grouped by symbol then args
    tl = obj["left"]["tuples"]
    assert tl == sorted(tl, key=lambda e: (e["sym"], e["args"]))


def test_save_and_load(tmp_path):
    from vcsp.jsonio import load_instance, save_instance
    p = tmp_path / "inst.json"
    save_instance(p, grid_left(2, 2), vc_right())
    A, C = load_instance(p)
    assert len(A.domain) == 4
    assert C.get("u", ("1",)) == rat(1)
