"""Strict reader/writer for the JSON instance format.

An instance file carries a signature, a sparse left-hand structure (one
shared default, which must be "0"), and a total right-hand structure with a
per-symbol default.  Values are strings: "p", "p/q", "inf", "-inf".  Unknown
keys are rejected rather than ignored, so typos fail loudly.
"""

import json

from .errors import InstanceFormatError
from .rational import ZERO, format_value, parse_value
from .structures import Signature, ValuedStructure

__all__ = ["parse_instance", "loads_instance", "load_instance",
           "instance_to_obj", "dumps_instance", "save_instance"]


def _require_keys(obj, keys, where):
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"{where}: expected an object")
    extra = set(obj) - set(keys)
    if extra:
        raise InstanceFormatError(f"{where}: unknown keys {sorted(extra)}")
    missing = set(keys) - set(obj)
    if missing:
        raise InstanceFormatError(f"{where}: missing keys {sorted(missing)}")


def _parse_domain(lst, where):
    if not isinstance(lst, list) or not lst:
        raise InstanceFormatError(f"{where}: domain must be a non-empty list")
    for v in lst:
        if not isinstance(v, str) or not v:
            raise InstanceFormatError(f"{where}: domain ids must be non-empty strings")
    if len(set(lst)) != len(lst):
        raise InstanceFormatError(f"{where}: duplicate domain ids")
    return list(lst)


def _parse_args(args, where):
    if not isinstance(args, list):
        raise InstanceFormatError(f"{where}: args must be a list")
    for a in args:
        if not isinstance(a, str):
            raise InstanceFormatError(f"{where}: args must be strings")
    return tuple(args)


def _parse_val(s, where):
    try:
        return parse_value(s)
    except ValueError as e:
        raise InstanceFormatError(f"{where}: {e}") from None


def parse_instance(obj):
    """Dict -> (left ValuedStructure, right ValuedStructure)."""
    _require_keys(obj, ("signature", "left", "right"), "instance")

    if not isinstance(obj["signature"], list) or not obj["signature"]:
        raise InstanceFormatError("signature: must be a non-empty list")
    syms = []
    for ent in obj["signature"]:
        _require_keys(ent, ("name", "arity"), "signature entry")
        if not isinstance(ent["arity"], int):
            raise InstanceFormatError("signature entry: arity must be an integer")
        syms.append((ent["name"], ent["arity"]))
    sig = Signature(syms)

    left = obj["left"]
    _require_keys(left, ("domain", "tuples", "default"), "left")
    ldom = _parse_domain(left["domain"], "left")
    if _parse_val(left["default"], "left default") != ZERO:
        raise InstanceFormatError('left: default must be "0" (sparse weights)')
    ltables = {name: {} for name in sig.names}
    if not isinstance(left["tuples"], list):
        raise InstanceFormatError("left: tuples must be a list")
    for ent in left["tuples"]:
        _require_keys(ent, ("sym", "args", "value"), "left tuple")
        name = ent["sym"]
        if name not in sig:
            raise InstanceFormatError(f"left tuple: unknown symbol {name!r}")
        args = _parse_args(ent["args"], "left tuple")
        if args in ltables[name]:
            raise InstanceFormatError(f"left tuple: duplicate entry ({name}, {list(args)})")
        ltables[name][args] = _parse_val(ent["value"], "left tuple")
    A = ValuedStructure(sig, ldom, ltables)
    A.validate_left()

    right = obj["right"]
    _require_keys(right, ("domain", "tables"), "right")
    rdom = _parse_domain(right["domain"], "right")
    if not isinstance(right["tables"], list):
        raise InstanceFormatError("right: tables must be a list")
    rtables = {}
    rdefaults = {}
    for tab in right["tables"]:
        _require_keys(tab, ("sym", "default", "entries"), "right table")
        name = tab["sym"]
        if name not in sig:
            raise InstanceFormatError(f"right table: unknown symbol {name!r}")
        if name in rtables:
            raise InstanceFormatError(f"right table: duplicate symbol {name!r}")
        rdefaults[name] = _parse_val(tab["default"], "right default")
        entries = {}
        if not isinstance(tab["entries"], list):
            raise InstanceFormatError("right table: entries must be a list")
        for ent in tab["entries"]:
            _require_keys(ent, ("args", "value"), "right entry")
            args = _parse_args(ent["args"], "right entry")
            if args in entries:
                raise InstanceFormatError(f"right entry: duplicate ({name}, {list(args)})")
            entries[args] = _parse_val(ent["value"], "right entry")
        rtables[name] = entries
    missing = set(sig.names) - set(rtables)
    if missing:
        raise InstanceFormatError(f"right: no table for symbols {sorted(missing)}")
    C = ValuedStructure(sig, rdom, rtables, rdefaults)
    C.right_modes()
    return A, C


def loads_instance(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"not valid JSON: {e}") from None
    return parse_instance(obj)


def load_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())


def instance_to_obj(A: ValuedStructure, C: ValuedStructure):
    """(left, right) -> plain dict, deterministically ordered."""
    if A.sig != C.sig:
        raise InstanceFormatError("left/right signature mismatch")
    for v in A.domain + C.domain:
        if not isinstance(v, str):
            raise InstanceFormatError(f"only string ids serialise: {v!r}")
    sig_obj = [{"name": n, "arity": a} for n, a in A.sig.symbols]
    tuples = []
    for name, _ in A.sig.symbols:
        entries = A.tables[name]
        for args in sorted(entries, key=lambda t: t):
            tuples.append({"sym": name, "args": list(args),
                           "value": format_value(entries[args])})
    left_obj = {"domain": list(A.domain), "tuples": tuples, "default": "0"}
    tables = []
    for name, _ in C.sig.symbols:
        entries = C.tables[name]
        ents = [{"args": list(args), "value": format_value(entries[args])}
                for args in sorted(entries, key=lambda t: t)]
        tables.append({"sym": name, "default": format_value(C.defaults[name]),
                       "entries": ents})
    right_obj = {"domain": list(C.domain), "tables": tables}
    return {"signature": sig_obj, "left": left_obj, "right": right_obj}


def dumps_instance(A, C):
    return json.dumps(instance_to_obj(A, C), indent=1, sort_keys=False) + "\n"


def save_instance(path, A, C):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(A, C))
