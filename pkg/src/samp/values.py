"""Runtime values.

Samp values map onto native Python objects: int, float, bool, str,
None (null), list (array), dict (record, insertion ordered) and FuncRef.
Bools are never treated as ints; helpers here make that distinction
explicit because Python's bool subclasses int.
"""

from __future__ import annotations

from typing import Union


class FuncRef:
    """Reference to a declared function; equal only to itself."""

    __slots__ = ("name", "decl")

    def __init__(self, name: str, decl):
        self.name = name
        self.decl = decl

    def __eq__(self, other):
        return isinstance(other, FuncRef) and other.decl is self.decl

    def __hash__(self):
        return id(self.decl)

    def __repr__(self):
        return f"FuncRef({self.name!r})"


Value = Union[int, float, bool, str, None, list, dict, FuncRef]

_NUMERIC = (int, float)


def is_number(v) -> bool:
    return type(v) in _NUMERIC


def type_name(v) -> str:
    t = type(v)
    if t is bool:
        return "bool"
    if t is int:
        return "int"
    if t is float:
        return "float"
    if t is str:
        return "string"
    if v is None:
        return "null"
    if t is list:
        return "array"
    if t is dict:
        return "record"
    if t is FuncRef:
        return "function"
    return t.__name__


def values_equal(a, b) -> bool:
    """Structural equality; arrays and records compare element/field-wise."""
    ta, tb = type(a), type(b)
    if ta is bool or tb is bool:
        return ta is tb and a is b
    if ta in _NUMERIC and tb in _NUMERIC:
        return a == b
    if ta is not tb:
        return False
    if ta is list:
        if len(a) != len(b):
            return False
        return all(values_equal(x, y) for x, y in zip(a, b))
    if ta is dict:
        if a.keys() != b.keys():
            return False
        return all(values_equal(a[k], b[k]) for k in a)
    return a == b
