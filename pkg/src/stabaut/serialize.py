"""JSON encodings for points, elements, automorphisms and subshifts."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .codes import Atom, BlockCode, Element, ShiftPower, SimpleAuto
from .psi import Composite, GroupAutomorphism, Inner, Profinite, ProfiniteInteger, Reflection
from .subshifts import Subshift
from .symbolic import PeriodicPoint
from .twotrack import TopShift, TrackGadget, trackswap


def load_json(source: str) -> Any:
    """Parse inline JSON, or read it from a file path."""
    text = source.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    return json.loads(Path(source).read_text())


def _word(value, n: int) -> tuple[int, ...]:
    if isinstance(value, str):
        return tuple(int(c, 36) for c in value)
    return tuple(int(a) for a in value)


def atom_from_dict(d: dict, n: int | None = None) -> list[Atom]:
    n = int(d.get("alphabet", n))
    kind = d.get("kind")
    if kind is None:
        kind = "code" if "rule" in d else "simple" if "perm" in d else None
    if kind == "shift":
        return [ShiftPower(n, int(d["power"]))]
    if kind == "simple":
        return [SimpleAuto(n, int(d["level"]), d["perm"])]
    if kind == "code":
        return [BlockCode(n, int(d["level"]), int(d["radius"]), d["rule"], d["inverse_rule"],
                          d.get("inverse_radius"), d.get("label", ""))]
    if kind == "g":
        return [TrackGadget(n, _word(d["w"], n), d["pi"], int(d.get("ell", 1)))]
    if kind == "gamma":
        return [TopShift(n, int(d.get("power", 1)), int(d.get("ell", 1)))]
    if kind == "trackswap":
        return list(trackswap(n, int(d.get("ell", 1))).atoms)
    raise ValueError(f"unknown atom kind {kind!r}")


def element_from_dict(d: dict | list, n: int | None = None) -> Element:
    if isinstance(d, list):
        d = {"word": d}
    if "word" in d:
        n = int(d.get("alphabet", n))
        atoms = [a for item in d["word"] for a in atom_from_dict(item, n)]
        return Element(atoms, n=n, level=d.get("level"))
    atoms = atom_from_dict(d, n)
    return Element(atoms, n=atoms[0].n)


def element_to_dict(f) -> dict:
    if isinstance(f, Atom):
        return f.to_dict()
    return f.to_dict()


def psi_from_dict(d: dict, n: int | None = None) -> GroupAutomorphism:
    n = d.get("alphabet", n)
    kind = d["kind"]
    if kind == "inner":
        return Inner(element_from_dict(d["conjugator"], n))
    if kind == "reflection":
        return Reflection(int(n))
    if kind == "profinite":
        if "integer" in d:
            a = ProfiniteInteger(integer=int(d["integer"]))
        elif d.get("series") == "factorial":
            a = ProfiniteInteger.factorial_series()
        else:
            a = ProfiniteInteger(table={int(m): int(v) for m, v in d["residues"].items()})
        return Profinite(int(n), a)
    if kind == "composite":
        return Composite([psi_from_dict(p, n) for p in d["parts"]])
    raise ValueError(f"unknown automorphism kind {kind!r}")


def point_from_arg(text: str, n: int | None = None) -> PeriodicPoint:
    text = text.strip()
    if text.startswith("{") or text.endswith(".json"):
        return PeriodicPoint.from_dict(load_json(text))
    if n is None:
        raise ValueError("a bare block needs --alphabet")
    return PeriodicPoint.from_string(n, text)


def subshift_from_dict(d: dict) -> Subshift:
    return Subshift.from_dict(d)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, PeriodicPoint):
        return obj.to_dict()
    if isinstance(obj, (Element, Atom, GroupAutomorphism, Subshift)):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "numerator") and hasattr(obj, "denominator") and not isinstance(obj, int):
        return str(obj)
    return obj
