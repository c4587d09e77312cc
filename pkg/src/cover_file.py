"""
Load and save cover descriptions as JSON.

A file cover carries the abstract data of an abelian cover X -> Y' -> Y:
groups, the Gal(F_1/H_A) marker, ramified places with inertia and
Frobenius, and an unramified place stream complete through ``degree_bound``.
Validation errors name the offending record.
"""
import json
from typing import Any, Dict, List, Sequence

import sympy

from src.cache import stable_hash
from src.classes.abelian_group import AbelianGroup
from src.classes.cover import CarlitzData, CoverDescription, RamifiedPlace, UnramifiedPlace
from src.errors import ValidationError


def _group_dict(group: AbelianGroup) -> dict:
    out = {"invariants": list(group.invariants)}
    if group.labels:
        out["labels"] = list(group.labels)
    return out


def cover_to_dict(cd: CoverDescription) -> Dict[str, Any]:
    data = {
        "field": {"p": cd.p, "r": cd.r},
        "H": _group_dict(cd.H),
        "G": _group_dict(cd.G),
        "gal_F1_over_HA": {"generators": [list(h) for h in cd.gal_F1_over_HA]},
        "S": [
            {
                "label": v.label,
                "degree": v.degree,
                "inertia_H": [list(h) for h in v.inertia_H],
                "inertia_G": [list(g) for g in v.inertia_G],
                "frob_H": list(v.frob_H),
                "frob_G": list(v.frob_G),
                "totally_ramified": v.totally_ramified,
            }
            for v in cd.S
        ],
        "degree_bound": cd.degree_bound,
        "places": [
            {"degree": w.degree, "frob_H": list(w.frob_H), "frob_G": list(w.frob_G), "label": w.label}
            for w in cd.places
        ],
    }
    if cd.stabilization_degree is not None:
        data["stabilization_degree"] = cd.stabilization_degree
    if cd.carlitz is not None:
        data["carlitz"] = {"q": cd.carlitz.q, "prime": list(cd.carlitz.prime), "level": cd.carlitz.level}
    return data


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ValidationError(f"{where}: missing field '{key}'")
    return data[key]


def _group(data: dict, key: str) -> AbelianGroup:
    block = _require(data, key, "cover")
    invariants = _require(block, "invariants", key)
    if not isinstance(invariants, list) or not all(isinstance(d, int) and d >= 1 for d in invariants):
        raise ValidationError(f"{key}: invariants must be a list of positive integers, got {invariants}")
    return AbelianGroup(tuple(invariants), tuple(block.get("labels", ())))


def _element(group: AbelianGroup, name: str, value: Sequence[int], where: str):
    if not isinstance(value, list) or not group.contains(value):
        raise ValidationError(f"{where}: {name} {value} outside group invariants {list(group.invariants)}")
    return tuple(value)


def cover_from_dict(data: Dict[str, Any]) -> CoverDescription:
    """Build and validate a CoverDescription from its JSON form."""
    field = _require(data, "field", "cover")
    p, r = _require(field, "p", "field"), _require(field, "r", "field")
    if not sympy.isprime(p) or r < 1:
        raise ValidationError(f"field: p={p}, r={r} does not describe a finite field")
    H = _group(data, "H")
    G = _group(data, "G")
    if H.order % p == 0:
        raise ValidationError(f"H: p={p} divides |H| = {H.order}")
    if G.order != p ** sympy.multiplicity(p, G.order):
        raise ValidationError(f"G: |G| = {G.order} is not a power of p={p}")

    gal = _require(_require(data, "gal_F1_over_HA", "cover"), "generators", "gal_F1_over_HA")
    if not gal:
        raise ValidationError("gal_F1_over_HA: at least one generator is required")
    gal = tuple(_element(H, "generator", h, "gal_F1_over_HA") for h in gal)

    S: List[RamifiedPlace] = []
    labels = set()
    for i, entry in enumerate(_require(data, "S", "cover")):
        where = f"S[{i}]"
        label = str(_require(entry, "label", where))
        where = f"S[{i}] ({label})"
        if label in labels:
            raise ValidationError(f"{where}: duplicate label")
        labels.add(label)
        degree = _require(entry, "degree", where)
        if not isinstance(degree, int) or degree < 1:
            raise ValidationError(f"{where}: degree must be a positive integer, got {degree}")
        S.append(RamifiedPlace(
            label=label,
            degree=degree,
            inertia_H=tuple(_element(H, "inertia_H", h, where) for h in entry.get("inertia_H", [])),
            inertia_G=tuple(_element(G, "inertia_G", g, where) for g in entry.get("inertia_G", [])),
            frob_H=_element(H, "frob_H", _require(entry, "frob_H", where), where),
            frob_G=_element(G, "frob_G", _require(entry, "frob_G", where), where),
            totally_ramified=bool(entry.get("totally_ramified", False)),
        ))
    marked = [v.label for v in S if v.totally_ramified]
    if len(marked) != 1:
        raise ValidationError(f"S: exactly one entry must be totally_ramified, found {marked}")

    D = _require(data, "degree_bound", "cover")
    if not isinstance(D, int) or D < 1:
        raise ValidationError(f"degree_bound must be a positive integer, got {D}")
    places: List[UnramifiedPlace] = []
    for i, entry in enumerate(_require(data, "places", "cover")):
        where = f"places[{i}]"
        degree = _require(entry, "degree", where)
        if not isinstance(degree, int) or not 1 <= degree <= D:
            raise ValidationError(f"{where}: degree {degree} outside 1..{D}")
        places.append(UnramifiedPlace(
            degree,
            _element(H, "frob_H", _require(entry, "frob_H", where), where),
            _element(G, "frob_G", _require(entry, "frob_G", where), where),
            str(entry.get("label", "")),
        ))

    stabilization = data.get("stabilization_degree")
    if stabilization is not None and (not isinstance(stabilization, int) or stabilization < 1):
        raise ValidationError(f"stabilization_degree must be a positive integer, got {stabilization}")
    carlitz = data.get("carlitz")
    if carlitz is not None:
        carlitz = CarlitzData(int(carlitz["q"]), tuple(int(c) for c in carlitz["prime"]), int(carlitz["level"]))

    return CoverDescription(
        p=p, r=r, H=H, G=G, gal_F1_over_HA=gal, S=tuple(S), degree_bound=D,
        places=tuple(places), stabilization_degree=stabilization, carlitz=carlitz,
    )


def load_cover(path: str) -> CoverDescription:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ValidationError(f"cover file '{path}' not found") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"cover file '{path}' is not valid JSON: {e}") from e
    return cover_from_dict(data)


def save_cover(cd: CoverDescription, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(cover_to_dict(cd), f, indent=2, sort_keys=True)
        f.write("\n")


def cover_hash(cd: CoverDescription) -> str:
    return stable_hash(cover_to_dict(cd))
