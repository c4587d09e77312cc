import os
import time
from itertools import combinations, product
from typing import List, Sequence, Set, Tuple

from src import howell
from src.classes.abelian_group import AbelianGroup
from src.classes.group_ring_elem import GroupRingElem
from src.fitting import PresentedModule, generic_fitting
from src.group_ring import IdealHandle, ideal_equal


P, M = 3, 2
GROUP = AbelianGroup((3,))


def _elem(a: int, b: int, c: int) -> GroupRingElem:
    return GroupRingElem.from_dict(GROUP, {(0,): a, (1,): b, (2,): c})


def _module(rows: Sequence[Sequence[GroupRingElem]], generators: int) -> PresentedModule:
    return PresentedModule(GROUP, 1, P, M, generators, tuple(tuple(r) for r in rows))


def _minors(rows: Sequence[Sequence[GroupRingElem]], r: int) -> List[GroupRingElem]:
    """1 x 1 and 2 x 2 minors written out directly."""
    if r == 1:
        return [row[0] for row in rows]
    return [a[0] * b[1] - a[1] * b[0] for a, b in combinations(rows, 2)]


def _span_closure(generators: Sequence[GroupRingElem]) -> Set[Tuple[int, ...]]:
    """Every element of the ideal, by breadth-first closure of group translates under addition."""
    modulus = P ** M
    steps = [
        tuple(int(x) for x in g.translate(sigma).residue_vector(P, M))
        for g in generators for sigma in GROUP.elements()
    ]
    seen = {(0,) * GROUP.order}
    frontier = list(seen)
    while frontier:
        found = []
        for v in frontier:
            for w in steps:
                s = tuple((a + b) % modulus for a, b in zip(v, w))
                if s not in seen:
                    seen.add(s)
                    found.append(s)
        frontier = found
    return seen


def _members(ideal: IdealHandle) -> Set[Tuple[int, ...]]:
    basis, pivots = ideal.howell()
    return {
        v for v in product(range(P ** M), repeat=GROUP.order)
        if howell.in_span(v, basis, pivots, P, M)
    }


def generic_fitting_oracle(quick: bool, verbosity: int, log_queue) -> Tuple[dict, float]:
    """
    Minors-based Fitting ideals over Z/9[Z/3]: the three textbook
    presentations, then full element sets against exhaustive enumeration.
    """
    pid = os.getpid()
    start_time = time.perf_counter()
    one_minus = _elem(1, -1, 0)
    three = _elem(3, 0, 0)
    norm = _elem(1, 1, 1)
    one_plus = _elem(1, 1, 0)
    cases = []
    try:
        trivial = [
            ("R/(a)", _module([[one_minus]], 1), [one_minus]),
            ("R/(a) + R/(b)", _module([[one_minus, _elem(0, 0, 0)], [_elem(0, 0, 0), three]], 2), [one_minus * three]),
            ("R", _module([], 1), []),
        ]
        for name, module, expected in trivial:
            equal = ideal_equal(generic_fitting(module), IdealHandle.make(GROUP, 1, P, M, expected))
            cases.append({"presentation": name, "ok": equal})

        exhaustive = [
            ("(1-s, 3)", [[one_minus], [three]], 1),
            ("(n, 1+s)", [[norm], [one_plus]], 1),
            ("2x2 three relations", [[one_minus, three], [norm, one_plus], [three, three]], 2),
        ]
        if quick:
            exhaustive = exhaustive[:2]
        for name, rows, r in exhaustive:
            fitted = _members(generic_fitting(_module(rows, r)))
            enumerated = _span_closure(_minors(rows, r))
            cases.append({"presentation": name, "size": len(enumerated), "ok": fitted == enumerated})
            if verbosity >= 2:
                log_queue.put(f"[{pid}] [DEBUG] {name}: {len(fitted)} vs {len(enumerated)} elements")
        result = {"ok": all(c["ok"] for c in cases), "cases": cases}
    except Exception as e:
        if verbosity >= 1:
            log_queue.put(f"[{pid}] [CRITICAL ERROR] generic_fitting_oracle: {e}")
        result = {"ok": False, "cases": cases, "error": f"{type(e).__name__}: {e}"}

    time_taken = time.perf_counter() - start_time
    if verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] generic_fitting_oracle ok={result['ok']} in {time_taken:.2f}s")
    return result, time_taken
