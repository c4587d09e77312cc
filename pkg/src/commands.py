"""
Command units behind ``run.py``. Each takes the resolved JobConfig, the
enumeration cache and the log queue, and returns the JSON-ready result.
"""
import os
from typing import Callable, Dict, Optional, Tuple

from src import carlitz_oracle, ff_base, goss_zeta
from src.arith_provider import (
    carlitz_provider,
    character_group,
    classify_character,
    ray_group_of,
)
from src.cache import ResultCache
from src.classes.cover import CoverDescription
from src.classes.finite_field import FqContext, FqPoly
from src.classes.laurent import LaurentNum
from src.config import JobConfig
from src.cover_file import cover_hash, cover_to_dict, load_cover
from src.errors import ValidationError
from src.fitting import (
    assemble_characters,
    chi_gamma,
    fitting_class_dual,
    fitting_subset_form,
    fitting_tate_dual_chi,
    fitting_tate_dual_totram,
    pro_fitting_report,
    totram_gamma_one_image,
)
from src.group_ring import IdealHandle, ideal_equal
from src.stickelberger import (
    chi_theta,
    default_degree,
    integral_gamma,
    theta_dirichlet,
    theta_euler,
)


def parse_chi(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise ValidationError(f"--chi must be comma-separated integers, got '{text}'") from e


def parse_exponent(text: Optional[str], p: int) -> goss_zeta.PAdicExponent:
    """``-1`` is an integer exponent; ``2:3`` is the residue 2 mod p^3."""
    if text is None:
        return goss_zeta.PAdicExponent(1)
    try:
        if ":" in text:
            value, M = text.split(":")
            return goss_zeta.PAdicExponent.residue(int(value), p, int(M))
        return goss_zeta.PAdicExponent(int(text))
    except ValueError as e:
        raise ValidationError(f"--y must be an integer or 'value:M', got '{text}'") from e


def _carlitz(config: JobConfig, cache: Optional[ResultCache]) -> Tuple[FqContext, FqPoly, CoverDescription, int]:
    ctx = FqContext.create(config.q)
    prime = ff_base.parse_poly(ctx, config.prime)
    if not prime.is_monic() or prime.degree < 1 or not ff_base.is_irreducible(prime):
        raise ValidationError(f"--prime {config.prime} must be monic irreducible over F_{config.q}")
    D = config.degree or default_degree(config.level, prime.degree)
    config.degree = D
    return ctx, prime, carlitz_provider(ctx, prime, config.level, D, cache), D


def _characters(cd: CoverDescription, config: JobConfig):
    chi = parse_chi(config.chi)
    chis = [cd.H.reduce(chi)] if chi is not None else character_group(cd.H)
    return [classify_character(cd, c) for c in chis]


def structure(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    pid = os.getpid()
    _, _, cd, _ = _carlitz(config, cache)
    if config.verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] structure: |H| = {cd.H.order}, |G| = {cd.G.order}")
    return {
        "cover_hash": cover_hash(cd),
        "H": {"invariants": list(cd.H.invariants), "invariant_factors": list(cd.H.invariant_factors), "order": cd.H.order},
        "G": {"invariants": list(cd.G.invariants), "invariant_factors": list(cd.G.invariant_factors), "order": cd.G.order},
        "S": cover_to_dict(cd)["S"],
        "characters": [c.to_json() for c in _characters(cd, config)],
    }


def theta(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    pid = os.getpid()
    _, _, cd, D = _carlitz(config, cache)
    euler = theta_euler(cd, D)
    dirichlet = theta_dirichlet(cd, D, config.workers)
    agree = all((a - b).is_zero() for a, b in zip(euler.coeffs, dirichlet.coeffs))
    if config.verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] theta: D={D}, euler_equals_dirichlet={agree}")
    if not agree and config.verbosity >= 1:
        log_queue.put(f"[{pid}] [WARNING] Euler product and Dirichlet sum differ")
    return {"cover_hash": cover_hash(cd), "D": D, "coefficients": euler.to_json(), "euler_equals_dirichlet": agree}


def chi_theta_command(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    _, _, cd, D = _carlitz(config, cache)
    series = theta_euler(cd, D)
    out = []
    for character in _characters(cd, config):
        ct = chi_theta(series, cd, character)
        if ct.warnings and config.verbosity >= 1:
            log_queue.put(f"[{os.getpid()}] [WARNING] {'; '.join(ct.warnings)}")
        out.append(ct.to_json())
    return {"cover_hash": cover_hash(cd), "D": D, "characters": out}


def fitting(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    pid = os.getpid()
    _, _, cd, D = _carlitz(config, cache)
    series = theta_euler(cd, D)
    rows = []
    for character in _characters(cd, config):
        fg = fitting_class_dual(cd, character, chi_gamma(cd, character, D, series))
        if config.verbosity >= 2:
            log_queue.put(f"[{pid}] [DEBUG] {character.tag}: {fg.case}, k={fg.trivial_zero_order}")
        rows.append({"character": character.to_json(), **fg.to_json(cd.p)})
    return {"cover_hash": cover_hash(cd), "D": D, "characters": rows}


def fitting_general(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    """
    File-cover mode: the chi-parts over W[G][g] and their gamma = 1 images,
    the totally ramified product form and the subset corestriction form,
    compared at truncation M.
    """
    pid = os.getpid()
    cd = load_cover(config.cover_file)
    D = config.degree or cd.degree_bound
    if D > cd.degree_bound:
        raise ValidationError(f"--degree {D} exceeds the cover's degree_bound {cd.degree_bound}")
    config.degree = D
    M = config.truncation_m
    series = theta_euler(cd, D)
    characters, per_chi = [], {}
    for character in _characters(cd, config):
        gamma = chi_gamma(cd, character, D, series)
        tate = fitting_tate_dual_chi(cd, character, gamma)
        dual = fitting_class_dual(cd, character, gamma)
        per_chi[character.chi] = tate
        characters.append({
            "character": character.to_json(),
            "tate_dual": tate.to_json(cd.p),
            "tate_dual_at_one": [g.to_json() for g in tate.at_gamma_one().generators],
            "class_dual": dual.to_json(cd.p),
        })
    result = {"cover_hash": cover_hash(cd), "D": D, "M": M, "characters": characters}
    try:
        totram = fitting_tate_dual_totram(cd, integral_gamma(series, cd))
    except ValidationError as e:
        if config.verbosity >= 1:
            log_queue.put(f"[{pid}] [WARNING] integral forms skipped: {e}")
        result["integral_forms"] = {"skipped": str(e)}
        return result
    image = totram_gamma_one_image(totram, cd).ideal(cd.p, M)
    subset = fitting_subset_form(cd, D)
    subset_equal = ideal_equal(image, subset.ideal(cd.p, M))
    if config.verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] fitting-general: subset form equal = {subset_equal}")
    result["integral_forms"] = {
        "totally_ramified": totram.to_json(cd.p),
        "subset_form": subset.to_json(cd.p),
        "subset_form_equal": subset_equal,
    }
    if config.chi is None:
        full = totram_gamma_one_image(totram, cd, include_v1=True)
        m = cd.H.exponent
        widened = IdealHandle.make(cd.G_tilde, m, cd.p, M, full.generators)
        result["integral_forms"]["assembly_equal"] = ideal_equal(widened, assemble_characters(cd, per_chi, cd.p, M))
    return result


def pro_fitting(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    ctx, prime, _, D = _carlitz(config, cache)
    chi = parse_chi(config.chi) or (0,)
    report = pro_fitting_report(ctx, prime, config.level, chi, D, config.truncation_m)
    if not report["ok"] and config.verbosity >= 1:
        log_queue.put(f"[{os.getpid()}] [WARNING] pro-fitting projection check failed")
    return report


def goss(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    ctx = FqContext.create(config.q)
    if config.j is not None:
        return goss_zeta.zeta_at_negative_int(ctx, config.j).to_json()
    P = config.laurent_prec
    D = config.degree or 6
    config.degree = D
    x = LaurentNum.from_poly(ff_base.parse_poly(ctx, config.x or "t"), P)
    s = goss_zeta.SPoint(x, parse_exponent(config.y, ctx.p))
    partial = goss_zeta.zeta_partial(ctx, s, D, P)
    if config.verbosity >= 1:
        log_queue.put(f"[{os.getpid()}] [INFO] goss: D={D}, tail valuation {partial.tail_valuation}")
    return {"q": ctx.q, "s": s.to_json(), "D": D, "P": P, **partial.to_json()}


def interpolate(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    ctx = FqContext.create(config.q)
    prime = ff_base.parse_poly(ctx, config.prime)
    y = parse_exponent(config.y, ctx.p)
    D = config.degree or 5
    config.degree = D
    if not ff_base.is_irreducible(prime):
        raise ValidationError(f"--prime {config.prime} must be monic irreducible over F_{config.q}")
    table = goss_zeta.PowerSumTable.build(ctx, prime, y, D, config.laurent_prec)
    report = goss_zeta.interpolation_check(ctx, prime, y, D, config.laurent_prec, cache, table)
    replay = goss_zeta.euler_dirichlet_goss(ctx, prime, y, D, config.laurent_prec, cache, table)
    if not report.ok and config.verbosity >= 1:
        log_queue.put(f"[{os.getpid()}] [WARNING] interpolation mismatch in {[r['d'] for r in report.rows if not r['ok']]}")
    return {**report.to_json(), "euler_equals_dirichlet": replay}


def oracle(config: JobConfig, cache: Optional[ResultCache], log_queue) -> dict:
    pid = os.getpid()
    _, prime, cd, _ = _carlitz(config, cache)
    rcg = ray_group_of(cd)
    group = cd.G_tilde
    max_degree = 3 if config.quick else 4
    rows = carlitz_oracle.reciprocity_table(
        prime, config.level, max_degree, lambda f: group.element_order(rcg.classify(f)), cache
    )
    zeta = carlitz_oracle.zeta_from_census(prime, config.level, cache)
    census = carlitz_oracle.place_census(prime, config.level, max(zeta.g, 1), cache)
    splitting = [carlitz_oracle.splitting_report(place, prime, config.level).to_json() for place in ("inf", prime)]
    if config.verbosity >= 1:
        log_queue.put(f"[{pid}] [INFO] oracle: g={zeta.g}, h={zeta.h}, v_p(h)={zeta.v_p_h}")
        if not all(r["ok"] for r in rows):
            log_queue.put(f"[{pid}] [WARNING] reciprocity mismatch")
    return {
        "q": cd.q,
        "prime": prime.text(),
        "n": config.level,
        "reciprocity": rows,
        "census": census.to_json(),
        "splitting": splitting,
        "zeta": zeta.to_json(),
    }


COMMANDS: Dict[str, Callable[[JobConfig, Optional[ResultCache], object], dict]] = {
    "structure": structure,
    "theta": theta,
    "chi-theta": chi_theta_command,
    "fitting": fitting,
    "fitting-general": fitting_general,
    "pro-fitting": pro_fitting,
    "goss": goss,
    "interpolate": interpolate,
    "oracle": oracle,
}
