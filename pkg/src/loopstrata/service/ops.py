"""Command execution behind the service endpoints; the CLI calls these
in-process so reports are byte-identical either way."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..exact import Scalar, parse_rat
from ..mpfilt import (
    ApartmentPoint,
    TwistedLoopDatum,
    jump_set,
    mp_quotient,
    sandwich_test,
)
from ..rootdata import (
    DIAGRAM_SYMMETRIES,
    UnsupportedType,
    build_root_datum,
    pinned_automorphism,
)
from ..strata import (
    deepening_constraints,
    deepening_lp,
    destabilize,
    stratum_of,
    verify_basecase,
)
from ..vinberg import GradedElement, build_grading, f_embed, is_nilpotent, is_semisimple
from ..invmap import check_depth_bound, exponent_gate, q_xr
from .models import CommandRequest, ElementLiteral, SessionConfig

COMMANDS = (
    "quotient",
    "jumps",
    "grade",
    "qmap",
    "strata",
    "destabilize",
    "deepen",
    "verify-basecase",
    "suite",
)


class ConfigParse(ValueError):
    """Malformed configuration (bad rationals, lengths, twist names)."""


@dataclass
class Session:
    datum_key: tuple
    d: TwistedLoopDatum
    x: ApartmentPoint
    r: Fraction
    seed: int
    sample_size: int
    depth_cap: Fraction


_session_cache: dict[tuple, TwistedLoopDatum] = {}


def build_session(cfg: SessionConfig) -> Session:
    twist = cfg.twist.lower()
    if twist not in DIAGRAM_SYMMETRIES:
        raise ConfigParse(f"unknown twist {cfg.twist!r}")
    key = (cfg.cartan_type.upper(), cfg.rank, twist, cfg.n)
    d = _session_cache.get(key)
    if d is None:
        datum = build_root_datum(cfg.cartan_type.upper(), cfg.rank)
        try:
            perm = DIAGRAM_SYMMETRIES[twist](datum)
        except UnsupportedType:
            raise
        sigma = pinned_automorphism(datum, perm)
        d = TwistedLoopDatum(datum, sigma, cfg.n)
        _session_cache[key] = d
    try:
        coords = tuple(parse_rat(c) for c in cfg.x)
        r = parse_rat(cfg.r)
        cap = parse_rat(cfg.depth_cap) if cfg.depth_cap is not None else r + 2
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigParse(str(exc)) from exc
    if len(coords) < d.restricted_rank:
        raise ConfigParse(
            f"x needs {d.restricted_rank} coordinates, got {len(coords)}"
        )
    return Session(key, d, ApartmentPoint(coords), r, cfg.seed, cfg.sample_size, cap)


def parse_element(ses: Session, literals: list[ElementLiteral]) -> GradedElement:
    q = mp_quotient(ses.d, ses.x, ses.r)
    index = {(s.alpha, s.level): i for i, s in enumerate(q.spaces)}
    coeffs = {}
    for lit in literals:
        try:
            level = parse_rat(lit.level)
            coeff = Scalar.rational(parse_rat(lit.coeff))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigParse(str(exc)) from exc
        key = (tuple(lit.alpha), level)
        si = index.get(key)
        if si is None:
            raise ConfigParse(
                f"no affine root space (alpha={lit.alpha}, level={lit.level}) "
                f"in the quotient at r={ses.r}"
            )
        if not 0 <= lit.basis_index < q.spaces[si].dim:
            raise ConfigParse(f"basis index {lit.basis_index} out of range")
        slot = (si, lit.basis_index)
        coeffs[slot] = coeffs.get(slot, Scalar.zero()) + coeff
    return GradedElement(q, coeffs)


def _sample_strata(ses: Session):
    from ..strata import _sample_elements

    counts: dict = {}
    for z in _sample_elements(ses.d, ses.x, ses.r, ses.sample_size, ses.seed):
        label = stratum_of(z)
        key = label.render()
        rec = counts.setdefault(key, {"label": label.report(), "count": 0})
        rec["count"] += 1
    return [counts[k] for k in sorted(counts)]


def run_command(command: str, cfg: SessionConfig, element=None) -> dict:
    """Execute one command; the returned report always embeds the config."""
    if command == "suite":
        from ..suite import run_suite

        return run_suite(seed=cfg.seed)
    ses = build_session(cfg)
    if command == "quotient":
        return {"quotient": mp_quotient(ses.d, ses.x, ses.r).report()}
    if command == "jumps":
        return {
            "window": ["0", "1"],
            "jumps": [str(v) for v in jump_set(ses.d, ses.x, 0, 1)],
        }
    if command == "grade":
        g = build_grading(ses.d, ses.x)
        return {
            "components": {str(j): dim for j, dim in g.dimensions().items()},
            "total_dim": ses.d.datum.dim,
        }
    if command == "qmap":
        z = _require_element(ses, element)
        bp = q_xr(z)
        return {
            "element": z.report(),
            "q": bp.report(),
            "q_is_zero": bp.is_zero(),
            "nilpotent": is_nilpotent(z),
            "semisimple": is_semisimple(z),
            "exponent_gate": exponent_gate(ses.d, ses.r),
            "depth_bound": check_depth_bound(ses.d, ses.x, ses.r, f_embed(z)),
        }
    if command == "strata":
        return {"r": str(ses.r), "strata": _sample_strata(ses)}
    if command == "destabilize":
        z = _require_element(ses, element)
        y = destabilize(z)
        return {
            "y": [str(c) for c in y.coords],
            "sandwich": sandwich_test(ses.d, ses.x, y, ses.r),
        }
    if command == "deepen":
        status, sstar, ystar = deepening_lp(ses.d, ses.x, ses.r)
        cons = deepening_constraints(ses.d, ses.x, ses.r)
        out = {
            "status": status,
            "constraints": [
                {"alpha": list(a), "min_level": str(l)} for a, l in cons
            ],
        }
        if status == "optimal":
            out["s_star"] = str(sstar)
            out["y_star"] = [str(c) for c in ystar.coords]
        return out
    if command == "verify-basecase":
        rep = verify_basecase(ses.d, ses.x, ses.r, ses.sample_size, ses.seed)
        return rep.report() | {"passed": rep.passed()}
    raise ConfigParse(f"unknown command {command!r}")


def _require_element(ses: Session, element) -> GradedElement:
    if not element:
        raise ConfigParse("this command requires --element")
    return parse_element(ses, element)


def report_ok(result: dict) -> bool:
    """Commands that verify something flag failure via these keys."""
    if result.get("passed") is False:
        return False
    if result.get("counterexamples"):
        return False
    if result.get("depth_bound") is False:
        return False
    if result.get("sandwich") is False:
        return False
    return True
