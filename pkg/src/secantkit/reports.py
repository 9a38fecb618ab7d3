"""Command dispatch and machine-readable reports.

Every command produces a Report whose payload is built from strings, bools,
lists and dicts only: integers are rendered as decimal strings (arbitrary
precision, no floats anywhere), keys sort canonically, and rerunning with
identical input and seed reproduces the payload byte for byte.  Wall-clock
time deliberately lives outside the canonical document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from hashlib import sha256

from . import __version__
from .cohomology import ModuleCohomology, vanishing_scan
from .conditions import (
    check_kd,
    check_n2,
    fano_lines,
    four_point_span_check,
    line_restriction_rank,
)
from .corpus import (
    CorpusVariety,
    SamplingUnavailable,
    chord_point,
    corpus_generate,
    golden_corpus,
)
from .fields import field_from_tag
from .groebner import Ideal
from .inputlang import InputError, parse_input
from .flipcalc import (
    DivisorClass,
    canonical_class,
    lk_class,
    pullback_h,
    threshold,
    verify_kv_rewrite,
)
from .rng import DetRng
from .secant import classify_fiber, quadric_system, secant_ideal, secant_report
from .syzygy import free_resolution, syzygies

COMMANDS = (
    "gb", "syz", "betti", "check-k2", "check-kd", "check-n2", "lines",
    "secant", "deficiency", "fiber", "cohomology", "vanish-scan",
    "flip-verify", "thresholds", "report-all",
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE = 3


class CommandError(ValueError):
    """Bad command input; maps to exit code 2."""


@dataclass(frozen=True)
class Report:
    command: str
    input_hash: str
    seed: int
    parameters: dict
    payload: dict
    engine_version: str
    ok: bool

    def document(self) -> dict:
        return {
            "command": self.command,
            "engine_version": self.engine_version,
            "input_hash": self.input_hash,
            "parameters": jsonable(self.parameters),
            "payload": self.payload,
            "seed": str(self.seed),
        }

    def to_json(self) -> str:
        return canonical_json(self.document())


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def jsonable(value):
    """Reports carry integers as decimal strings and rationals as num/den."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return (str(value.numerator) if value.denominator == 1
                else f"{value.numerator}/{value.denominator}")
    if isinstance(value, float):
        raise TypeError("floats are banned from reports")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


# ---------------------------------------------------------------------------
# sources


@dataclass
class Source:
    """Where the ideal under inspection came from."""

    text: str                 # canonical input text (hashed)
    ideal: Ideal | None
    ideal_name: str | None
    points: dict
    variety: CorpusVariety | None  # set when the source is a registered family


def resolve_source(input_text: str | None, family: str | None,
                   ideal_name: str | None, field_tag: str,
                   seed: int) -> Source:
    fld = field_from_tag(field_tag)
    if family:
        variety = corpus_generate(family, seed=seed, field=fld)
        return Source(f"family {family}\n", variety.ideal, "X", {}, variety)
    if input_text is None:
        return Source("", None, None, {}, None)
    try:
        model = parse_input(input_text, fld)
    except InputError as exc:
        raise CommandError(str(exc)) from exc
    name = ideal_name or model.first_ideal_name()
    ideal = None
    if name is not None:
        if name not in model.ideals:
            raise CommandError(f"no ideal named {name!r} in the input")
        ideal = Ideal(model.ring, model.ideals[name])
    return Source(input_text, ideal, name, dict(model.points), None)


def _require_ideal(src: Source) -> Ideal:
    if src.ideal is None:
        raise CommandError("this command needs an ideal (input file or --family)")
    return src.ideal


# ---------------------------------------------------------------------------
# handlers


def _h_gb(src: Source, opt: dict):
    ideal = _require_ideal(src)
    gb = ideal.groebner_basis(cap=opt["degree_cap"])
    payload = {
        "basis": [str(g) for g in gb],
        "leading_terms": [str(g.leading_data()[0].exps) for g in gb],
        "order": "grevlex",
        "size": len(gb),
    }
    return payload, True


def _h_syz(src: Source, opt: dict):
    ideal = _require_ideal(src)
    syz = syzygies(list(ideal.gens), opt["degree_cap"])
    payload = {
        "count": len(syz),
        "degrees": [s.degree() for s in syz],
        "syzygies": [[str(e) for e in s.entries] for s in syz],
        "linear_count": sum(1 for s in syz if s.max_entry_degree() <= 1),
    }
    return payload, True


def _h_betti(src: Source, opt: dict):
    ideal = _require_ideal(src)
    res = free_resolution(ideal, max_length=opt.get("max_length", 3),
                          cap=opt["degree_cap"])
    payload = {
        "betti": {f"{i},{j}": v for (i, j), v in res.betti.items()},
        "generator_degrees": sorted(g.degree() for g in res.ideal_gens),
        "length_computed": res.length(),
    }
    return payload, True


def _h_check_kd(src: Source, opt: dict, force_d: int | None = None):
    ideal = _require_ideal(src)
    gens = list(ideal.gens)
    d = force_d if force_d is not None else opt.get("d")
    report = check_kd(gens, d, opt["degree_cap"])
    pairs = []
    for p in report.pairs:
        entry = {"i": p.i, "j": p.j, "member": p.member}
        if p.certificate is not None:
            entry["certificate"] = [str(c) for c in p.certificate]
        if p.witness is not None:
            entry["witness"] = p.witness
        pairs.append(entry)
    payload = {
        "holds": report.holds,
        "d": report.d,
        "linear_syzygy_count": report.linear_syzygy_count,
        "syzygy_count": report.syzygy_count,
        "koszul_pairs": pairs,
    }
    return payload, True


def _h_check_n2(src: Source, opt: dict):
    ideal = _require_ideal(src)
    report = check_n2(ideal, opt.get("normality_bound"), opt["degree_cap"])
    payload = {
        "holds": report.holds,
        "quadric_generation": report.quadric_generation,
        "linear_first_syzygies": report.linear_first_syzygies,
        "projective_normality_checked_to": report.projective_normality_checked_to,
        "projectively_normal_in_range": report.projectively_normal_in_range,
    }
    return payload, True


def _h_lines(src: Source, opt: dict):
    ideal = _require_ideal(src)
    report = fano_lines(ideal, opt["degree_cap"])
    payload = {
        "contains_line": report.contains_line,
        "charts": [
            {"pivot": list(c.pivot), "empty": c.empty,
             "conditions": c.condition_count, "groebner_size": c.groebner_size}
            for c in report.charts
        ],
    }
    return payload, True


def _h_secant(src: Source, opt: dict):
    ideal = _require_ideal(src)
    sec = secant_ideal(ideal, opt["degree_cap"])
    if sec.is_zero():
        payload = {"fills_space": True, "generators": [], "dim": ideal.ring.nvars - 1}
    else:
        hd = sec.hilbert(opt["degree_cap"])
        payload = {
            "fills_space": False,
            "generators": [str(g) for g in sec.gens],
            "dim": hd.dim,
            "degree": hd.degree,
        }
    return payload, True


def _h_deficiency(src: Source, opt: dict):
    ideal = _require_ideal(src)
    rep = secant_report(ideal, opt["degree_cap"])
    payload = {
        "dim_x": rep.dim_x,
        "dim_secant": rep.dim_secant,
        "degree_secant": rep.degree_secant,
        "fills_space": rep.fills_space,
        "deficiency": rep.deficiency,
        "dim_y": rep.dim_y,
        "formula_consistent": rep.formula_consistent,
        "generated_in_degree_le_3": rep.generated_in_degree_le_3,
    }
    return payload, rep.formula_consistent


def _fiber_point(src: Source, opt: dict):
    name = opt.get("point")
    if name:
        if name not in src.points:
            raise CommandError(f"no point named {name!r} in the input")
        return list(src.points[name]), f"point {name}"
    chord_seed = opt.get("chord_seed")
    if chord_seed is not None:
        if src.variety is None or not src.variety.has_parametrization():
            raise CommandError("chord sampling needs a parametrized family")
        rng = DetRng(chord_seed)
        p = src.variety.sample_point(rng)
        q = src.variety.sample_point(rng)
        lam = Fraction(rng.nonzero_int(5))
        mu = Fraction(rng.nonzero_int(5))
        return list(chord_point(p, q, lam, mu)), f"chord seed {chord_seed}"
    raise CommandError("fiber needs --point NAME or --chord-seed N")


def _h_fiber(src: Source, opt: dict):
    ideal = _require_ideal(src)
    point, origin = _fiber_point(src, opt)
    quadrics = quadric_system(ideal, opt["degree_cap"])
    cls = classify_fiber(quadrics, ideal, point, opt["degree_cap"])
    payload = {
        "point": [jsonable(Fraction(c)) for c in point],
        "origin": origin,
        "kind": cls.kind,
        "fiber_dim": cls.fiber_dim,
        "fiber_degree": cls.fiber_degree,
        "intersection_dim": cls.intersection_dim,
        "intersection_degree": cls.intersection_degree,
    }
    return payload, cls.kind in ("point", "linear")


def _h_cohomology(src: Source, opt: dict):
    ideal = _require_ideal(src)
    kind = opt.get("module", "ideal")
    a = opt.get("a", 1)
    if a > 1:
        from .cohomology import ideal_power_saturated

        module_ideal = ideal_power_saturated(ideal, a, opt["degree_cap"])
    else:
        module_ideal = ideal
    engine = ModuleCohomology(kind if kind != "ring" else "ring",
                              None if kind == "ring" else module_ideal,
                              ring=ideal.ring, cap=opt["degree_cap"])
    k_lo = opt.get("k_min", opt.get("k", 0))
    k_hi = opt.get("k_max", opt.get("k", 0))
    table = {}
    euler_ok = True
    for k in range(k_lo, k_hi + 1):
        h = engine.sheaf_cohomology(k)
        table[str(k)] = [hi for hi in h]
        if sum((-1) ** i * hi for i, hi in enumerate(h)) != engine.hilbert_poly_value(k):
            euler_ok = False
    payload = {"module": kind, "a": a, "h": table, "euler_consistent": euler_ok}
    return payload, euler_ok


def _h_vanish_scan(src: Source, opt: dict):
    ideal = _require_ideal(src)
    variant = opt.get("variant", "little")
    a_lo = opt.get("a_min", 1)
    a_hi = opt.get("a_max", 2)
    window = opt.get("window", 3)
    gens = ideal.min_gens(opt["degree_cap"])
    d = opt.get("d") or max(g.degree() for g in gens)
    scan = vanishing_scan(ideal, d, range(a_lo, a_hi + 1), window, variant,
                          opt["degree_cap"])
    table = {}
    for (i, a, k), v in sorted(scan.table.entries.items()):
        table.setdefault(f"a={a},k={k}", []).append(v)
    payload = {
        "variant": variant,
        "d": d,
        "bounds": {str(a): b for a, b in sorted(scan.bounds.items())},
        "table": table,
        "violations": [
            {"a": v.a, "k": v.k, "i": v.i, "h": v.value, "bound": v.bound}
            for v in scan.violations
        ],
        "skipped_a": scan.skipped,
    }
    return payload, not scan.violations


def _h_flip_verify(src: Source, opt: dict):
    symbolic = verify_kv_rewrite()
    sweep_ok = True
    count = 0
    for r in range(1, 5):
        for n in range(2 * r + 3, 13):
            for k in range(2, 11):
                count += 1
                if not verify_kv_rewrite(n, r, k):
                    sweep_ok = False
    kan = canonical_class("M2tilde")
    payload = {
        "kv_rewrite_symbolic": symbolic,
        "kv_rewrite_sweep": sweep_ok,
        "sweep_points": count,
        "canonical_class_m2tilde": [str(c) for c in kan.coeffs],
        "lk_2": [jsonable(c) for c in lk_class(2).evaluate(0, 0, 0)],
        "pullback_3H_minus_2E": [
            jsonable(c)
            for c in pullback_h(DivisorClass.make("M2", 3, -2)).evaluate(0, 0, 0)
        ],
        "pullback_2H_minus_E": [
            jsonable(c)
            for c in pullback_h(DivisorClass.make("M2", 2, -1)).evaluate(0, 0, 0)
        ],
    }
    return payload, symbolic and sweep_ok


def _h_thresholds(src: Source, opt: dict):
    variant = opt.get("variant", "little")
    formula = threshold(variant, d=opt.get("d"), e=opt.get("e"),
                        a=opt.get("a"), n=opt.get("n"), r=opt.get("r"))
    payload = {
        "variant": formula.variant,
        "subject": formula.subject,
        "bound": jsonable(formula.bound),
        "strict": formula.strict,
        "twist": formula.twist,
        "condition": str(formula),
        "params": {k: v for k, v in formula.params},
    }
    return payload, True


def _h_report_all(src: Source, opt: dict):
    """Fixed battery over the golden corpus; every violation is collected."""
    seed = opt["seed"]
    cap = opt["degree_cap"]
    violations: list[str] = []
    battery: dict = {}
    varieties = golden_corpus()
    for v in varieties:
        entry: dict = {}
        hd = v.ideal.hilbert(cap)
        entry["dim"] = hd.dim
        entry["degree"] = hd.degree
        kd, _ = _h_check_kd(
            Source("", v.ideal, "X", {}, v), opt, force_d=2)
        entry["k2_holds"] = kd["holds"]
        entry["k2_linear_syzygies"] = kd["linear_syzygy_count"]
        n2, _ = _h_check_n2(Source("", v.ideal, "X", {}, v), opt)
        entry["n2"] = {k: n2[k] for k in
                       ("holds", "quadric_generation", "linear_first_syzygies",
                        "projectively_normal_in_range")}
        if n2["holds"] and not kd["holds"]:
            violations.append(f"{v.name}: N2 holds but K2 fails")
        res = free_resolution(v.ideal, 3, cap)
        entry["betti"] = {f"{i},{j}": c for (i, j), c in res.betti.items()}
        battery[v.name] = entry
    # secant geometry on the three stars
    for v in varieties[:3]:
        rep = secant_report(v.ideal, cap)
        battery[v.name]["deficiency"] = {
            "dim_secant": rep.dim_secant,
            "deficiency": rep.deficiency,
            "dim_y": rep.dim_y,
            "formula_consistent": rep.formula_consistent,
            "cubics": rep.generated_in_degree_le_3,
        }
        if not rep.formula_consistent:
            violations.append(f"{v.name}: deficiency formula inconsistent")
    # fibers, seeded
    fiber_summary = {}
    for v in (varieties[1], varieties[2]):
        quadrics = quadric_system(v.ideal, cap)
        kinds = []
        for t in range(3):
            rng = DetRng(seed).fork(t)
            p = v.sample_point(rng)
            q = v.sample_point(rng)
            pt = chord_point(p, q, Fraction(1), Fraction(rng.nonzero_int(5)))
            cls = classify_fiber(quadrics, v.ideal, pt, cap)
            kinds.append(cls.kind)
            if cls.kind == "other":
                violations.append(f"{v.name}: fiber dichotomy fails at trial {t}")
        fiber_summary[v.name] = kinds
    battery["fibers_on_secant"] = fiber_summary
    # line restrictions on the quartic curve
    rnc4 = varieties[1]
    ranks = _line_restriction_battery(rnc4, seed, 25, 10, cap)
    battery["line_restriction"] = ranks
    if any(r != 3 for r in ranks["off_secant_ranks"]):
        violations.append("rnc4: off-secant line with rank < 3")
    if any(r > 2 for r in ranks["secant_ranks"]):
        violations.append("rnc4: secant line with rank 3")
    # four point spans
    for v in (varieties[1], varieties[2]):
        rep = four_point_span_check(v, trials=min(opt["trials"], 25), seed=seed)
        battery[v.name]["four_point_all_passed"] = rep.all_passed
        battery[v.name]["four_point_certifies"] = rep.certifies_very_ampleness
        if not rep.all_passed:
            violations.append(f"{v.name}: four-point span failure")
    # lines on the curves
    for v in (varieties[0], varieties[1]):
        rep = fano_lines(v.ideal, cap)
        battery[v.name]["contains_line"] = rep.contains_line
        if rep.contains_line:
            violations.append(f"{v.name}: unexpected line on a curve of degree >= 3")
    # vanishing scans on hypothesis-valid instances
    scans = {}
    tc_scan = vanishing_scan(varieties[0].ideal, 2, [1], 4, "little", cap)
    scans["rational-normal-curve:3 little a=1"] = len(tc_scan.violations)
    rnc4_scan = vanishing_scan(rnc4.ideal, 2, [1, 2], 3, "little", cap)
    scans["rational-normal-curve:4 little a=1,2"] = len(rnc4_scan.violations)
    second = vanishing_scan(rnc4.ideal, 2, [2], 0, "second", cap)
    scans["rational-normal-curve:4 second a=2"] = len(second.violations)
    for name, nviol in scans.items():
        if nviol:
            violations.append(f"vanishing scan {name}: {nviol} violations")
    battery["vanishing_scan_violations"] = scans
    # flip arithmetic
    flip, flip_ok = _h_flip_verify(src, opt)
    battery["flip"] = flip
    if not flip_ok:
        violations.append("flip: lattice identity failed")
    payload = {"battery": battery, "violations": violations}
    return payload, not violations


def _line_restriction_battery(variety, seed: int, off_count: int,
                              secant_count: int, cap: int):
    quadrics = list(variety.ideal.gens)
    sec = secant_ideal(variety.ideal, cap)
    cubic = sec.gens[0]
    ring = variety.ideal.ring
    rng = DetRng(seed ^ 0x11CE)
    off_ranks = []
    tries = 0
    while len(off_ranks) < off_count and tries < 10000:
        tries += 1
        p = [Fraction(rng.randint(-9, 9)) for _ in range(ring.nvars)]
        q = [Fraction(rng.randint(-9, 9)) for _ in range(ring.nvars)]
        ok, reason = _line_off_secant(quadrics, cubic, p, q)
        if ok:
            off_ranks.append(line_restriction_rank(quadrics, p, q))
    sec_ranks = []
    for t in range(secant_count):
        sub = DetRng(seed).fork(1000 + t)
        pts = variety.sample_distinct_points(sub, 2)
        sec_ranks.append(line_restriction_rank(quadrics, pts[0], pts[1]))
    return {"off_secant_ranks": off_ranks, "secant_ranks": sec_ranks,
            "off_secant_sampled": tries}


def line_meets_base(quadrics, p, q) -> bool:
    """Does the line through p and q meet V(quadrics) over the closure?

    Restrict to the line: f(p + u q) = f(p) + B u + f(q) u^2.  A common
    projective zero is either the point u = infinity (all f(q) = 0) or a
    common root of the dehomogenized forms, i.e. a nonconstant gcd.
    """
    polys = []
    for f in quadrics:
        a = f.evaluate(list(p))
        c = f.evaluate(list(q))
        b = f.evaluate([x + y for x, y in zip(p, q)]) - a - c
        polys.append(_strip_poly([c, b, a]))  # descending powers of u
    if all(f.evaluate(list(q)) == 0 for f in quadrics):
        return True
    g: list | None = None
    for coeffs in polys:
        g = coeffs if g is None else _poly_gcd(g, coeffs)
        if len(g) <= 1 and g:
            return False
    return g is None or len(g) >= 2


def _line_off_secant(quadrics, secant_cubic, p, q) -> tuple[bool, str]:
    """Is span(p, q) a line with empty X-intersection, not inside Sec X?"""
    from .linalg import rank as mat_rank

    if not any(p) or not any(q):
        return False, "degenerate"
    if mat_rank([list(p), list(q)], quadrics[0].ring.field) != 2:
        return False, "coincident"
    if line_meets_base(quadrics, p, q):
        return False, "line meets X"
    # not inside Sec: the secant equation must restrict to a nonzero form
    svals = []
    for lam in range(4):
        pt = [x + Fraction(lam) * y for x, y in zip(p, q)]
        svals.append(secant_cubic.evaluate(pt))
    if all(v == 0 for v in svals):
        return False, "line inside Sec"
    return True, ""


def _strip_poly(xs: list) -> list:
    i = 0
    while i < len(xs) and xs[i] == 0:
        i += 1
    return xs[i:]


def _poly_gcd(a: list, b: list) -> list:
    """Monic gcd of univariate polynomials, descending coefficient lists."""
    a, b = _strip_poly(list(a)), _strip_poly(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_mod(a: list, b: list) -> list:
    a = list(a)
    while a and len(a) >= len(b):
        if a[0] == 0:
            a.pop(0)
            continue
        factor = a[0] / b[0]
        for i in range(1, len(b)):
            a[i] -= factor * b[i]
        a.pop(0)
    return _strip_poly(a)


_HANDLERS = {
    "gb": _h_gb,
    "syz": _h_syz,
    "betti": _h_betti,
    "check-kd": _h_check_kd,
    "check-k2": lambda s, o: _h_check_kd(s, o, force_d=2),
    "check-n2": _h_check_n2,
    "lines": _h_lines,
    "secant": _h_secant,
    "deficiency": _h_deficiency,
    "fiber": _h_fiber,
    "cohomology": _h_cohomology,
    "vanish-scan": _h_vanish_scan,
    "flip-verify": _h_flip_verify,
    "thresholds": _h_thresholds,
    "report-all": _h_report_all,
}


def run_command(command: str, input_text: str | None = None,
                family: str | None = None, ideal_name: str | None = None,
                options: dict | None = None) -> Report:
    """Entry point shared by the CLI and the HTTP service."""
    if command not in COMMANDS:
        raise CommandError(f"unknown command {command!r}; "
                           f"available: {', '.join(COMMANDS)}")
    opt = {"seed": 0, "degree_cap": 40, "trials": 100, "field": "q"}
    opt.update(options or {})
    src = resolve_source(input_text, family, ideal_name, opt["field"],
                         opt["seed"])
    payload, ok = _HANDLERS[command](src, opt)
    params = {k: v for k, v in sorted(opt.items()) if v is not None}
    if family:
        params["family"] = family
    if ideal_name:
        params["ideal"] = ideal_name
    return Report(
        command=command,
        input_hash=sha256(src.text.encode()).hexdigest(),
        seed=opt["seed"],
        parameters=params,
        payload=jsonable(payload),
        engine_version=__version__,
        ok=ok,
    )
