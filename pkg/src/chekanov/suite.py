"""End-to-end checks of the built-in knots, used by the ``paper-suite`` command
and by the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import cert
from .charalg import (
    EQUIVALENT,
    NONTRIVIAL,
    TRIVIAL,
    UNKNOWN,
    derive_zero_generators,
    ideal_equiv_bounded,
    search_unit_witness,
    simplify_presentation,
    verify_unit_witness,
)
from .dga import check_d_squared, compute_differential
from .freealg import LAURENT, Z2, NCPoly, parse_poly
from .front import PlatBraid, build_front, classical_invariants, count_components, get_knot
from .reference import (
    M10_139_WITNESS,
    M10_161_EXTRA_IDEAL,
    M10_161_QUOTIENT_GENERATORS,
    M10_161_QUOTIENT_RELATIONS,
    M10_161_ZEROS,
    four_generator_sets,
    parse_relation,
    parse_table,
    reference_dga,
)
from .rewriting import complete_bounded, reduce_random_order, to_words


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return passed, detail, time.perf_counter() - t0


def check_z2_table():
    t0 = time.perf_counter()
    text = compute_differential(get_knot("m10_161").front(), Z2).render()
    elapsed = time.perf_counter() - t0
    got = parse_table(text, Z2)
    want = reference_dga("m10_161").diff
    same = set(got) == set(want) and all(set(got[g].terms) == set(want[g].terms) for g in want)
    return same and elapsed < 10, f"{len(got)} generators, match={same}, {elapsed:.3f}s"


def check_laurent_table():
    t0 = time.perf_counter()
    text = compute_differential(get_knot("m10_139").front(), LAURENT).render()
    elapsed = time.perf_counter() - t0
    got = parse_table(text, LAURENT)
    ref = reference_dga("m10_139")
    exact = got == ref.diff
    reduced = {g: p.at_t_equals_one_mod2() for g, p in got.items()} == ref.to_z2().diff
    return exact and reduced and elapsed < 10, (
        f"{len(got)} generators, exact={exact}, t=1 mod 2 match={reduced}, {elapsed:.3f}s")


def check_d_squared_all():
    parts = []
    ok = True
    for label, dga in (
        ("computed m10_161/Z2", compute_differential(get_knot("m10_161").front(), Z2)),
        ("computed m10_139/Laurent", compute_differential(get_knot("m10_139").front(), LAURENT)),
        ("table m10_161/Z2", reference_dga("m10_161")),
        ("table m10_139/Laurent", reference_dga("m10_139")),
    ):
        rep = check_d_squared(dga)
        ok &= rep.ok
        parts.append(f"{label} {rep.checked - len(rep.failures)}/{rep.checked}")
    return ok, "; ".join(parts)


def check_published_witness():
    dga = reference_dga("m10_139")
    t0 = time.perf_counter()
    ok = verify_unit_witness(dga, parse_poly(M10_139_WITNESS, LAURENT))
    elapsed = time.perf_counter() - t0
    return ok and elapsed < 1, f"d(w) = 1 over Z[t,t^-1]: {ok}, {elapsed:.3f}s"


def check_zeros():
    zeros = derive_zero_generators(reference_dga("m10_161"))
    return zeros == set(M10_161_ZEROS), "zeros " + ", ".join(f"x_{g}" for g in sorted(zeros))


def m10_161_quotient():
    extra = [parse_poly(s) for s in M10_161_EXTRA_IDEAL]
    pres = simplify_presentation(reference_dga("m10_161"), extra)
    nonlinear = [p for p in extra if len(p.leading_word()) > 1]
    return pres, nonlinear


def check_quotient():
    pres, nonlinear = m10_161_quotient()
    published = [parse_relation(r) for r in M10_161_QUOTIENT_RELATIONS]
    v = ideal_equiv_bounded(pres.relations + nonlinear, published, cap=8)
    gens_ok = tuple(pres.generators) == M10_161_QUOTIENT_GENERATORS
    return gens_ok and v.verdict == EQUIVALENT, (
        f"generators {pres.generators}, {len(pres.relations)} reduced relations, "
        f"equivalence at cap 8: {v.verdict}")


def check_four_generator_sets():
    six, four = four_generator_sets()
    forward = ideal_equiv_bounded(six, four, cap=6)
    backward = ideal_equiv_bounded(four, six, cap=6)
    ok = forward.verdict == backward.verdict == EQUIVALENT
    return ok, f"six->four {forward.verdict}, four->six {backward.verdict}"


def check_shift_representation():
    rels = cert.four_generator_relations_hold(64)
    dga = reference_dga("m10_161")
    c = cert.representation_certificate("m10_161", dga, cert.m10_161_representation(64))
    ok = all(rels.values()) and c.verdict == NONTRIVIAL
    return ok, f"relations on e_0..e_63 {sum(rels.values())}/5, composite verdict {c.verdict}"


def check_witness_search(cap: int = 12):
    t0 = time.perf_counter()
    found = search_unit_witness(reference_dga("m10_139"), cap=cap)
    t1 = time.perf_counter()
    missing = search_unit_witness(reference_dga("m10_161"), cap=cap)
    t2 = time.perf_counter()
    ok_b = found.verdict == TRIVIAL and verify_unit_witness(
        reference_dga("m10_139").to_z2(), found.witness)
    ok = ok_b and missing.verdict == UNKNOWN and t1 - t0 < 60 and t2 - t1 < 60
    size = len(found.witness.element) if found.witness else 0
    return ok, (f"m10_139: {found.verdict} ({size} terms, {t1 - t0:.2f}s); "
                f"m10_161: {missing.verdict} ({t2 - t1:.2f}s)")


def random_knot_plats(count: int, seed: int = 0, max_strands: int = 6, max_letters: int = 10):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        strands = rng.choice(range(2, max_strands + 1, 2))
        word = tuple(rng.randint(1, strands - 1) for _ in range(rng.randint(0, max_letters)))
        front = build_front(PlatBraid(strands, word))
        if count_components(front) == 1:
            out.append(front)
    return out


def _random_poly(rng, ring, gens=(1, 2, 3), terms=3, length=3):
    acc = NCPoly.zero(ring)
    for _ in range(rng.randint(0, terms)):
        w = tuple(rng.choice(gens) for _ in range(rng.randint(0, length)))
        c = 1 if ring is Z2 else rng.choice((-2, -1, 1, 2))
        acc = acc + NCPoly(ring, [(w, ring.coerce(c))])
    return acc


def check_sanity(seed: int = 0):
    notes = []
    unknot = get_knot("unknot").front()
    inv = classical_invariants(unknot)
    ud = compute_differential(unknot, Z2)
    ok = inv.tb == -1 and inv.r == 0 and ud.generators == [1] and ud.grading[1] == 1
    notes.append(f"unknot tb={inv.tb} r={inv.r} gens={len(ud.generators)}")

    bad = 0
    for front in random_knot_plats(100, seed):
        lau = compute_differential(front, LAURENT)
        if lau.to_z2().diff != compute_differential(front, Z2).diff or not check_d_squared(lau).ok:
            bad += 1
    ok &= bad == 0
    notes.append(f"random plats consistent {100 - bad}/100")

    rng = random.Random(seed)
    dga = reference_dga("m10_139")
    D = dga.derivation()
    leib = 0
    for _ in range(50):
        words = [tuple(rng.choice(dga.generators) for _ in range(rng.randint(1, 3))) for _ in range(2)]
        p, q = (NCPoly(LAURENT, [(w, LAURENT.coerce(1))]) for w in words)
        sign = -1 if dga.degree(words[0]) % 2 else 1
        if D(p * q) != D(p) * q + (p * D(q)).scale(LAURENT.coerce(sign)):
            leib += 1
    hom = 0
    from .freealg import nc_substitute
    for _ in range(50):
        p, q = _random_poly(rng, Z2), _random_poly(rng, Z2)
        sub = {g: _random_poly(rng, Z2) for g in (1, 2, 3)}
        if nc_substitute(p * q, sub) != nc_substitute(p, sub) * nc_substitute(q, sub):
            hom += 1
    six, four = four_generator_sets()
    sys = complete_bounded(six, cap=6)
    nf_bad = conf_bad = 0
    for _ in range(50):
        p = _random_poly(rng, Z2, gens=(1, 2, 3, 4), terms=4, length=4)
        nf = sys.reduce(p)
        if sys.reduce(nf) != nf:
            nf_bad += 1
        if sys.complete and reduce_random_order(p, sys, rng) != nf:
            conf_bad += 1
    ok &= leib == hom == nf_bad == conf_bad == 0
    notes.append(f"property failures leibniz={leib} hom={hom} nf={nf_bad} confluence={conf_bad}")

    models = [n for n in range(1, 7) if cert.search_finite_model(n, seed=seed) is not None]
    ok &= not models
    notes.append("finite models for sizes 1-6: " + ("none" if not models else str(models)))
    return ok, "; ".join(notes)


CHECKS = (
    (1, "m10_161 differential over Z/2 matches the table", check_z2_table),
    (2, "m10_139 differential over Z[t,t^-1] matches the table", check_laurent_table),
    (3, "d^2 = 0 on computed and tabulated DGAs", check_d_squared_all),
    (4, "published unit witness for m10_139", check_published_witness),
    (5, "forced zero generators of m10_161", check_zeros),
    (6, "six-generator quotient of m10_161", check_quotient),
    (7, "six- and four-generator relation sets agree", check_four_generator_sets),
    (8, "shift-operator certificate for m10_161", check_shift_representation),
    (9, "unit witness search", check_witness_search),
    (10, "sanity and property checks", check_sanity),
)


def run_check(number: int) -> CheckResult:
    for n, name, fn in CHECKS:
        if n == number:
            passed, detail, secs = _timed(fn)
            return CheckResult(n, name, passed, detail, secs)
    raise KeyError(number)


def run_all() -> list:
    return [run_check(n) for n, _, _ in CHECKS]
