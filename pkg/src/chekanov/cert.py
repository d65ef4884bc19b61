"""Nontriviality certificates.

Operators act on finitely supported Z/2 sequences, stored as frozensets of
basis indices.  A representation sends every generator to such an operator;
if every differential maps to the zero operator while the unit maps to the
identity, the characteristic algebra (and hence contact homology) cannot be
trivial.  Augmentations give the same conclusion with 1 x 1 matrices.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product

from .dga import GradedDGA
from .freealg import Z2, NCPoly

INFERENCE_NOTE = "characteristic algebra nontrivial => contact homology nonvanishing"
DEFAULT_SAMPLE = 64
AUGMENTATION_LIMIT = 64


class RepresentationError(KeyError):
    pass


class SearchAborted(RuntimeError):
    pass


# ----------------------------------------------------------------------
# Operators on finitely supported sequences
# ----------------------------------------------------------------------


def basis(n: int) -> frozenset:
    return frozenset((n,))


class SeqOp:
    """Linear operator; subclasses define :meth:`apply_basis`."""

    name = "?"

    def apply_basis(self, n: int) -> frozenset:
        raise NotImplementedError

    def __call__(self, v) -> frozenset:
        out: set = set()
        for n in v:
            out ^= self.apply_basis(n)
        return frozenset(out)

    def __add__(self, other: SeqOp) -> SeqOp:
        return OpSum((self, other))

    def __mul__(self, other: SeqOp) -> SeqOp:
        return OpCompose((self, other))

    def __str__(self):
        return self.name

    def is_zero_on(self, n_samples: int) -> bool:
        return all(not self.apply_basis(n) for n in range(n_samples))


class RuleOp(SeqOp):
    """e_n -> e_rule(n), or 0 when the rule returns None."""

    def __init__(self, name: str, rule):
        self.name = name
        self.rule = rule

    def apply_basis(self, n):
        m = self.rule(n)
        return frozenset() if m is None else basis(m)


class _Identity(SeqOp):
    name = "1"

    def apply_basis(self, n):
        return basis(n)


class _Zero(SeqOp):
    name = "0"

    def apply_basis(self, n):
        return frozenset()


IDENTITY = _Identity()
ZERO = _Zero()


class OpSum(SeqOp):
    def __init__(self, terms):
        self.terms = tuple(terms)
        self.name = "(" + " + ".join(str(t) for t in self.terms) + ")" if self.terms else "0"

    def apply_basis(self, n):
        out: set = set()
        for t in self.terms:
            out ^= t.apply_basis(n)
        return frozenset(out)


class OpCompose(SeqOp):
    """Product f g ... h, applied right to left."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.name = "".join(str(f) for f in self.factors) if self.factors else "1"

    def apply_basis(self, n):
        v = basis(n)
        for f in reversed(self.factors):
            v = f(v)
            if not v:
                break
        return v


def standard_shift_operators():
    """a(e_n) = e_{2n+1}, d(e_n) = e_{2n}; b keeps even indices and halves
    them, c keeps odd indices and halves them."""
    a = RuleOp("a", lambda n: 2 * n + 1)
    b = RuleOp("b", lambda n: n // 2 if n % 2 == 0 else None)
    c = RuleOp("c", lambda n: n // 2 if n % 2 == 1 else None)
    d = RuleOp("d", lambda n: 2 * n)
    return a, b, c, d


def apply_op(expr: SeqOp, v) -> frozenset:
    if isinstance(v, int):
        v = basis(v)
    return expr(frozenset(v))


# ----------------------------------------------------------------------
# Representations
# ----------------------------------------------------------------------


@dataclass
class Representation:
    assignment: dict  # generator -> SeqOp
    test_prefix: int = DEFAULT_SAMPLE

    def evaluate(self, p: NCPoly) -> SeqOp:
        if p.ring is not Z2:
            p = p.at_t_equals_one_mod2()
        terms = []
        for w in p.words():
            try:
                terms.append(OpCompose(tuple(self.assignment[g] for g in w)))
            except KeyError as exc:
                raise RepresentationError(f"generator {exc.args[0]} is not assigned") from None
        return OpSum(terms)

    def table(self, names=None) -> dict:
        names = names or {}
        return {names.get(g, f"x_{g}"): str(op) for g, op in sorted(self.assignment.items())}


@dataclass
class RepresentationReport:
    checked: int
    sample: int
    failures: dict          # generator -> first basis index with nonzero image
    nontrivial: bool

    @property
    def ok(self) -> bool:
        return not self.failures and self.nontrivial


def check_representation(dga: GradedDGA, rep: Representation) -> RepresentationReport:
    missing = set(dga.diff) - set(rep.assignment)
    if missing:
        raise RepresentationError(f"unassigned generators: {sorted(missing)}")
    failures = {}
    for g in dga.generators:
        op = rep.evaluate(dga.diff[g])
        for n in range(rep.test_prefix):
            if op.apply_basis(n):
                failures[g] = n
                break
    nontrivial = any(not op.is_zero_on(rep.test_prefix) for op in rep.assignment.values())
    return RepresentationReport(len(dga.diff), rep.test_prefix, failures, nontrivial)


def m10_161_representation(test_prefix: int = DEFAULT_SAMPLE) -> Representation:
    """Composite action of the 40 generators of the m10_161 algebra.

    Generators killed in the quotient go to 0, x_30 and x_34 to the
    identity, and the six survivors (with x_28 = x_2, x_33 = x_11) act by
    the shift operators.
    """
    a, b, c, d = standard_shift_operators()
    e = OpSum((a, d))
    f = OpSum((b, c))
    table = {g: ZERO for g in range(1, 41)}
    table.update({
        2: e, 28: e, 11: f, 33: f,
        12: a, 13: b, 27: c, 29: OpSum((d, IDENTITY)),
        30: IDENTITY, 34: IDENTITY,
    })
    return Representation(table, test_prefix)


def four_generator_relations_hold(n_samples: int = DEFAULT_SAMPLE) -> dict:
    """Check ac + db = 1, ba = 0, bd = 1, ca = 1, cd = 0 on e_0..e_{N-1}."""
    a, b, c, d = standard_shift_operators()
    checks = {
        "ac+db=1": (a * c + d * b, IDENTITY),
        "ba=0": (b * a, ZERO),
        "bd=1": (b * d, IDENTITY),
        "ca=1": (c * a, IDENTITY),
        "cd=0": (c * d, ZERO),
    }
    return {k: all(lhs.apply_basis(n) == rhs.apply_basis(n) for n in range(n_samples))
            for k, (lhs, rhs) in checks.items()}


# ----------------------------------------------------------------------
# Augmentations
# ----------------------------------------------------------------------


def _boolean_equations(dga: GradedDGA):
    """Each d(x) as a set of monomials (frozensets of generators) mod 2,
    using commutativity and g^2 = g of Z/2-valued maps."""
    eqs = []
    for g in dga.generators:
        p = dga.diff[g]
        if p.ring is not Z2:
            p = p.at_t_equals_one_mod2()
        mon: set = set()
        for w in p.terms:
            mon ^= {frozenset(w)}
        if mon:
            eqs.append(frozenset(mon))
    return eqs


def _restrict(eq, var, value):
    out: set = set()
    for m in eq:
        if var in m:
            if value:
                out ^= {m - {var}}
        else:
            out ^= {m}
    return frozenset(out)


def _propagate(eqs, fixed):
    """Apply forced values until none remain; None signals a contradiction."""
    eqs = list(eqs)
    while True:
        forced = {}
        for eq in eqs:
            if not eq:
                continue
            if eq == {frozenset()}:
                return None
            if len(eq) == 1:
                (m,) = eq
                if len(m) == 1:
                    forced[next(iter(m))] = 0
            elif len(eq) == 2 and frozenset() in eq:
                (m,) = eq - {frozenset()}
                for v in m:
                    forced[v] = 1
        forced = {v: x for v, x in forced.items() if v not in fixed}
        if not forced:
            return [e for e in eqs if e], fixed
        fixed = dict(fixed)
        for v, x in forced.items():
            fixed[v] = x
            eqs = [_restrict(e, v, x) for e in eqs]


def augmentation_search(dga: GradedDGA, graded: bool = True, limit: int = AUGMENTATION_LIMIT,
                        max_results: int = 4096) -> list:
    """All Z/2 augmentations (eps(d x) = 0 for every x, eps(1) = 1).

    Graded mode forces eps(g) = 0 unless g has grading 0.  Every returned
    assignment is re-checked against all differentials.
    """
    gens = dga.generators
    eqs = _boolean_equations(dga)
    fixed = {}
    if graded:
        for g in gens:
            if dga.grading.get(g, 0) != 0:
                fixed[g] = 0
        for v, x in fixed.items():
            eqs = [_restrict(e, v, x) for e in eqs]
    state = _propagate(eqs, fixed)
    if state is None:
        return []
    eqs, fixed = state
    if len(gens) - len(fixed) > limit:
        raise SearchAborted(f"{len(gens) - len(fixed)} undetermined generators exceed limit {limit}")

    results = []

    def branch(eqs, fixed):
        live = {v for e in eqs for m in e for v in m}
        if not live:
            free = [g for g in gens if g not in fixed]
            for bits in product((0, 1), repeat=len(free)):
                if len(results) >= max_results:
                    raise SearchAborted(f"more than {max_results} augmentations")
                sol = dict(fixed)
                sol.update(zip(free, bits))
                results.append(sol)
            return
        counts: dict = {}
        for e in eqs:
            for m in e:
                for v in m:
                    counts[v] = counts.get(v, 0) + 1
        var = max(sorted(live), key=lambda v: counts[v])
        for value in (0, 1):
            nxt = _propagate([_restrict(e, var, value) for e in eqs], {**fixed, var: value})
            if nxt is not None:
                branch(*nxt)

    branch(eqs, fixed)
    for sol in results:
        if not is_augmentation(dga, sol):
            raise AssertionError("search produced an invalid augmentation")
    results.sort(key=lambda s: tuple(s[g] for g in gens))
    return results


def is_augmentation(dga: GradedDGA, eps: dict) -> bool:
    for g in dga.generators:
        p = dga.diff[g]
        if p.ring is not Z2:
            p = p.at_t_equals_one_mod2()
        total = 0
        for w in p.terms:
            total ^= all(eps[x] for x in w)
        if total:
            return False
    return True


# ----------------------------------------------------------------------
# Certificates
# ----------------------------------------------------------------------


@dataclass
class Certificate:
    knot: str
    kind: str                  # "representation" or "augmentation"
    assignment: dict
    sample_size: int
    verdict: str
    note: str = INFERENCE_NOTE
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "knot": self.knot,
            "type": self.kind,
            "assignment": self.assignment,
            "sample_size": self.sample_size,
            "verdict": self.verdict,
            "inference": self.note,
            **({"details": self.details} if self.details else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def representation_certificate(knot: str, dga: GradedDGA, rep: Representation) -> Certificate:
    from .charalg import NONTRIVIAL, UNKNOWN
    report = check_representation(dga, rep)
    verdict = NONTRIVIAL if report.ok else UNKNOWN
    details = {"failures": {f"x_{g}": n for g, n in report.failures.items()},
               "nontrivial_action": report.nontrivial}
    return Certificate(knot, "representation", rep.table(), rep.test_prefix, verdict, details=details)


def augmentation_certificate(knot: str, dga: GradedDGA, eps: dict) -> Certificate:
    from .charalg import NONTRIVIAL, UNKNOWN
    verdict = NONTRIVIAL if is_augmentation(dga, eps) else UNKNOWN
    return Certificate(knot, "augmentation", {f"x_{g}": v for g, v in sorted(eps.items())}, 1, verdict)


# ----------------------------------------------------------------------
# Finite-dimensional obstruction
# ----------------------------------------------------------------------
# Matrices over Z/2 are tuples of row bitmasks.


def mat_identity(n: int) -> tuple:
    return tuple(1 << i for i in range(n))


def mat_mul(x: tuple, y: tuple) -> tuple:
    out = []
    for row in x:
        acc = 0
        i = 0
        while row:
            if row & 1:
                acc ^= y[i]
            row >>= 1
            i += 1
        out.append(acc)
    return tuple(out)


def mat_add(x: tuple, y: tuple) -> tuple:
    return tuple(p ^ q for p, q in zip(x, y))


def mat_inverse(x: tuple):
    n = len(x)
    rows = [(x[i], 1 << i) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][0] >> col & 1), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(n):
            if r != col and rows[r][0] >> col & 1:
                rows[r] = (rows[r][0] ^ rows[col][0], rows[r][1] ^ rows[col][1])
    return tuple(r[1] for r in rows)


def four_generator_model_holds(a, b, c, d) -> bool:
    n = len(a)
    one, zero = mat_identity(n), (0,) * n
    return (mat_add(mat_mul(a, c), mat_mul(d, b)) == one and mat_mul(b, a) == zero
            and mat_mul(b, d) == one and mat_mul(c, a) == one and mat_mul(c, d) == zero)


def _random_matrix(n, rng):
    return tuple(rng.getrandbits(n) for _ in range(n))


def search_finite_model(n: int, samples: int = 2000, seed: int = 0):
    """Look for n x n matrices over Z/2 satisfying the four-generator
    relations.  Exhaustive for n <= 2; for larger n, random quadruples plus
    random invertible a, b with c, d their (forced) inverses.  Returns a
    model or None."""
    if n <= 2:
        mats = [tuple(m) for m in product(range(1 << n), repeat=n)]
        for a, b, c, d in product(mats, repeat=4):
            if four_generator_model_holds(a, b, c, d):
                return a, b, c, d
        return None
    rng = random.Random(seed)
    for _ in range(samples):
        quad = tuple(_random_matrix(n, rng) for _ in range(4))
        if four_generator_model_holds(*quad):
            return quad
        a, b = _random_matrix(n, rng), _random_matrix(n, rng)
        ai, bi = mat_inverse(a), mat_inverse(b)
        if ai is not None and bi is not None and four_generator_model_holds(a, b, ai, bi):
            return a, b, ai, bi
    return None
