"""Reference differentials for the two built-in knots.

``M10_161_Z2`` is the differential of the m10_161 plat over Z/2 (t = 1) and
``M10_139_LAURENT`` the differential of the m10_139 plat over Z[t, t^-1],
both as published, one line per generator.  They serve as test oracles and
as loadable DGAs that do not depend on disk enumeration.
"""

from __future__ import annotations

from .dga import GradedDGA, compute_gradings, grading_modulus
from .freealg import LAURENT, Z2, CoefficientRing, parse_poly
from .front import get_knot

M10_161_Z2 = """\
d x_1 = 0
d x_2 = x_1
d x_3 = 0
d x_4 = x_3 x_1
d x_5 = x_3 x_2 + x_4
d x_6 = x_3
d x_7 = 0
d x_8 = x_7
d x_9 = 0
d x_10 = x_9
d x_11 = x_3
d x_12 = 0
d x_13 = 0
d x_14 = 0
d x_15 = x_14
d x_16 = 0
d x_17 = x_16
d x_18 = 0
d x_19 = x_1 + x_12 x_4 + x_12 x_11 x_1
d x_20 = x_2 x_13 + x_12 x_5 x_13 + x_12 x_11 x_2 x_13 + 1 + x_12 x_6 + x_12 x_11 + x_19 x_13
d x_21 = x_2 x_14 + x_12 x_5 x_14 + x_12 x_11 x_2 x_14 + x_12 x_7 + x_19 x_14
d x_22 = x_2 x_15 + x_12 x_5 x_15 + x_12 x_11 x_2 x_15 + x_12 x_8 + x_19 x_15 + x_21
d x_23 = x_2 x_16 + x_12 x_5 x_16 + x_12 x_11 x_2 x_16 + x_12 x_9 + x_19 x_16
d x_24 = x_2 x_17 + x_12 x_5 x_17 + x_12 x_11 x_2 x_17 + x_12 x_10 + x_19 x_17 + x_23
d x_25 = 0
d x_26 = x_25
d x_27 = 0
d x_28 = 0
d x_29 = x_28 x_25
d x_30 = 0
d x_31 = x_4 + x_11 x_1
d x_32 = x_5 x_13 x_28 + x_11 x_2 x_13 x_28 + x_6 x_28 + x_11 x_28 + x_5 x_14 + x_11 x_2 x_14 + x_7 + x_31 x_13 x_28 + x_31 x_14
d x_33 = 0
d x_34 = 0
d x_35 = x_33 x_2 x_18 + x_33 x_12 x_5 x_18 + x_33 x_12 x_11 x_2 x_18 + x_33 x_12 + x_33 x_19 x_18 + x_34 x_27 x_2 x_18 + x_34 x_27 x_12 x_5 x_18 + x_34 x_27 x_12 x_11 x_2 x_18 + x_34 x_27 x_12 + x_34 x_27 x_19 x_18
d x_36 = x_13 x_28 + x_14 + 1
d x_37 = x_5 x_13 x_29 x_30 + x_11 x_2 x_13 x_29 x_30 + x_6 x_29 x_30 + x_11 x_29 x_30 + x_5 x_15 x_25 x_30 + x_11 x_2 x_15 x_25 x_30 + x_8 x_25 x_30 + x_5 x_16 x_30 + x_11 x_2 x_16 x_30 + x_9 x_30 + x_5 x_13 + x_11 x_2 x_13 + x_6 + x_11 + x_31 x_13 x_29 x_30 + x_31 x_15 x_25 x_30 + x_31 x_16 x_30 + x_31 x_13 + x_32 x_25 x_30 + 1
d x_38 = x_33 + x_30 x_28 x_26 x_33 + x_30 x_29 x_33 + x_30 x_28 x_27 + 1
d x_39 = x_27 x_2 x_18 + x_27 x_12 x_5 x_18 + x_27 x_12 x_11 x_2 x_18 + x_27 x_12 + x_27 x_19 x_18 + 1
d x_40 = x_33 x_2 + x_33 x_12 x_5 + x_33 x_12 x_11 x_2 + x_33 x_19 + x_34 x_27 x_2 + x_34 x_27 x_12 x_5 + x_34 x_27 x_12 x_11 x_2 + x_34 x_27 x_19 + 1
"""

M10_139_LAURENT = """\
d x_1 = 0
d x_2 = -x_1
d x_3 = 0
d x_4 = -x_3
d x_5 = 0
d x_6 = -x_5
d x_7 = 0
d x_8 = -x_7
d x_9 = 0
d x_10 = x_1
d x_11 = 0
d x_12 = 0
d x_13 = 0
d x_14 = 0
d x_15 = 0
d x_16 = x_2 x_11 + x_10 x_11 + x_3
d x_17 = x_11 x_12
d x_18 = x_12 x_13
d x_19 = x_12
d x_20 = 0
d x_21 = x_18 x_9 x_20 - x_19 x_13 x_9 x_20 + x_18 - x_19 x_13
d x_22 = 0
d x_23 = x_9 x_20 + 1 + x_22 x_13 x_9 x_20 + x_22 x_13
d x_24 = x_11 x_18 x_22 + x_17 x_13 x_22 + x_11 x_19 +x_17
d x_25 = x_11 x_18 x_23 + x_17 x_13 x_23 + x_11 x_21 - x_24 x_13 x_9 x_20 - x_24 x_13
d x_26 = x_13 x_22 + 1
d x_27 = x_13 x_23 + x_26 x_13 x_9 x_20 + x_26 x_13
d x_28 = x_2 x_17 x_26 + x_10 x_17 x_26 + x_4 x_12 x_26 + x_5 x_26 + x_16 x_12 x_26 + x_2 x_24 + x_10 x_24 + x_4 x_18 x_22 + x_16 x_18 x_22 + x_6 x_13 x_22 + x_7 x_22 + x_4 x_19 + x_16 x_19 + x_6
d x_29 = x_2 x_17 x_27 + x_10 x_17 x_27 + x_4 x_12 x_27 + x_5 x_27 + x_16 x_12 x_27 + x_2 x_25 + x_10 x_25 + x_4 x_18 x_23 + x_16 x_18 x_23 + x_6 x_13 x_23 + x_7 x_23 + x_4 x_21 + x_16 x_21 + x_8 x_9 x_20 + x_20 + x_8 - x_28 x_13 x_9 x_20 - x_28 x_13
d x_30 = x_12 x_26 + x_18 x_22 + x_19
d x_31 = x_12 x_27 + x_18 x_23 + x_21 + x_30 x_13 x_9 x_20 + x_30 x_13
d x_32 = x_15 x_11 x_30 + x_15 x_17 x_26 + x_15 x_24
d x_33 = x_15 x_11 x_31 + x_15 x_17 x_27 + x_15 x_25 - x_32 x_13 x_9 x_20 - x_32 x_13
d x_34 = x_11 x_30 + x_17 x_26 + x_24
d x_35 = x_11 x_31 + x_17 x_27 + x_25 + x_34 x_13 x_9 x_20 + x_34 x_13
d x_36 = x_14 x_15 x_34 + x_14 x_32
d x_37 = x_14 x_15 x_35 + x_14 x_33 - x_36 x_13 x_9 x_20 - x_36 x_13
d x_38 = x_15 x_34 + x_32
d x_39 = x_14 x_38 + x_36 + 1
d x_40 = x_15 x_35 + x_33 + x_38 x_13 x_9 x_20 + x_38 x_13 + 1
d x_41 = x_14 x_15 + 1
d x_42 = x_15 x_11 + 1
d x_43 = x_2 x_17 + x_10 x_17 + x_4 x_12 + x_5 + x_16 x_12 + 1
d x_44 = x_11 x_18 + x_17 x_13 + 1
d x_45 = x_18 x_9 - x_19 x_13 x_9 + t^-1
"""

TABLES = {
    "m10_161": (M10_161_Z2, Z2),
    "m10_139": (M10_139_LAURENT, LAURENT),
}


def parse_table(text: str, ring: CoefficientRing) -> dict:
    """Parse lines ``d x_i = <polynomial>`` into {i: NCPoly}."""
    diff = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("=")
        name = lhs.strip()
        if not sep or not name.startswith("d "):
            raise ValueError(f"line {lineno}: expected 'd x_i = ...'")
        g = int(name[2:].strip().lstrip("x").lstrip("_").strip("{}"))
        diff[g] = parse_poly(rhs, ring)
    return diff


def reference_dga(name: str) -> GradedDGA:
    """The published differential of a built-in knot, with computed gradings."""
    try:
        text, ring = TABLES[name]
    except KeyError:
        raise KeyError(f"no reference table for {name!r}") from None
    front = get_knot(name).front()
    return GradedDGA(ring, parse_table(text, ring), compute_gradings(front),
                     grading_modulus(front), {})


# Generators that vanish in the characteristic algebra of m10_161.
M10_161_ZEROS = frozenset({1, 3, 4, 7, 9, 14, 16, 25})

# Extra ideal used to pass to a six-generator quotient of that algebra.
M10_161_EXTRA_IDEAL = (
    "x_5", "x_6", "x_8", "x_10", "x_15", "x_17", "x_18", "x_19", "x_20", "x_21",
    "x_22", "x_23", "x_24", "x_26", "x_31", "x_32", "x_35", "x_36", "x_37",
    "x_38", "x_39", "x_40", "x_30 + 1", "x_34 + 1", "x_27 x_2 + 1", "x_11 x_2",
    "x_28 + x_2", "x_11 + x_33",
)

M10_161_QUOTIENT_GENERATORS = (2, 11, 12, 13, 27, 29)

# Relations of the quotient, each "lhs = rhs" over Z/2.
M10_161_QUOTIENT_RELATIONS = (
    "x_2 x_13 + x_12 x_11 = 1",
    "x_11 x_12 + x_27 x_12 = 0",
    "x_13 x_2 = 1",
    "x_11 (x_29 + 1) = 1",
    "(x_29 + 1) x_11 + x_2 x_27 = 1",
    "x_27 x_12 = 1",
    "x_27 x_2 = 1",
)

# Substitution onto the four-generator algebra; e and f are a + d and b + c.
QUOTIENT_TO_FOUR = {12: "a", 13: "b", 27: "c", 29: "d + 1", 2: "a + d", 11: "b + c"}

# The six-generator relations after substituting e = a + d and f = b + c.
SIX_GENERATOR_RELATIONS = (
    "e b + a f = 1",
    "f a + c a = 0",
    "b e = 1",
    "f d = 1",
    "d f + e c = 1",
    "c a = 1",
    "c e = 1",
)

FOUR_GENERATOR_RELATIONS = (
    "c a = 1",
    "b + c + f = 0",
    "b a = 0",
    "a + d + e = 0",
    "c d = 0",
    "b d = 1",
    "a c + d b = 1",
)

FOUR_NAMES = {"a": 1, "b": 2, "c": 3, "d": 4, "e": 5, "f": 6}
EF_ELIMINATION = {5: "a + d", 6: "b + c"}

# Element of the m10_139 algebra whose differential is 1 over Z[t, t^-1].
M10_139_WITNESS = (
    "(x_2 + x_10) (((x_41 x_11 + x_14 x_42) x_15 + x_41 - x_44) x_22 + x_24)"
    " + (x_4 + x_16) (x_15 x_22 + x_19) + x_6 + x_43"
)


def parse_relation(text: str, ring: CoefficientRing = Z2, names=None):
    """``lhs = rhs`` (or a bare polynomial) as the polynomial lhs - rhs."""
    lhs, sep, rhs = text.partition("=")
    p = parse_poly(lhs, ring, names)
    return p - parse_poly(rhs, ring, names) if sep else p


def four_generator_sets():
    """The six-generator and four-generator relation sets with e and f
    eliminated, as Z/2 polynomials in a, b, c, d (generators 1..4)."""
    from .freealg import nc_substitute

    elim = {g: parse_poly(t, Z2, FOUR_NAMES) for g, t in EF_ELIMINATION.items()}
    for g in range(1, 5):
        elim[g] = parse_poly(f"x_{g}", Z2)

    def convert(rels):
        return [nc_substitute(parse_relation(r, Z2, FOUR_NAMES), elim) for r in rels]

    six = [p for p in convert(SIX_GENERATOR_RELATIONS) if p]
    four = [p for p in convert(FOUR_GENERATOR_RELATIONS) if p]
    return six, four
