"""Chekanov-Eliashberg DGAs of plat fronts.

The front is resolved into a Lagrangian-type diagram: every front crossing
stays a crossing, left cusps become smooth turns, and each right cusp becomes
a crossing followed by a small loop.  Disks are enumerated by sweeping the
front left to right while tracking the upper and lower boundary strands of
a disk that starts at a left cusp (or is the small loop of a right cusp).

Conventions shipped here:

* a disk's word is read counterclockwise from its positive corner: the
  negative corners on the upper boundary from right to left, then those on
  the lower boundary from left to right;
* each negative corner on the upper boundary at a crossing of even grading
  contributes a factor -1;
* the basepoint sits on the loop of one right cusp (policy ``bottom-loop``
  by default); that loop disk carries t^-1 when the knot runs down through
  the cusp and t otherwise.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .freealg import LAURENT, Z2, CoefficientRing, Derivation, Laurent, NCPoly
from .front import FrontDiagram, NotAKnot, count_components, orient

BASEPOINT_POLICIES = ("bottom-loop", "top-loop")
DEFAULT_BASEPOINT = "bottom-loop"
DISK_LIMIT = 1_000_000


class EnumerationOverflow(RuntimeError):
    pass


# ----------------------------------------------------------------------
# Resolved diagram
# ----------------------------------------------------------------------

# half-edge slots at a vertex, in counterclockwise order
NE, NW, SW, SE = 0, 1, 2, 3
QUADRANTS = {(NE, NW): "N", (NW, SW): "W", (SW, SE): "S", (SE, NE): "E"}


@dataclass(frozen=True)
class ResolvedDiagram:
    """Planar 4-valent graph of the resolved front.

    ``vertices`` are generator labels.  ``arcs`` are pairs of half-edges
    ``((v, slot), (w, slot))``.  ``faces`` are cyclic lists of corners
    ``(vertex, quadrant)``; the unbounded face is included.  ``loop_faces``
    maps each right-cusp generator to the index of its loop face.
    """

    vertices: tuple
    arcs: tuple
    faces: tuple
    loop_faces: dict
    basepoint: tuple  # the loop arc carrying the basepoint

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.arcs) + len(self.faces)


def _graph_components(vertices, arcs) -> int:
    parent = {v: v for v in vertices}

    def root(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (a, _), (b, _) in arcs:
        parent[root(a)] = root(b)
    return len({root(v) for v in vertices})


def _vertex_at_column(front: FrontDiagram):
    cols = defaultdict(list)  # position -> sorted [(column, label, is_upper)]
    for c in front.crossings:
        cols[c.position].append((c.column, c.label, True))
        cols[c.position + 1].append((c.column, c.label, False))
    end = len(front.crossings)
    for rc in front.right_cusps:
        cols[rc.position].append((end, rc.label, True))
        cols[rc.position + 1].append((end, rc.label, False))
    return cols


def resolve_front(front: FrontDiagram, basepoint: str = DEFAULT_BASEPOINT) -> ResolvedDiagram:
    if basepoint not in BASEPOINT_POLICIES:
        raise ValueError(f"unknown basepoint policy {basepoint!r}")
    cols = _vertex_at_column(front)
    arcs = []
    for p in range(1, front.strands + 1):
        seq = sorted(cols[p])
        for (c0, v0, up0), (c1, v1, up1) in zip(seq, seq[1:]):
            arcs.append(((v0, NE if up0 else SE), (v1, NW if up1 else SW)))
    for p in range(1, front.strands, 2):
        # left cusp: joins the first vertices on positions p and p + 1
        (_, v0, up0), (_, v1, up1) = cols[p][0], cols[p + 1][0]
        arcs.append(((v0, NW if up0 else SW), (v1, NW if up1 else SW)))
    for rc in front.right_cusps:
        arcs.append(((rc.label, NE), (rc.label, SE)))
    arcs.sort()

    other = {}
    for a, b in arcs:
        other[a] = b
        other[b] = a
    # face tracing: arrive at (w, s), leave by the next slot clockwise
    seen = set()
    faces = []
    loop_faces = {}
    for start in sorted(other):
        if start in seen:
            continue
        corners = []
        h = start
        while h not in seen:
            seen.add(h)
            w, s = other[h]
            nxt = (s - 1) % 4
            corners.append((w, QUADRANTS[(nxt, s)]))
            h = (w, nxt)
        faces.append(tuple(corners))
    for i, f in enumerate(faces):
        if len(f) == 1 and f[0][1] == "E":
            loop_faces[f[0][0]] = i
    labels = sorted({v for a in arcs for v, _ in a})
    cusp = front.right_cusps[-1 if basepoint == "bottom-loop" else 0].label
    diagram = ResolvedDiagram(tuple(labels), tuple(arcs), tuple(faces), loop_faces,
                              ((cusp, NE), (cusp, SE)))
    chi = diagram.euler_characteristic()
    if chi != 1 + _graph_components(labels, arcs):
        raise AssertionError(f"resolved diagram has Euler characteristic {chi}")
    return diagram


# ----------------------------------------------------------------------
# Gradings
# ----------------------------------------------------------------------


def maslov_potentials(front: FrontDiagram) -> tuple[dict, int]:
    """Potentials per strand id (value 0 on strand 1) and the rotation number
    magnitude |r| read off from the inconsistency around the knot."""
    if count_components(front) != 1:
        raise NotAKnot("gradings need a single-component front")
    adj = defaultdict(list)
    for p in range(1, front.strands, 2):
        adj[p].append((p + 1, -1))
        adj[p + 1].append((p, 1))
    for rc in front.right_cusps:
        adj[rc.upper].append((rc.lower, -1))
        adj[rc.lower].append((rc.upper, 1))
    mu = {1: 0}
    stack = [1]
    drift = 0
    while stack:
        s = stack.pop()
        for t, dv in adj[s]:
            v = mu[s] + dv
            if t not in mu:
                mu[t] = v
                stack.append(t)
            elif mu[t] != v:
                drift = abs(mu[t] - v)
    return mu, drift // 2


def grading_modulus(front: FrontDiagram) -> int:
    return 2 * maslov_potentials(front)[1]


def compute_gradings(front: FrontDiagram) -> dict:
    """Crossing grading = potential of the strand entering from the upper
    left minus that of the strand entering from the lower left; right cusps
    have grading 1.  Values are reduced mod 2|r| when r is nonzero."""
    mu, r = maslov_potentials(front)
    mod = 2 * r
    g = {}
    for c in front.crossings:
        v = mu[c.upper] - mu[c.lower]
        g[c.label] = v % mod if mod else v
    for rc in front.right_cusps:
        g[rc.label] = 1 % mod if mod else 1
    return g


# ----------------------------------------------------------------------
# Disk enumeration
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    output: int
    upper_corners: tuple  # negative corners on the upper boundary, left to right
    lower_corners: tuple

    @property
    def word(self) -> tuple:
        return tuple(reversed(self.upper_corners)) + self.lower_corners


def enumerate_disks(front: FrontDiagram, limit: int = DISK_LIMIT) -> list:
    """All admissible disks with a single positive corner, excluding the
    small loop disks of the right cusps."""
    word = front.braid.word
    ncol = len(word)
    out = []

    def push(disk):
        out.append(disk)
        if len(out) > limit:
            raise EnumerationOverflow(f"more than {limit} disks")

    # iterative DFS: (column, upper pos, lower pos, upper corners, lower corners)
    for j in range(1, front.strands, 2):
        stack = [(0, j, j + 1, (), ())]
        while stack:
            c, U, L, uc, lc = stack.pop()
            if c == ncol:
                if U % 2 == 1 and L == U + 1:
                    push(Disk(ncol + (U + 1) // 2, uc, lc))
                continue
            k = word[c]
            if U == k and L == k + 1:
                push(Disk(c + 1, uc, lc))
                continue
            if U == k:
                uopts = ((k + 1, False),)
            elif U == k + 1:
                uopts = ((k, False), (k + 1, True))
            else:
                uopts = ((U, False),)
            if L == k + 1:
                lopts = ((k, False),)
            elif L == k:
                lopts = ((k + 1, False), (k, True))
            else:
                lopts = ((L, False),)
            for u2, cu in uopts:
                for l2, cl in lopts:
                    if u2 < l2:
                        stack.append((c + 1, u2, l2,
                                      uc + (c + 1,) if cu else uc,
                                      lc + (c + 1,) if cl else lc))
    out.sort(key=lambda d: (d.output, d.word))
    return out


def disk_sign(disk: Disk, gradings: dict) -> int:
    neg = sum(1 for x in disk.upper_corners if gradings[x] % 2 == 0)
    return -1 if neg % 2 else 1


def basepoint_cusp(front: FrontDiagram, policy: str) -> int:
    if policy not in BASEPOINT_POLICIES:
        raise ValueError(f"unknown basepoint policy {policy!r}; choose from {BASEPOINT_POLICIES}")
    return len(front.right_cusps) - 1 if policy == "bottom-loop" else 0


# ----------------------------------------------------------------------
# Graded DGA
# ----------------------------------------------------------------------


@dataclass
class GradedDGA:
    ring: CoefficientRing
    diff: dict                      # generator -> NCPoly
    grading: dict = field(default_factory=dict)
    modulus: int = 0                # gradings live in Z / modulus
    names: dict = field(default_factory=dict)

    def __post_init__(self):
        for g, p in self.diff.items():
            if p.ring is not self.ring:
                raise ValueError(f"differential of generator {g} is over {p.ring}, not {self.ring}")

    @property
    def generators(self) -> list:
        return sorted(self.diff)

    def name(self, g: int) -> str:
        return self.names.get(g, f"x_{g}")

    def derivation(self) -> Derivation:
        return Derivation(self.ring, self.diff, self.grading if self.ring.signed else None)

    def apply(self, p: NCPoly) -> NCPoly:
        return self.derivation()(p)

    def to_z2(self) -> GradedDGA:
        """Reduction at t = 1 mod 2."""
        if self.ring is Z2:
            return self
        return GradedDGA(Z2, {g: p.at_t_equals_one_mod2() for g, p in self.diff.items()},
                         dict(self.grading), self.modulus, dict(self.names))

    def render_lines(self) -> list:
        return [f"d {self.name(g)} = {self.diff[g].render(self.names or None)}"
                for g in self.generators]

    def render(self) -> str:
        return "\n".join(self.render_lines()) + "\n"

    def degree(self, w) -> int:
        v = sum(self.grading[g] for g in w)
        return v % self.modulus if self.modulus else v

    def homogeneity_violations(self) -> list:
        """(generator, word) pairs whose degree is not |generator| - 1."""
        bad = []
        for g in self.generators:
            want = self.grading[g] - 1
            if self.modulus:
                want %= self.modulus
            for w in self.diff[g].words():
                if self.degree(w) != want:
                    bad.append((g, w))
        return bad

    def is_homogeneous(self) -> bool:
        return not self.homogeneity_violations()


def compute_differential(front: FrontDiagram, ring: CoefficientRing = Z2,
                         basepoint: str = DEFAULT_BASEPOINT) -> GradedDGA:
    gradings = compute_gradings(front)
    mod = grading_modulus(front)
    if mod % 2:
        raise AssertionError("grading modulus must be even for signs")
    bp = basepoint_cusp(front, basepoint)
    o = orient(front)
    t_exp = -1 if o.cusp_down[("R", bp)] else 1
    terms = defaultdict(list)
    for rc_index, rc in enumerate(front.right_cusps):
        if ring is Z2:
            terms[rc.label].append(((), 1))
        else:
            terms[rc.label].append(((), Laurent.monomial(t_exp if rc_index == bp else 0)))
    for disk in enumerate_disks(front):
        c = 1 if ring is Z2 else Laurent.const(disk_sign(disk, gradings))
        terms[disk.output].append((disk.word, c))
    diff = {g: NCPoly(ring, terms.get(g, ())) for g in range(1, front.n_generators + 1)}
    return GradedDGA(ring, diff, gradings, mod, {})


# ----------------------------------------------------------------------
# d^2 check
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DSquaredReport:
    checked: int
    failures: dict  # generator -> nonzero d(d(x))

    @property
    def ok(self) -> bool:
        return not self.failures


def check_d_squared(dga: GradedDGA) -> DSquaredReport:
    D = dga.derivation()
    failures = {}
    for g in dga.generators:
        dd = D(dga.diff[g])
        if dd:
            failures[g] = dd
    return DSquaredReport(len(dga.diff), failures)
