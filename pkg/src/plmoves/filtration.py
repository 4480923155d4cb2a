"""Filtered manifolds and extended bistellar moves.

A filtered complex carries nested strata M_0 within M_1 within ... within
M_n = K.  A bistellar move chi_(A,B) performed inside the stratum M_k
propagates upward through its iterated filtered suspension: writing P_l for
the join of the apex pairs of levels k+1..l, the move is available when

    lk(A; M_l) = boundary(B) * P_l          for every l = k..n,

with each level's two apexes lying in the next-higher open stratum, and it
replaces the suspended star (A * boundary(B)) * P_l by (boundary(A) * B) *
P_l inside every M_l.  Restricted to M_k this is exactly the inner
bistellar move; that commutation is what the tests pin down.

Local flatness of the strata is an input assumption; validate_filtration
says so rather than pretending to check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    EMPTY,
    Complex,
    Simplex,
    closure,
    fresh_vertex,
    join,
    link,
    product_with_interval,
    simplex_boundary,
    simplex_complex,
)
from .manifold import Verdict, check_combinatorial_manifold
from .moves import BistellarMove, MoveError, enumerate_moves


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class FilteredComplex:
    """Strata M_0 .. M_n with M_n the whole complex.  Cheap structural
    invariants (nesting, dimension bounds) are enforced on construction;
    the manifold conditions live in validate_filtration."""

    strata: tuple[Complex, ...]

    def __post_init__(self):
        strata = tuple(self.strata)
        object.__setattr__(self, "strata", strata)
        if not strata:
            raise FiltrationError("a filtered complex needs at least one stratum")
        n = len(strata) - 1
        if strata[n].dim > n:
            raise FiltrationError(
                "top stratum has dimension %d, expected at most %d" % (strata[n].dim, n)
            )
        for k, m in enumerate(strata):
            if m and m.dim > k:
                raise FiltrationError("stratum %d has dimension %d" % (k, m.dim))
            if k < n and m and not m.is_subcomplex_of(strata[k + 1]):
                raise FiltrationError("stratum %d is not contained in stratum %d" % (k, k + 1))

    @property
    def complex(self) -> Complex:
        return self.strata[-1]

    @property
    def n(self) -> int:
        return len(self.strata) - 1

    def __eq__(self, other):
        return isinstance(other, FilteredComplex) and self.strata == other.strata

    def __hash__(self):
        return hash(self.strata)


@dataclass(frozen=True)
class SuspensionData:
    """Apex pairs per level for an iterated filtered suspension starting at
    stratum dimension start; level k+1+i uses apexes[i]."""

    start: int
    apexes: tuple[tuple[int, int], ...]

    def pair_complex_through(self, level: int) -> Complex:
        """P_level: the join of the two-point complexes of levels start+1
        through level (EMPTY when level == start)."""
        out = EMPTY
        for plus, minus in self.apexes[: level - self.start]:
            out = join(out, Complex([Simplex([plus]), Simplex([minus])], _trusted=True))
        return out


@dataclass(frozen=True)
class ExtendedMove:
    """An inner bistellar move in stratum dimension ``stratum`` together
    with the suspension carrying it up to the top stratum."""

    stratum: int
    inner: BistellarMove
    suspension: SuspensionData

    def __post_init__(self):
        if self.suspension.start != self.stratum:
            raise FiltrationError("suspension data starts at the wrong stratum")

    def inverse(self) -> "ExtendedMove":
        return ExtendedMove(self.stratum, self.inner.inverse(), self.suspension)

    def __str__(self):
        return "extended[%d] %s via %s" % (self.stratum, self.inner, list(self.suspension.apexes))


@dataclass(frozen=True)
class FiltrationReport:
    ok: bool
    findings: tuple[str, ...]
    notes: tuple[str, ...]


def validate_filtration(fc: FilteredComplex) -> FiltrationReport:
    """Check what can be checked combinatorially: nesting and dimension
    bounds hold by construction; each nonempty stratum must be pure of its
    own dimension and pass the combinatorial-manifold report (boundary
    allowed).  Local flatness of strata is assumed, not checked."""
    findings = []
    for k, m in enumerate(fc.strata):
        if not m:
            continue
        if m.dim != k:
            findings.append("stratum %d is %d-dimensional" % (k, m.dim))
            continue
        if not m.is_pure:
            findings.append("stratum %d is not pure" % k)
            continue
        report = check_combinatorial_manifold(m)
        if report.verdict is Verdict.NO:
            findings.append("stratum %d fails the manifold check: %s" % (k, report))
    return FiltrationReport(
        ok=not findings,
        findings=tuple(findings),
        notes=("local flatness of strata is assumed, not checked",),
    )


def stratum_of(fc: FilteredComplex, s) -> int:
    """The least k with s a simplex of M_k."""
    s = Simplex(s)
    for k, m in enumerate(fc.strata):
        if s in m:
            return k
    raise FiltrationError("%s is not a simplex of the complex" % (s,))


def find_filtered_suspension(fc: FilteredComplex, ball: Complex, k: int | None = None):
    """The lexicographically least iterated filtered suspension of ``ball``.

    Searches, level by level, for apex pairs (plus < minus) drawn from the
    vertices of M_{l+1} outside M_l such that the join of the suspended ball
    with both apexes is a subcomplex of M_{l+1}.  Returns SuspensionData or
    None.  ``k`` defaults to the dimension of the ball.
    """
    if k is None:
        k = ball.dim
    if k < 0 or k > fc.n:
        raise FiltrationError("ball dimension %d outside the filtration" % k)
    if not ball.is_subcomplex_of(fc.strata[k]):
        raise FiltrationError("ball is not a subcomplex of stratum %d" % k)

    def extend(level, current):
        if level == fc.n:
            return ()
        upper = fc.strata[level + 1]
        lower_vertices = fc.strata[level].vertices
        candidates = sorted(
            v
            for v in upper.vertices
            if v not in lower_vertices and v not in current.vertices
        )
        usable = [
            v
            for v in candidates
            if all(f.joined(Simplex([v])) in upper for f in current.facets)
        ]
        for plus, minus in combinations(usable, 2):
            bigger = join(
                current, Complex([Simplex([plus]), Simplex([minus])], _trusted=True)
            )
            rest = extend(level + 1, bigger)
            if rest is not None:
                return ((plus, minus),) + rest
        return None

    found = extend(k, ball)
    if found is None:
        return None
    return SuspensionData(k, found)


def _expected_link(inner: BistellarMove, fresh: bool, susp: SuspensionData, level: int):
    base = EMPTY if fresh else simplex_boundary(inner.b)
    return join(base, susp.pair_complex_through(level))


def _is_fresh_inner(fc: FilteredComplex, move: ExtendedMove) -> bool:
    """A facet-subdivision inner move is recognized by its b being a single
    vertex absent from the whole complex."""
    return move.inner.b.dim == 0 and move.inner.b[0] not in fc.complex.vertices


def extended_applicable(fc: FilteredComplex, move: ExtendedMove) -> str | None:
    """None when the move applies; otherwise the first failed condition."""
    k = move.stratum
    inner = move.inner
    if not 1 <= k <= fc.n:
        return "stratum index %d outside 1..%d" % (k, fc.n)
    if len(move.suspension.apexes) != fc.n - k:
        return "suspension must carry %d levels, has %d" % (
            fc.n - k,
            len(move.suspension.apexes),
        )
    mk = fc.strata[k]
    a = inner.a
    if a not in mk:
        return "%s is not a simplex of stratum %d" % (a, k)
    if k > 0 and a in fc.strata[k - 1]:
        return "%s is not in the open stratum %d" % (a, k)
    if a in mk.boundary_complex:
        return "%s lies in the boundary of stratum %d" % (a, k)
    fresh = _is_fresh_inner(fc, move)
    if fresh:
        if a.dim != k:
            return "fresh-vertex move needs a %d-simplex, got %s" % (k, a)
    else:
        if inner.n != k:
            return "inner move dimensions do not sum to %d" % k
        if inner.b in fc.complex:
            return "co-simplex %s already present" % (inner.b,)
    seen = set()
    for level, (plus, minus) in zip(range(k + 1, fc.n + 1), move.suspension.apexes):
        upper_vertices = fc.strata[level].vertices
        lower_vertices = fc.strata[level - 1].vertices
        for v in (plus, minus):
            if v in lower_vertices or v not in upper_vertices:
                return "apex %d is not in the open stratum %d" % (v, level)
            if v in seen:
                return "apex %d repeated" % v
            seen.add(v)
    for level in range(k, fc.n + 1):
        expected = _expected_link(inner, fresh, move.suspension, level)
        if link(a, fc.strata[level]) != expected:
            return "link of %s in stratum %d is not the suspended boundary" % (a, level)
    return None


def apply_extended_bistellar(fc: FilteredComplex, move: ExtendedMove) -> FilteredComplex:
    """Replace the iterated suspension of [A * dB] with that of [dA * B] in
    every stratum from the move's own upward.  Restriction to M_k is the
    plain bistellar move; lower strata are untouched."""
    problem = extended_applicable(fc, move)
    if problem is not None:
        raise MoveError("cannot apply %s: %s" % (move, problem))
    k = move.stratum
    inner = move.inner
    a = inner.a
    fresh = _is_fresh_inner(fc, move)
    after_core = join(simplex_boundary(a), simplex_complex(inner.b))
    aset = set(a)
    new_strata = list(fc.strata[:k])
    for level in range(k, fc.n + 1):
        body = join(after_core, move.suspension.pair_complex_through(level))
        kept = [f for f in fc.strata[level].facets if not aset <= set(f)]
        new_strata.append(closure(list(kept) + list(body.facets)))
    return FilteredComplex(tuple(new_strata))


def suspension_from_links(
    fc: FilteredComplex, a, b, k: int
) -> SuspensionData | None:
    """Derive the apex pair of each level directly from the links of ``a``:
    when the extended move is available the apexes are forced, being the
    vertices of lk(a; M_{l}) beyond those of the level below.  Returns None
    as soon as the forced shape fails."""
    a = Simplex(a)
    pairs = []
    prev_vertices = set() if b is None else set(b)
    for level in range(k + 1, fc.n + 1):
        lk_level = link(a, fc.strata[level])
        extra = sorted(lk_level.vertices - prev_vertices - set(pair for p in pairs for pair in p))
        lower = fc.strata[level - 1].vertices
        extra = [v for v in extra if v not in lower]
        if len(extra) != 2:
            return None
        pairs.append((extra[0], extra[1]))
        prev_vertices |= set(extra)
    return SuspensionData(k, tuple(pairs))


def enumerate_extended_moves(
    fc: FilteredComplex, label_floor: int = -1
) -> list[ExtendedMove]:
    """Every applicable extended move, ordered by (stratum, inner move).

    Inner candidates come from the stratum with its lower stratum and its
    boundary avoided; fresh labels are fresh for the whole complex.  Each
    candidate's suspension is forced by the links, and the full
    applicability check filters the rest.
    """
    out = []
    floor = max(fresh_vertex(fc.complex) - 1, label_floor)
    for k in range(1, fc.n + 1):
        mk = fc.strata[k]
        if not mk or mk.dim != k:
            continue
        avoid = closure(
            list(fc.strata[k - 1].facets) + list(mk.boundary_complex.facets)
        )
        try:
            inners = enumerate_moves(mk, avoid, label_floor=floor)
        except MoveError:
            continue
        for inner in inners:
            fresh = inner.b.dim == 0 and inner.b[0] not in fc.complex.vertices
            susp = suspension_from_links(
                fc, inner.a, None if fresh else inner.b, k
            )
            if susp is None:
                continue
            move = ExtendedMove(k, inner, susp)
            if extended_applicable(fc, move) is None:
                out.append(move)
    return out


@dataclass(frozen=True)
class BallInterval:
    """The output of ball_times_interval: the triangulated product together
    with the source ball, the three copy maps and the two cone apexes."""

    complex: Complex
    source: Complex
    minus_map: dict
    zero_map: dict
    plus_map: dict
    apex_plus: int
    apex_minus: int

    def suspension_part(self) -> Complex:
        """The suspension of the middle copy from the two apexes, which the
        construction contains as a subcomplex."""
        middle = Complex(
            [Simplex(self.zero_map[v] for v in f) for f in self.source.facets],
            _trusted=True,
        )
        return join(
            middle,
            Complex([Simplex([self.apex_plus]), Simplex([self.apex_minus])], _trusted=True),
        )


def ball_times_interval(b: Complex, vertex_order=None, apexes=None) -> BallInterval:
    """Triangulate B x [-1, 1] from three copies of B, staircase walls over
    the boundary, and two cone apexes.

    Copies of B sit at heights 1, 0, -1; dB x [0,1] and dB x [-1,0] get the
    staircase triangulation induced by ``vertex_order``; what remains of
    B x [0,1] is starred from apex_plus and of B x [-1,0] from apex_minus.
    The suspension of the middle copy from the two apexes is a subcomplex,
    which is the point of the construction.
    """
    if not b:
        raise MoveError("cannot thicken the empty complex")
    report = check_combinatorial_manifold(b)
    if not report.pseudomanifold:
        raise MoveError("input fails the pseudomanifold-with-boundary check: %s" % report)
    verts = sorted(b.vertices)
    order = list(vertex_order) if vertex_order is not None else verts
    if set(order) != set(verts):
        raise MoveError("vertex_order must enumerate the vertex set exactly")
    base = fresh_vertex(b)
    zero_map = {v: v for v in verts}
    plus_map = {v: base + i for i, v in enumerate(verts)}
    minus_map = {v: base + len(verts) + i for i, v in enumerate(verts)}
    if apexes is None:
        apex_plus, apex_minus = base + 2 * len(verts), base + 2 * len(verts) + 1
    else:
        apex_plus, apex_minus = apexes
        used = set(verts) | set(plus_map.values()) | set(minus_map.values())
        if apex_plus == apex_minus or {apex_plus, apex_minus} & used:
            raise MoveError("apex labels collide with the construction")

    def relabeled(mapping):
        return Complex([Simplex(mapping[v] for v in f) for f in b.facets], _trusted=True)

    boundary = b.boundary_complex
    sides = {}
    for name, bottom, top in (("plus", zero_map, plus_map), ("minus", minus_map, zero_map)):
        if boundary:
            border = [v for v in order if v in boundary.vertices]
            wall = product_with_interval(
                boundary,
                border,
                bottom_labels={v: bottom[v] for v in boundary.vertices},
                top_labels={v: top[v] for v in boundary.vertices},
            )
            wall_facets = list(wall.facets)
        else:
            wall_facets = []
        cell_boundary = closure(
            list(relabeled(bottom).facets) + list(relabeled(top).facets) + wall_facets
        )
        apex = apex_plus if name == "plus" else apex_minus
        sides[name] = [f.joined(Simplex([apex])) for f in cell_boundary.facets]
    result = closure(sides["plus"] + sides["minus"])
    return BallInterval(result, b, minus_map, zero_map, plus_map, apex_plus, apex_minus)


@dataclass(frozen=True)
class SchemaEntry:
    stratum_dim: int
    pair: tuple[int, int]  # inner move dimensions (j, k - j), j <= k - j
    suspension_depth: int


@dataclass(frozen=True)
class SchemaCensus:
    ambient_dim: int
    present_dims: tuple[int, ...]
    entries: tuple[SchemaEntry, ...]
    quoted_pair_count: int

    @property
    def pair_count(self) -> int:
        return len(self.entries)


def count_move_schemas(n: int, present_dims=None) -> SchemaCensus:
    """The census of inverse pairs of extended-move schemas.

    For each stratum dimension k the inner bistellar operations chi_(A,B)
    with dim A = j, dim B = k - j pair off under inversion as {j, k-j}, so a
    k-stratum contributes floor(k/2) + 1 pairs, each carried by an
    (n-k)-fold suspension.  ``present_dims`` restricts which stratum
    dimensions occur (default: all of 1..n; dimension-0 strata carry no
    moves).  The pattern of a knotted surface, strata of dimensions 1, 2
    and 3, yields exactly five pairs.  The count n*n - n quoted for the
    general filtered case is reported alongside, not asserted: it differs
    from this enumeration.
    """
    if n < 1:
        raise ValueError("ambient dimension must be at least 1")
    dims = tuple(sorted(set(range(1, n + 1) if present_dims is None else present_dims)))
    if any(k < 1 or k > n for k in dims):
        raise ValueError("stratum dimensions must lie in 1..%d" % n)
    entries = []
    for k in dims:
        for j in range(0, k // 2 + 1):
            entries.append(SchemaEntry(k, (j, k - j), n - k))
    return SchemaCensus(n, dims, tuple(entries), n * n - n)
