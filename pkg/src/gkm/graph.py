"""GKM moment graphs: construction, validation and export."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

import jsonschema

from .coxeter import CartanMatrix, enumerate_cosets, inversions
from .lattice import (
    Weight,
    apply_matrix,
    check_coprime_H,
    check_coprime_K,
    is_zero,
    primitive_part,
    unimodular,
)
from .poly import default_names, linear_from_weight


@dataclass(frozen=True)
class Vertex:
    id: str
    length: int
    position: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class Edge:
    """Downward edge: ``length(source) > length(target)``."""

    source: str
    target: str
    weight: Weight


@dataclass(frozen=True)
class GkmGraph:
    rank: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    truncation: int | None = None
    variables: tuple[str, ...] = ()
    origin: Mapping | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.variables:
            object.__setattr__(self, "variables", tuple(default_names(self.rank)))
        object.__setattr__(self, "_index", {v.id: v for v in self.vertices})
        down: dict[str, list[Edge]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            down.setdefault(e.source, []).append(e)
        object.__setattr__(self, "_down", {k: tuple(v) for k, v in down.items()})

    def vertex(self, vid: str) -> Vertex:
        return self._index[vid]

    def length(self, vid: str) -> int:
        return self._index[vid].length

    def down_edges(self, vid: str) -> tuple[Edge, ...]:
        return self._down.get(vid, ())

    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def by_length(self) -> list[Vertex]:
        """Vertices sorted by length, stable within a length."""
        return sorted(self.vertices, key=lambda v: v.length)

    @property
    def complete(self) -> bool:
        return self.truncation is None

    def below(self, vid: str) -> set[str]:
        """Vertices reachable from ``vid`` along downward edges (excluding ``vid``)."""
        seen = set()
        stack = [vid]
        while stack:
            for e in self.down_edges(stack.pop()):
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        return seen


class GraphError(ValueError):
    pass


# construction ---------------------------------------------------------------


def build_graph(cartan: CartanMatrix | str, parabolic: Iterable[int], max_length: int | None) -> GkmGraph:
    """GKM graph of ``G/P`` from Coxeter data, truncated at ``max_length``.

    Edges come from inversion data only, so any complete-graph structure
    is discovered rather than assumed.
    """
    if isinstance(cartan, str):
        cartan = CartanMatrix.parse(cartan)
    parabolic = tuple(sorted(set(parabolic)))
    cosets = enumerate_cosets(cartan, parabolic, max_length)
    vertices = []
    edges = []
    for rep in cosets:
        vertices.append(Vertex(rep.name, rep.length, tuple(Fraction(x) for x in rep.position)))
        for d in inversions(rep, cosets):
            edges.append(Edge(rep.name, d.target.name, d.root))
    truncation = None if cosets.complete else max_length
    origin = {"cartan": cartan.to_string(), "parabolic": list(parabolic), "kind": cartan.kind()}
    g = GkmGraph(cartan.n, tuple(vertices), tuple(edges), truncation, origin=origin)
    _check_structure(g)
    return g


GRAPH_SCHEMA = {
    "type": "object",
    "required": ["rank", "vertices", "edges"],
    "properties": {
        "rank": {"type": "integer", "minimum": 1},
        "variables": {"type": "array", "items": {"type": "string"}},
        "truncation": {"type": ["integer", "null"]},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "length"],
                "properties": {
                    "id": {"type": "string"},
                    "length": {"type": "integer", "minimum": 0},
                    "position": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["source", "target", "weight"],
                "properties": {
                    "source": {"type": "string"},
                    "target": {"type": "string"},
                    "weight": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}


def build_graph_explicit(description: Mapping | str) -> GkmGraph:
    """Build a graph from its JSON description (dict or JSON text)."""
    if isinstance(description, (str, bytes)):
        description = json.loads(description)
    try:
        jsonschema.validate(description, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise GraphError(f"schema violation: {exc.message}") from exc
    n = description["rank"]
    variables = tuple(description.get("variables") or default_names(n))
    if len(variables) != n:
        raise GraphError("variables must have one name per lattice coordinate")
    vertices = []
    for v in description["vertices"]:
        pos = tuple(Fraction(x) for x in v.get("position", []))
        vertices.append(Vertex(v["id"], v["length"], pos))
    edges = []
    for e in description["edges"]:
        if len(e["weight"]) != n:
            raise GraphError(f"edge {e['source']}->{e['target']} weight has wrong rank")
        edges.append(Edge(e["source"], e["target"], tuple(e["weight"])))
    g = GkmGraph(n, tuple(vertices), tuple(edges), description.get("truncation"), variables)
    _check_structure(g)
    return g


def _check_structure(g: GkmGraph) -> None:
    ids = [v.id for v in g.vertices]
    if len(set(ids)) != len(ids):
        raise GraphError("duplicate vertex ids")
    known = set(ids)
    pairs = set()
    for e in g.edges:
        if e.source not in known or e.target not in known:
            raise GraphError(f"edge {e.source}->{e.target} references an unknown vertex")
        if e.source == e.target:
            raise GraphError(f"self-loop at {e.source}")
        if is_zero(e.weight):
            raise GraphError(f"zero weight on edge {e.source}->{e.target}")
        if g.length(e.source) <= g.length(e.target):
            raise GraphError(f"edge {e.source}->{e.target} is not length-decreasing")
        key = frozenset((e.source, e.target))
        if key in pairs:
            raise GraphError(f"multiple edges between {e.source} and {e.target}")
        pairs.add(key)
    for v in g.vertices:
        k = len(g.down_edges(v.id))
        if k != v.length:
            raise GraphError(f"vertex {v.id} has length {v.length} but {k} downward edges")


# transformations ---------------------------------------------------------------


def change_basis(g: GkmGraph, matrix: Sequence[Sequence[int]], variables: Sequence[str] | None = None) -> GkmGraph:
    """Re-express weights and positions in a new lattice basis.

    ``matrix`` maps old coordinates to new ones and must be unimodular.
    """
    if not unimodular(matrix):
        raise ValueError("basis change must be unimodular")
    vs = tuple(
        Vertex(v.id, v.length, tuple(Fraction(x) for x in _apply_rational(matrix, v.position)) if v.position else ())
        for v in g.vertices
    )
    es = tuple(Edge(e.source, e.target, apply_matrix(matrix, e.weight)) for e in g.edges)
    return GkmGraph(g.rank, vs, es, g.truncation, tuple(variables) if variables else g.variables, g.origin)


def _apply_rational(m, v):
    return [sum(Fraction(r[k]) * v[k] for k in range(len(v))) for r in m]


def reorient(g: GkmGraph, weights: Mapping[tuple[str, str], Weight]) -> GkmGraph:
    """Replace edge weights by sign-flipped versions (same Euler ideal, new representative).

    ``weights`` maps ``(source, target)`` to the new weight, which must be
    ``+-`` the old one; unlisted edges keep their weight.
    """
    es = []
    for e in g.edges:
        w = weights.get((e.source, e.target))
        if w is None:
            es.append(e)
            continue
        w = tuple(int(x) for x in w)
        if w != e.weight and w != tuple(-x for x in e.weight):
            raise GraphError(f"edge {e.source}->{e.target}: {w} is not +-{e.weight}")
        es.append(Edge(e.source, e.target, w))
    return GkmGraph(g.rank, g.vertices, tuple(es), g.truncation, g.variables, g.origin)


def relabel(g: GkmGraph, mapping: Mapping[str, str]) -> GkmGraph:
    vs = tuple(replace(v, id=mapping.get(v.id, v.id)) for v in g.vertices)
    es = tuple(Edge(mapping.get(e.source, e.source), mapping.get(e.target, e.target), e.weight) for e in g.edges)
    return GkmGraph(g.rank, vs, es, g.truncation, g.variables, g.origin)


def restrict(g: GkmGraph, max_length: int) -> GkmGraph:
    """The length ideal ``{length <= max_length}``."""
    keep = {v.id for v in g.vertices if v.length <= max_length}
    vs = tuple(v for v in g.vertices if v.id in keep)
    es = tuple(e for e in g.edges if e.source in keep)
    trunc = max_length if (g.truncation is not None or len(keep) < len(g.vertices)) else None
    return GkmGraph(g.rank, vs, es, trunc, g.variables, g.origin)


# validation ---------------------------------------------------------------


@dataclass
class AssumptionCheck:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)


@dataclass
class GraphValidationReport:
    theory: str
    checks: list[AssumptionCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "theory": self.theory,
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed, "witnesses": c.witnesses} for c in self.checks],
        }


def validate(g: GkmGraph, theory: str = "H") -> GraphValidationReport:
    """Machine check of the four standing hypotheses for isolated fixed points.

    1. stratification: a base vertex exists and edges strictly lower length;
    2. cell splitting: downward edge count equals length, weights nonzero;
    3. attaching maps: simple graph, every lower interval reaches a base vertex;
    4. Euler classes of each downward star pairwise coprime (H or K rule).
    """
    theory = theory.upper()
    if theory not in ("H", "K"):
        raise ValueError("theory must be H or K")
    w1 = []
    if not any(v.length == 0 for v in g.vertices):
        w1.append("no vertex of length 0")
    for e in g.edges:
        if g.length(e.source) <= g.length(e.target):
            w1.append({"edge": [e.source, e.target], "reason": "not length-decreasing"})
    w2 = []
    for v in g.vertices:
        k = len(g.down_edges(v.id))
        if k != v.length:
            w2.append({"vertex": v.id, "length": v.length, "down_edges": k})
    for e in g.edges:
        if is_zero(e.weight):
            w2.append({"edge": [e.source, e.target], "reason": "zero weight"})
    w3 = []
    seen_pairs = set()
    for e in g.edges:
        key = frozenset((e.source, e.target))
        if e.source == e.target or key in seen_pairs:
            w3.append({"edge": [e.source, e.target], "reason": "loop or repeated edge"})
        seen_pairs.add(key)
    bases = {v.id for v in g.vertices if v.length == 0}
    for v in g.vertices:
        if v.length and not (g.below(v.id) & bases):
            w3.append({"vertex": v.id, "reason": "lower interval misses the base vertex"})
    w4 = []
    check = check_coprime_H if theory == "H" else check_coprime_K
    for v in g.vertices:
        star = g.down_edges(v.id)
        rep = check([e.weight for e in star])
        for (i, j), reason in rep.violations:
            w4.append({"vertex": v.id, "edges": [star[i].target, star[j].target], "reason": reason})
    return GraphValidationReport(
        theory,
        [
            AssumptionCheck("stratification", not w1, w1),
            AssumptionCheck("cell-splitting", not w2, w2),
            AssumptionCheck("attaching-maps", not w3, w3),
            AssumptionCheck("coprime-euler-classes", not w4, w4),
        ],
    )


def edge_direction_matches(g: GkmGraph) -> list[Edge]:
    """Edges whose weight is not parallel to the difference of endpoint positions."""
    bad = []
    for e in g.edges:
        a, b = g.vertex(e.source).position, g.vertex(e.target).position
        if not a or not b:
            continue
        diff = [x - y for x, y in zip(a, b)]
        den = lcm(*(x.denominator for x in diff))
        ints = tuple(int(x * den) for x in diff)
        if is_zero(ints) or primitive_part(ints)[0] != primitive_part(e.weight)[0]:
            bad.append(e)
    return bad


# export ---------------------------------------------------------------


def to_json_dict(g: GkmGraph) -> dict:
    return {
        "rank": g.rank,
        "variables": list(g.variables),
        "truncation": g.truncation,
        "vertices": [
            {"id": v.id, "length": v.length, "position": [_frac_str(x) for x in v.position]} for v in g.vertices
        ],
        "edges": [{"source": e.source, "target": e.target, "weight": list(e.weight)} for e in g.edges],
    }


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def weight_label(g: GkmGraph, w: Sequence[int]) -> str:
    return linear_from_weight(w).render(g.variables)


def drawing_coords(g: GkmGraph, rotate: bool = False) -> dict[str, tuple[Fraction, Fraction]]:
    """2-d drawing coordinates.

    Finite types use the first two position coordinates. Affine graphs
    with a 1-dimensional finite part are drawn as a ladder: horizontal
    coordinate = position projected on the finite root, vertical = length.
    ``rotate`` swaps the two axes.
    """
    out = {}
    origin = g.origin or {}
    ladder = origin.get("kind") == "affine" and g.rank == 2
    for v in g.vertices:
        p = v.position or (Fraction(0),) * 2
        if ladder:
            fin = origin["parabolic"][0] - 1 if origin.get("parabolic") else 1
            xy = (p[fin] - p[1 - fin], Fraction(v.length))
        else:
            xy = (Fraction(p[0]), Fraction(p[1]) if len(p) > 1 else Fraction(v.length))
        out[v.id] = (xy[1], xy[0]) if rotate else xy
    return out


def _decimal(x: Fraction, places: int = 3) -> str:
    """Exact rounding of a rational to a fixed-point decimal string."""
    x = Fraction(x)
    scale = 10**places
    n = x * scale
    q = (abs(n.numerator) * 2 + n.denominator) // (2 * n.denominator)
    sign = "-" if n < 0 and q else ""
    s = str(q).rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}"


def export(
    g: GkmGraph,
    fmt: str = "json",
    labels: Mapping[str, str] | None = None,
    rotate: bool = False,
) -> bytes:
    """Serialize ``g``; ``labels`` optionally decorates vertices (class overlay)."""
    if fmt == "json":
        return (json.dumps(to_json_dict(g), indent=2) + "\n").encode()
    if fmt == "table":
        lines = [f"# rank {g.rank}  variables {','.join(g.variables)}  truncation {g.truncation}"]
        lines.append("# vertices: id length position")
        for v in g.by_length():
            pos = ",".join(_frac_str(x) for x in v.position)
            extra = f"  [{labels[v.id]}]" if labels and v.id in labels else ""
            lines.append(f"{v.id} {v.length} ({pos}){extra}")
        lines.append("# edges: source -> target : weight")
        for e in g.edges:
            lines.append(f"{e.source} -> {e.target} : {weight_label(g, e.weight)}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "dot":
        coords = drawing_coords(g, rotate)
        lines = ["graph gkm {", "  node [shape=circle];"]
        for v in g.vertices:
            x, y = coords[v.id]
            lab = v.id if not labels or v.id not in labels else f"{v.id}\\n{labels[v.id]}"
            lines.append(f'  "{v.id}" [label="{lab}", pos="{_decimal(x)},{_decimal(y)}!"];')
        for e in g.edges:
            lines.append(f'  "{e.source}" -- "{e.target}" [label="{weight_label(g, e.weight)}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "svg":
        return _svg(g, labels, rotate).encode()
    raise ValueError(f"unknown export format {fmt!r}")


def _svg(g, labels, rotate):
    coords = drawing_coords(g, rotate)
    xs = [c[0] for c in coords.values()] or [Fraction(0)]
    ys = [c[1] for c in coords.values()] or [Fraction(0)]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    scale = Fraction(400) / span
    pad = Fraction(60)

    def pt(vid):
        x, y = coords[vid]
        return (pad + (x - min(xs)) * scale, pad + (max(ys) - y) * scale)

    w = pad * 2 + (max(xs) - min(xs)) * scale
    h = pad * 2 + (max(ys) - min(ys)) * scale
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_decimal(w)}" height="{_decimal(h)}">',
        '<g stroke="black" stroke-width="1">',
    ]
    for e in g.edges:
        (x1, y1), (x2, y2) = pt(e.source), pt(e.target)
        out.append(
            f'<line x1="{_decimal(x1)}" y1="{_decimal(y1)}" x2="{_decimal(x2)}" y2="{_decimal(y2)}">'
            f"<title>{weight_label(g, e.weight)}</title></line>"
        )
    out.append("</g>")
    for v in g.vertices:
        x, y = pt(v.id)
        out.append(f'<circle cx="{_decimal(x)}" cy="{_decimal(y)}" r="4" fill="black"/>')
        text = v.id if not labels or v.id not in labels else f"{v.id}: {labels[v.id]}"
        out.append(f'<text x="{_decimal(x + 6)}" y="{_decimal(y - 6)}" font-size="10">{_xml(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _xml(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
