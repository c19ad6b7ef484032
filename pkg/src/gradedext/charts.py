"""Filtration charts: parsing, module realization, dualization, comparison.

A chart records an associated-graded picture of a graded module over the
p = 2, n = 1 ring: one dot per Z/2 subquotient, positioned by internal
degree and filtration, with edges for multiplication by 2 (vertical) and
by v (the degree-2 polynomial generator).  ``orientation`` says whether v
raises degree ("homological") or lowers it ("cohomological").  An edge is
*exotic* when it jumps more than one filtration step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .graded import GradedRing, Poly, bp_ring
from .presentations import GradedModulePresentation, presentation

HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"


@dataclass(frozen=True)
class Dot:
    id: str
    degree: int
    filtration: int


@dataclass(frozen=True)
class Edge:
    kind: str            # "two" | "v1"
    src: str
    dst: str
    exotic: bool = False


@dataclass(frozen=True)
class Chart:
    orientation: str
    dots: tuple          # of Dot
    edges: tuple         # of Edge

    def dot_by_id(self) -> Dict[str, Dot]:
        return {d.id: d for d in self.dots}

    def coords(self) -> List[Tuple[int, int]]:
        return sorted((d.degree, d.filtration) for d in self.dots)

    def degreewise_orders(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for d in self.dots:
            out[d.degree] = out.get(d.degree, 1) * 2
        return out

    def validate(self) -> None:
        if self.orientation not in (HOMOLOGICAL, COHOMOLOGICAL):
            raise ValueError("bad orientation %r" % self.orientation)
        ids = [d.id for d in self.dots]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate dot ids")
        coords = self.coords()
        if len(set(coords)) != len(coords):
            raise ValueError("two dots share a (degree, filtration) position")
        by_id = self.dot_by_id()
        v_step = 2 if self.orientation == HOMOLOGICAL else -2
        out_count: Dict[Tuple[str, str], int] = {}
        for e in self.edges:
            if e.kind not in ("two", "v1"):
                raise ValueError("bad edge kind %r" % e.kind)
            if e.src not in by_id or e.dst not in by_id:
                raise ValueError("edge references unknown dot")
            a, b = by_id[e.src], by_id[e.dst]
            want = 0 if e.kind == "two" else v_step
            if b.degree - a.degree != want:
                raise ValueError("edge %s->%s has wrong degree step"
                                 % (e.src, e.dst))
            if b.filtration <= a.filtration:
                raise ValueError("edge %s->%s does not raise filtration"
                                 % (e.src, e.dst))
            if (b.filtration - a.filtration != 1) != e.exotic:
                raise ValueError("edge %s->%s exotic flag inconsistent"
                                 % (e.src, e.dst))
            key = (e.src, e.kind)
            out_count[key] = out_count.get(key, 0) + 1
            if out_count[key] > 1:
                raise ValueError("dot %s has two outgoing %s-edges"
                                 % (e.src, e.kind))


def chart_from_dict(doc: dict) -> Chart:
    chart = Chart(
        orientation=doc["orientation"],
        dots=tuple(Dot(d["id"], d["degree"], d["filtration"])
                   for d in doc["dots"]),
        edges=tuple(Edge(e["kind"], e["from"], e["to"],
                         bool(e.get("exotic", False)))
                    for e in doc["edges"]),
    )
    chart.validate()
    return chart


def chart_to_dict(chart: Chart) -> dict:
    return {
        "schema_version": 1,
        "orientation": chart.orientation,
        "dots": [{"id": d.id, "degree": d.degree, "filtration": d.filtration}
                 for d in chart.dots],
        "edges": [{"kind": e.kind, "from": e.src, "to": e.dst,
                   "exotic": e.exotic} for e in chart.edges],
    }


def load_chart(path: str) -> Chart:
    with open(path) as fh:
        return chart_from_dict(json.load(fh))


def save_chart(chart: Chart, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(chart_to_dict(chart), fh, indent=2, sort_keys=True)
        fh.write("\n")


def bundled_chart(name: str) -> Chart:
    """Load one of the packaged example charts ("figure1", "figure2")."""
    text = resources.files("gradedext.data").joinpath(name + ".json").read_text()
    return chart_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# module realization


def chart_to_module(chart: Chart, ring: Optional[GradedRing] = None,
                    var_index: int = 0) -> GradedModulePresentation:
    """The graded module a chart presents.

    One generator per dot; for each dot, 2*g equals the target of its
    outgoing two-edge (or 0), and x*g equals the target of its outgoing
    v1-edge (or 0).  Cohomological charts produce modules graded by the
    negated degree so that x still raises internal degree.
    """
    chart.validate()
    ring = ring if ring is not None else bp_ring(2, 1)
    if ring.p != 2:
        raise ValueError("charts are 2-primary")
    if ring.degrees[var_index] != 2:
        raise ValueError("v1-edges need a degree-2 variable")
    sign = 1 if chart.orientation == HOMOLOGICAL else -1
    dots = sorted(chart.dots, key=lambda d: (d.degree, d.filtration))
    index = {d.id: i for i, d in enumerate(dots)}
    gen_degrees = [sign * d.degree for d in dots]
    out_edge: Dict[Tuple[str, str], str] = {}
    for e in chart.edges:
        out_edge[(e.src, e.kind)] = e.dst
    x_mono = tuple(1 if i == var_index else 0 for i in range(ring.n))
    cols = []
    for d in dots:
        col = [Poly.zero() for _ in dots]
        col[index[d.id]] = Poly.constant(2, ring.n)
        dst = out_edge.get((d.id, "two"))
        if dst is not None:
            col[index[dst]] = col[index[dst]] - Poly.constant(1, ring.n)
        cols.append(col)
        col = [Poly.zero() for _ in dots]
        col[index[d.id]] = Poly.monomial(x_mono)
        dst = out_edge.get((d.id, "v1"))
        if dst is not None:
            col[index[dst]] = col[index[dst]] - Poly.constant(1, ring.n)
        cols.append(col)
    labels = tuple("d%d_%d" % (d.degree, d.filtration) for d in dots)
    return presentation(ring, gen_degrees, cols, labels=labels)


# ---------------------------------------------------------------------------
# dualization


def dualize_chart(chart: Chart, shift: int) -> Chart:
    """Pontryagin-dual chart: degrees shifted, edges reversed.

    Dot (d, f) contributes a dual dot at degree d + shift; every edge is
    reversed.  Filtrations are recomputed as longest paths from the sources
    of the reversed edge graph, and exotic flags are recomputed from the
    new filtration jumps.
    """
    chart.validate()
    new_orientation = (COHOMOLOGICAL if chart.orientation == HOMOLOGICAL
                       else HOMOLOGICAL)
    rev: Dict[str, List[Tuple[str, str]]] = {d.id: [] for d in chart.dots}
    out_deg: Dict[str, int] = {d.id: 0 for d in chart.dots}
    for e in chart.edges:
        rev[e.dst].append((e.src, e.kind))       # reversed: dst -> src
        out_deg[e.src] += 1
    # longest path over the reversed DAG (edges now go e.dst -> e.src)
    indeg = {d.id: 0 for d in chart.dots}
    for e in chart.edges:
        indeg[e.src] += 1                        # reversed edge lands on e.src
    filt: Dict[str, int] = {}
    queue = sorted(i for i, k in indeg.items() if k == 0)
    order: List[str] = []
    pending = dict(indeg)
    while queue:
        cur = queue.pop(0)
        order.append(cur)
        for (dst, _kind) in sorted(rev[cur]):
            pending[dst] -= 1
            if pending[dst] == 0:
                queue.append(dst)
        queue.sort()
    if len(order) != len(chart.dots):
        raise ValueError("chart edges contain a cycle")
    incoming: Dict[str, List[str]] = {d.id: [] for d in chart.dots}
    for e in chart.edges:
        incoming[e.src].append(e.dst)            # reversed edge e.dst -> e.src
    for i in order:
        filt[i] = max((filt[j] + 1 for j in incoming[i]), default=0)
    by_id = chart.dot_by_id()
    dots = tuple(sorted(
        (Dot(id=d.id, degree=d.degree + shift, filtration=filt[d.id])
         for d in chart.dots),
        key=lambda d: (d.degree, d.filtration)))
    edges = tuple(sorted(
        (Edge(kind=e.kind, src=e.dst, dst=e.src,
              exotic=(filt[e.src] - filt[e.dst] != 1))
         for e in chart.edges),
        key=lambda e: (e.kind, e.src, e.dst)))
    dual = Chart(orientation=new_orientation, dots=dots, edges=edges)
    dual.validate()
    return dual


# ---------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class ChartComparison:
    equal: bool
    orientation_match: bool
    dot_diff: tuple          # coords only in A, coords only in B
    edge_diff: tuple         # edge keys only in A, only in B
    exotic_diff: tuple       # exotic edge keys only in A, only in B
    order_diff: tuple        # degrees where 2-power orders differ

    def __bool__(self):
        return self.equal

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "orientation_match": self.orientation_match,
            "dots_only_in_a": [list(c) for c in self.dot_diff[0]],
            "dots_only_in_b": [list(c) for c in self.dot_diff[1]],
            "edges_only_in_a": [list(e) for e in self.edge_diff[0]],
            "edges_only_in_b": [list(e) for e in self.edge_diff[1]],
            "exotic_only_in_a": [list(e) for e in self.exotic_diff[0]],
            "exotic_only_in_b": [list(e) for e in self.exotic_diff[1]],
            "order_mismatch_degrees": list(self.order_diff),
        }


def _edge_keys(chart: Chart, exotic_only: bool = False) -> set:
    by_id = chart.dot_by_id()
    out = set()
    for e in chart.edges:
        if exotic_only and not e.exotic:
            continue
        a, b = by_id[e.src], by_id[e.dst]
        out.add((e.kind, (a.degree, a.filtration), (b.degree, b.filtration),
                 e.exotic))
    return out


def compare_charts(a: Chart, b: Chart) -> ChartComparison:
    """Position-level isomorphism test: dots and edges by (degree, filtration)."""
    a.validate()
    b.validate()
    ca, cb = set(a.coords()), set(b.coords())
    ea, eb = _edge_keys(a), _edge_keys(b)
    xa = {k for k in ea if k[3]}
    xb = {k for k in eb if k[3]}
    oa, ob = a.degreewise_orders(), b.degreewise_orders()
    order_diff = tuple(sorted(d for d in set(oa) | set(ob)
                              if oa.get(d, 1) != ob.get(d, 1)))
    orientation_match = a.orientation == b.orientation
    equal = (orientation_match and ca == cb and ea == eb)
    return ChartComparison(
        equal=equal,
        orientation_match=orientation_match,
        dot_diff=(tuple(sorted(ca - cb)), tuple(sorted(cb - ca))),
        edge_diff=(tuple(sorted(ea - eb)), tuple(sorted(eb - ea))),
        exotic_diff=(tuple(sorted(xa - xb)), tuple(sorted(xb - xa))),
        order_diff=order_diff,
    )


# ---------------------------------------------------------------------------
# rendering


def render_chart_ascii(chart: Chart) -> str:
    """Deterministic text rendering: filtration up the page, degree across."""
    chart.validate()
    if not chart.dots:
        return "(empty chart)\n"
    degs = sorted({d.degree for d in chart.dots})
    f_max = max(d.filtration for d in chart.dots)
    col = {g: i for i, g in enumerate(degs)}
    width = 4
    pos = {(d.degree, d.filtration) for d in chart.dots}
    lines = []
    for f in range(f_max, -1, -1):
        row = ["%2d |" % f]
        for g in degs:
            row.append((" o  " if (g, f) in pos else "    ").ljust(width))
        lines.append("".join(row).rstrip())
    lines.append("   +" + "-" * (width * len(degs)))
    lines.append("    " + "".join(("%d" % g).ljust(width) for g in degs))
    legend = ["", "edges:"]
    by_id = chart.dot_by_id()
    for e in sorted(chart.edges, key=lambda e: (e.kind, e.src, e.dst)):
        a, b = by_id[e.src], by_id[e.dst]
        legend.append("  %s%s (%d,%d) -> (%d,%d)"
                      % (e.kind, "*" if e.exotic else " ",
                         a.degree, a.filtration, b.degree, b.filtration))
    legend.append("(* = exotic)")
    return "\n".join(lines + legend) + "\n"


def render_chart_svg(chart: Chart) -> str:
    chart.validate()
    degs = sorted({d.degree for d in chart.dots}) or [0]
    f_max = max((d.filtration for d in chart.dots), default=0)
    sx, sy, pad = 28, 24, 30
    def X(g): return pad + (g - degs[0]) * sx // 2
    def Y(f): return pad + (f_max - f) * sy
    w = X(degs[-1]) + pad
    h = Y(0) + pad
    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
             % (w, h)]
    by_id = chart.dot_by_id()
    for e in sorted(chart.edges, key=lambda e: (e.kind, e.src, e.dst)):
        a, b = by_id[e.src], by_id[e.dst]
        color = "red" if e.exotic else ("black" if e.kind == "two" else "blue")
        parts.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s"/>'
                     % (X(a.degree), Y(a.filtration),
                        X(b.degree), Y(b.filtration), color))
    for d in sorted(chart.dots, key=lambda d: (d.degree, d.filtration)):
        parts.append('<circle cx="%d" cy="%d" r="3" fill="black"/>'
                     % (X(d.degree), Y(d.filtration)))
    for g in degs:
        parts.append('<text x="%d" y="%d" font-size="9" text-anchor="middle">'
                     '%d</text>' % (X(g), h - 8, g))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
