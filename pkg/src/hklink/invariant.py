"""Admissible-colouring enumeration and the handlebody-link invariant.

The invariant of a diagram D is the sum over admissible colourings of
Delta-weights (over graph edges only, not circles) times the normalised
squared bracket |<D>|^2 / prod_v theta(v).  Colourings are enumerated in a
fixed lexicographic order and summed with compensated accumulation so the
result is reproducible bit for bit, independently of the worker count.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import diagram as dg
from .evaluate import bracket
from .skein import QuantumParams

IMAG_TOL = 1e-9


@dataclass
class InvariantReport:
    name: str
    r: int
    value: float
    coloring_count: int
    elapsed_s: float
    genus: int
    components: int
    terms: list = field(default_factory=list)  # (coloring, term) when audited


def coloring_variables(d):
    """Strand-class ids in canonical order: edge classes then circles."""
    strands = d.strands()
    edges = sorted(sid for sid, s in strands.items() if s["kind"] == "edge")
    circles = sorted(sid for sid, s in strands.items() if s["kind"] == "circle")
    return edges, circles


def enumerate_colorings(d, p):
    """Yield admissible colourings as dicts strand id -> colour.

    Variables are assigned in canonical order with vertex admissibility
    checked as soon as a vertex's third strand receives its colour.
    """
    edges, circles = coloring_variables(d)
    variables = edges + circles
    index = {sid: i for i, sid in enumerate(variables)}
    triples = list(d.vertex_strand_triples().values())
    # check a vertex once its last-assigned variable is placed
    by_last = [[] for _ in variables]
    for trip in triples:
        last = max(index[s] for s in trip)
        by_last[last].append(trip)
    n_vars = len(variables)
    assign = {}

    def rec(i):
        if i == n_vars:
            yield dict(assign)
            return
        sid = variables[i]
        for c in p.colors:
            assign[sid] = c
            ok = True
            for trip in by_last[i]:
                if not p.admissible(*(assign[s] for s in trip)):
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
        del assign[sid]

    yield from rec(0)


def yokota_value(d, c, p, _bracket_cache=None):
    """|bracket|^2 divided by the product of vertex theta values."""
    if _bracket_cache is not None:
        key = tuple(sorted(c.items()))
        br = _bracket_cache.get(key)
        if br is None:
            br = bracket(d, c, p)
            _bracket_cache[key] = br
    else:
        br = bracket(d, c, p)
    denom = 1.0
    for trip in d.vertex_strand_triples().values():
        denom *= p.theta(*(c[s] for s in trip))
    return abs(br) ** 2 / denom


def _term(d, c, p, edge_vars):
    w = 1.0
    for sid in edge_vars:
        w *= p.delta(c[sid])
    return w * yokota_value(d, c, p)


def _worker_chunk(args):
    text, r, colorings = args
    d = dg.parse(text)
    p = QuantumParams(r)
    edge_vars, _ = coloring_variables(d)
    return [_term(d, dict(c), p, edge_vars) for c in colorings]


def hk_invariant(d, p, workers=1, audit=False, name=None):
    """The handlebody-link invariant of the diagram at level p.r.

    Terms are always combined in enumeration order with Kahan summation,
    so different worker counts give identical results.
    """
    t0 = time.perf_counter()
    edge_vars, _ = coloring_variables(d)
    colorings = list(enumerate_colorings(d, p))
    if workers > 1 and len(colorings) >= 4 * workers:
        text = dg.serialize(d)
        chunks = [colorings[i::workers] for i in range(workers)]
        payload = [(text, p.r, [tuple(sorted(c.items())) for c in chunk])
                   for chunk in chunks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker_chunk, payload))
        terms = [None] * len(colorings)
        for w, chunk_terms in enumerate(results):
            for j, t in enumerate(chunk_terms):
                terms[w + j * workers] = t
    else:
        terms = [_term(d, c, p, edge_vars) for c in colorings]
    total = 0.0
    comp = 0.0
    for t in terms:
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
    g, l = d.genus_and_components()
    report = InvariantReport(
        name=name or d.meta.get("name", "diagram"),
        r=p.r, value=total, coloring_count=len(colorings),
        elapsed_s=time.perf_counter() - t0, genus=g, components=l)
    if audit:
        report.terms = [(tuple(sorted(c.items())), t)
                        for c, t in zip(colorings, terms)]
    return report


# -- closed forms ----------------------------------------------------------------

def trivial_genus2_closed_form(p):
    """Value of the trivial genus-2 handlebody-knot: r^2 / (4 sin^4(pi/r))."""
    import math
    return p.r ** 2 / (4 * math.sin(math.pi / p.r) ** 4)


def four_one_closed_form(p):
    """Direct double-sum formula for the 4_1 handlebody-knot.

    Outer sum over (i,i,k), (j,j,k) admissible with (k,k,k) admissible;
    the inner sum factorises over the two clasps.
    """
    total = 0.0
    inner = {}
    for k in p.colors:
        if not p.admissible(k, k, k):
            continue
        for i in p.colors:
            if not p.admissible(i, i, k):
                continue
            s = 0j
            for l in p.colors:
                if not p.admissible(i, k, l):
                    continue
                s += (p.delta(l) * p.lam(i, k, l, -1) ** 2
                      * p.tet(i, k, l, k, i, k) / p.theta(i, k, l))
            inner[(i, k)] = s
    for (i, k), si in inner.items():
        for j in p.colors:
            sj = inner.get((j, k))
            if sj is None:
                continue
            w = (p.delta(i) * p.delta(j) * p.delta(k)
                 / (p.theta(i, i, k) * p.theta(j, j, k)))
            total += w * abs(si * sj / p.theta(k, k, k)) ** 2
    return total


# -- reducible splitting -----------------------------------------------------------

def split_reducible(d):
    """Split at a separating edge, if one exists.

    Looks for an uncrossed single-arc edge that is a bridge of the underlying
    graph such that no crossing joins the two sides; returns the two
    sub-diagrams with the bridge removed and its endpoints smoothed, or None.
    """
    strands = d.strands()
    edge_strands = {sid: s for sid, s in strands.items() if s["kind"] == "edge"}
    for sid, s in sorted(edge_strands.items()):
        if len(s["members"]) != 1:
            continue  # the strand runs through a crossing
        eid = s["members"][0]
        ends = d.edges[eid].ends
        if ends[0][0] == ends[1][0]:
            continue  # loop edge, never separating
        sides = _bridge_sides(d, sid)
        if sides is None:
            continue
        side_a, side_b = sides
        da = _extract_side(d, sid, side_a)
        db = _extract_side(d, sid, side_b)
        if da is not None and db is not None:
            return da, db
    # disjoint diagrams split without surgery
    parts = _diagram_components(d)
    if len(parts) > 1:
        first, rest = parts[0], parts[1:]
        da = _subdiagram(d, first)
        db = _subdiagram(d, set().union(*rest) if len(rest) > 1 else rest[0])
        return da, db
    return None


def _graph_adjacency(d):
    strands = d.strands()
    adj = {}
    for sid, s in strands.items():
        for end in s["endpoints"]:
            adj.setdefault(end[0], set()).add(sid)
    return strands, adj


def _bridge_sides(d, bridge_sid):
    """Vertex sets of the two sides of a candidate bridge, or None."""
    strands, adj = _graph_adjacency(d)
    bridge_ends = strands[bridge_sid]["endpoints"]
    if len(bridge_ends) != 2:
        return None
    va, vb = bridge_ends[0][0], bridge_ends[1][0]
    if va == vb:
        return None

    def reach(start, banned_sid):
        seen = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for sid in adj.get(v, ()):
                if sid == banned_sid:
                    continue
                for end in strands[sid]["endpoints"]:
                    if end[0] not in seen:
                        seen.add(end[0])
                        queue.append(end[0])
        return seen

    side_a = reach(va, bridge_sid)
    if vb in side_a:
        return None
    side_b = reach(vb, bridge_sid)
    return side_a, side_b


def _crossings_of_vertices(d, vertices):
    """Crossings whose strands all have their endpoints inside `vertices`;
    None if some crossing straddles the cut."""
    strands = d.strands()
    rep = {}
    for sid, s in strands.items():
        for m in s["members"]:
            rep[m] = sid
    out = set()
    for node in d.nodes.values():
        if node.kind != dg.CROSSING:
            continue
        sids = set()
        for slot in range(4):
            use = d._usage[(node.id, d.port_at(node.id, slot))]
            sids.add(rep[use[1]])
        ins = []
        for sid in sids:
            eps = strands[sid]["endpoints"]
            if not eps:
                ins.append(None)  # circle: lives with whichever side sees it
            else:
                ins.append(all(e[0] in vertices for e in eps))
        if all(i is not False for i in ins):
            out.add(node.id)
        elif all(i is not True for i in ins):
            pass
        else:
            return None
    return out


def _extract_side(d, bridge_sid, vertices):
    """Sub-diagram on one side of the bridge, with the cut vertex smoothed."""
    strands = d.strands()
    bridge_eid = strands[bridge_sid]["members"][0]
    crossings = _crossings_of_vertices(d, vertices)
    if crossings is None:
        return None
    keep_nodes = set(vertices) | crossings
    # edges whose strand endpoints live on this side
    keep_edges = set()
    for sid, s in strands.items():
        if sid == bridge_sid or s["kind"] != "edge":
            continue
        eps = s["endpoints"]
        if eps and all(e[0] in vertices for e in eps):
            keep_edges.update(s["members"])
        elif eps and any(e[0] in vertices for e in eps):
            return None
    keep_circles = set()
    for cid, c in d.circles.items():
        if all(x in keep_nodes for x, _i, _o in c.word):
            if not c.word:
                continue  # free circles assigned to neither side here
            keep_circles.add(cid)
    # the smoothed vertex: bridge endpoint inside this side
    ends = d.edges[bridge_eid].ends
    (v, vport) = ends[0] if ends[0][0] in vertices else ends[1]
    node = d.nodes[v]
    vslot = d.slot(v, vport)
    s1 = (vslot + 1) % 3
    s2 = (vslot + 2) % 3
    use1 = d._usage[(v, node.ports[s1])]
    use2 = d._usage[(v, node.ports[s2])]
    if use1[0] != "e" or use2[0] != "e":
        return None
    e1, e2 = d.edges[use1[1]], d.edges[use2[1]]
    nodes = [n for n in d.nodes.values() if n.id in keep_nodes and n.id != v]
    edges = [e for e in d.edges.values()
             if e.id in keep_edges and e.id not in (e1.id, e2.id)]
    circles = [c for c in d.circles.values() if c.id in keep_circles]
    far1 = e1.ends[0] if e1.ends[1] == (v, node.ports[s1]) else e1.ends[1]
    far2 = e2.ends[0] if e2.ends[1] == (v, node.ports[s2]) else e2.ends[1]
    if e1.id == e2.id:
        circles.append(dg.Circle("smoothed_" + v, ()))
    else:
        edges.append(dg.Edge(e1.id, (far1, far2)))
    meta = dict(d.meta)
    meta["name"] = meta.get("name", "d") + "_split"
    return dg.DiagramCode(nodes, edges, circles, meta)


def _diagram_components(d):
    """Connected components of the drawn diagram (nodes linked by arcs)."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    keys = [("n", nid) for nid in d.nodes]
    keys += [("c", cid) for cid in d.circles]
    for k in keys:
        parent[k] = k
    for e in d.edges.values():
        union(("n", e.ends[0][0]), ("n", e.ends[1][0]))
    for c in d.circles.values():
        for x, _i, _o in c.word:
            union(("c", c.id), ("n", x))
    comps = {}
    for k in keys:
        comps.setdefault(find(k), set()).add(k)
    return list(comps.values())


def _subdiagram(d, keys):
    node_ids = {k[1] for k in keys if k[0] == "n"}
    circle_ids = {k[1] for k in keys if k[0] == "c"}
    nodes = [n for n in d.nodes.values() if n.id in node_ids]
    edges = [e for e in d.edges.values() if e.ends[0][0] in node_ids]
    circles = [c for c in d.circles.values() if c.id in circle_ids]
    meta = dict(d.meta)
    meta["name"] = meta.get("name", "d") + "_part"
    return dg.DiagramCode(nodes, edges, circles, meta)
