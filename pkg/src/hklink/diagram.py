"""Combinatorial model of trivalent spatial-graph diagrams.

A diagram is a combinatorial map: nodes are trivalent vertices or crossings,
each with an explicit counterclockwise cyclic port order; edges are arcs
joining two (node, port) slots; circles are closed vertex-free components
recorded by their crossing-traversal word.  At a crossing the strand through
cyclic positions 0 and 2 is the over-strand, positions 1 and 3 the under.

The text format (one diagram per file)::

    hkdiag 1
    node u vertex3 0 1 2
    node x crossing 0 1 2 3
    edge e1 u.0 x.1
    circle c1 x.0-2 x.3-1
    meta name example
    # comment

Port lists give the counterclockwise order of the port labels; an equivalent
JSON encoding is accepted for ``.json`` files.
"""

import json
from collections import namedtuple

VERTEX = "vertex3"
CROSSING = "crossing"

Node = namedtuple("Node", "id kind ports")
Edge = namedtuple("Edge", "id ends")          # ends: ((node, port), (node, port))
Circle = namedtuple("Circle", "id word")      # word: tuple of (crossing, port_in, port_out)


class DiagramError(ValueError):
    pass


class ParseError(DiagramError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class ValidationError(DiagramError):
    pass


def _canonical_ports(kind, ports):
    """Rotate the ccw port tuple to its canonical representative.

    Any rotation of a vertex list and any even rotation of a crossing list
    describes the same diagram, so we pin the lexicographically smallest.
    """
    ports = tuple(ports)
    step = 1 if kind == VERTEX else 2
    best = ports
    for s in range(step, len(ports), step):
        cand = ports[s:] + ports[:s]
        if cand < best:
            best = cand
    return best


class DiagramCode:
    """Validated immutable diagram. Build via the constructor or `parse`."""

    def __init__(self, nodes, edges, circles, meta=None, orient=None):
        self.nodes = {}
        for n in nodes:
            n = Node(n.id, n.kind, _canonical_ports(n.kind, n.ports))
            if n.id in self.nodes:
                raise ValidationError("duplicate node id %r" % n.id)
            self.nodes[n.id] = n
        self.edges = {}
        for e in edges:
            if e.id in self.edges:
                raise ValidationError("duplicate edge id %r" % e.id)
            self.edges[e.id] = Edge(e.id, (tuple(e.ends[0]), tuple(e.ends[1])))
        self.circles = {}
        for c in circles:
            if c.id in self.circles:
                raise ValidationError("duplicate circle id %r" % c.id)
            self.circles[c.id] = Circle(c.id, tuple(tuple(s) for s in c.word))
        self.meta = dict(meta or {})
        self.orient = dict(orient or {})
        self._strands = None
        self._faces = None
        self._validate()

    # -- basic structure ---------------------------------------------------

    def slot(self, node_id, port):
        """Cyclic position of a port label at a node."""
        node = self.nodes[node_id]
        try:
            return node.ports.index(port)
        except ValueError:
            raise ValidationError("node %r has no port %r" % (node_id, port))

    def port_at(self, node_id, slot):
        ports = self.nodes[node_id].ports
        return ports[slot % len(ports)]

    def _validate(self):
        # every port used exactly once, by an edge end or a circle step
        usage = {}
        for node in self.nodes.values():
            deg = 3 if node.kind == VERTEX else 4
            if node.kind not in (VERTEX, CROSSING):
                raise ValidationError("node %r has unknown kind %r" % (node.id, node.kind))
            if len(node.ports) != deg or sorted(node.ports) != list(range(deg)):
                raise ValidationError(
                    "node %r needs ports 0..%d in some cyclic order" % (node.id, deg - 1))
            for p in node.ports:
                usage[(node.id, p)] = None
        for e in self.edges.values():
            for end in e.ends:
                if end not in usage:
                    raise ValidationError("edge %r references unknown port %r" % (e.id, end))
                if usage[end] is not None:
                    raise ValidationError("port %r used twice" % (end,))
                usage[end] = ("e", e.id)
        for c in self.circles.values():
            for t, (xid, pin, pout) in enumerate(c.word):
                node = self.nodes.get(xid)
                if node is None or node.kind != CROSSING:
                    raise ValidationError("circle %r traverses non-crossing %r" % (c.id, xid))
                pair = {self.slot(xid, pin), self.slot(xid, pout)}
                if pair not in ({0, 2}, {1, 3}):
                    raise ValidationError(
                        "circle %r step %d does not use an over or under pair of %r"
                        % (c.id, t, xid))
                for p in (pin, pout):
                    if usage[(xid, p)] is not None:
                        raise ValidationError("port %r used twice" % ((xid, p),))
                    usage[(xid, p)] = ("c", c.id, t)
        for key, v in usage.items():
            if v is None:
                raise ValidationError("port %r is unused" % (key,))
        # at each crossing, each over/under pair is either one circle step or
        # the gluing of two edge ends (a strand passing through)
        for node in self.nodes.values():
            if node.kind != CROSSING:
                continue
            for pair in ((0, 2), (1, 3)):
                a = usage[(node.id, self.port_at(node.id, pair[0]))]
                b = usage[(node.id, self.port_at(node.id, pair[1]))]
                if (a[0] == "c") != (b[0] == "c"):
                    raise ValidationError(
                        "crossing %r mixes a circle strand with an edge strand" % node.id)
                if a[0] == "c" and a != b:
                    raise ValidationError(
                        "crossing %r pair split between two circle steps" % node.id)
        self._usage = usage
        self._check_spherical()

    # -- segments, darts and faces -----------------------------------------

    def segments(self):
        """Arcs of the diagram: edge records plus circle-word segments.

        Returns a list of (key, end_a, end_b) with ends as (node, port);
        key is ("e", edge_id) or ("c", circle_id, step_index) where segment
        t runs from step t's out-port to step t+1's in-port.
        """
        segs = []
        for e in sorted(self.edges.values()):
            segs.append((("e", e.id), e.ends[0], e.ends[1]))
        for c in sorted(self.circles.values()):
            k = len(c.word)
            for t in range(k):
                xid, _pin, pout = c.word[t]
                nxt = c.word[(t + 1) % k]
                segs.append((("c", c.id, t), (xid, pout), (nxt[0], nxt[1])))
        return segs

    def _dart_tables(self):
        """Darts are (segment_index, direction); tables give tail slots and
        the ccw-next dart at each (node, slot)."""
        segs = self.segments()
        at_slot = {}
        tails = []
        for si, (_key, a, b) in enumerate(segs):
            for d, end in ((0, a), (1, b)):
                key = (end[0], self.slot(end[0], end[1]))
                if key in at_slot:
                    raise ValidationError("two segments share slot %r" % (key,))
                at_slot[key] = (si, d)
            tails.append((a, b))
        return segs, at_slot, tails

    def faces(self):
        """Face walks of the rotation system, as lists of darts.

        Each dart is ((segment key), direction); free circles are not
        included (each contributes two faces of its own).
        """
        if self._faces is not None:
            return self._faces
        segs, at_slot, tails = self._dart_tables()
        deg = {nid: len(n.ports) for nid, n in self.nodes.items()}

        def face_next(dart):
            si, d = dart
            head = tails[si][1 - d]
            nid = head[0]
            s = self.slot(nid, head[1])
            return at_slot[(nid, (s + 1) % deg[nid])]

        seen = set()
        faces = []
        for si in range(len(segs)):
            for d in (0, 1):
                if (si, d) in seen:
                    continue
                walk = []
                cur = (si, d)
                while cur not in seen:
                    seen.add(cur)
                    walk.append((segs[cur[0]][0], cur[1]))
                    cur = face_next(cur)
                faces.append(walk)
        self._faces = faces
        return faces

    def _check_spherical(self):
        """Each connected component must satisfy V - E + F = 2."""
        segs, at_slot, tails = self._dart_tables()
        deg = {nid: len(n.ports) for nid, n in self.nodes.items()}
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

        for nid in self.nodes:
            parent[("n", nid)] = ("n", nid)
        for si, (a, b) in enumerate(tails):
            parent[("s", si)] = ("s", si)
            union(("s", si), ("n", a[0]))
            union(("s", si), ("n", b[0]))
        comps = {}
        for nid in self.nodes:
            comps.setdefault(find(("n", nid)), [0, 0, 0])[0] += 1
        for si in range(len(tails)):
            comps[find(("s", si))][1] += 1
        # face orbits of next = rotate(reverse), attributed to components
        seen = set()
        for si in range(len(tails)):
            for d in (0, 1):
                if (si, d) in seen:
                    continue
                cur = (si, d)
                while cur not in seen:
                    seen.add(cur)
                    head = tails[cur[0]][1 - cur[1]]
                    s = self.slot(head[0], head[1])
                    cur = at_slot[(head[0], (s + 1) % deg[head[0]])]
                comps[find(("s", si))][2] += 1
        for root, (v, e, f) in comps.items():
            if v - e + f != 2:
                raise ValidationError(
                    "component at %r is not spherical: V-E+F = %d-%d+%d != 2"
                    % (root, v, e, f))

    # -- strands (graph edges through crossings) ----------------------------

    def strands(self):
        """Partition of edges and circles into strands of the underlying graph.

        Returns dict strand_id -> {"kind": "edge"|"circle", "members": [...],
        "endpoints": [(node, port), ...]} where edge strands are maximal
        chains of edge records glued through crossings (over glues slots 0-2,
        under glues 1-3) and endpoints are the ends at trivalent vertices.
        A closed edge chain with no vertex endpoint is reported as kind
        "circle" (it is a vertex-free component).
        """
        if self._strands is not None:
            return self._strands
        parent = {eid: eid for eid in self.edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                # keep the smaller id as representative
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra

        for node in self.nodes.values():
            if node.kind != CROSSING:
                continue
            for pair in ((0, 2), (1, 3)):
                a = self._usage[(node.id, self.port_at(node.id, pair[0]))]
                b = self._usage[(node.id, self.port_at(node.id, pair[1]))]
                if a[0] == "e":
                    union(a[1], b[1])
        strands = {}
        for eid, e in self.edges.items():
            rep = find(eid)
            s = strands.setdefault(rep, {"kind": "edge", "members": [], "endpoints": []})
            s["members"].append(eid)
            for end in e.ends:
                if self.nodes[end[0]].kind == VERTEX:
                    s["endpoints"].append(end)
        for s in strands.values():
            s["members"].sort()
            s["endpoints"].sort()
            if not s["endpoints"]:
                s["kind"] = "circle"
        for cid, c in self.circles.items():
            strands[cid] = {"kind": "circle", "members": [cid], "endpoints": []}
        self._strands = strands
        return strands

    def strand_of(self, edge_or_circle_id):
        for sid, s in self.strands().items():
            if edge_or_circle_id in s["members"]:
                return sid
        raise KeyError(edge_or_circle_id)

    def vertex_strand_triples(self):
        """For each trivalent vertex, the strand ids at its three slots."""
        out = {}
        edge_rep = {}
        for sid, s in self.strands().items():
            for m in s["members"]:
                edge_rep[m] = sid
        for node in self.nodes.values():
            if node.kind != VERTEX:
                continue
            trip = []
            for s in range(3):
                use = self._usage[(node.id, self.port_at(node.id, s))]
                trip.append(edge_rep[use[1]])
            out[node.id] = tuple(trip)
        return out

    def genus_and_components(self):
        """(total genus, component count) of the underlying spatial graph.

        Components are taken with crossings transparent; a connected graph
        piece with v vertices and e strands has genus e - v + 1, and each
        vertex-free closed strand is a circle of genus 1.
        """
        strands = self.strands()
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for nid, n in self.nodes.items():
            if n.kind == VERTEX:
                parent[("n", nid)] = ("n", nid)
        for sid in strands:
            parent[("s", sid)] = ("s", sid)
        for sid, s in strands.items():
            for end in s["endpoints"]:
                ra, rb = find(("s", sid)), find(("n", end[0]))
                if ra != rb:
                    parent[ra] = rb
        comps = {}
        for key in parent:
            comps.setdefault(find(key), []).append(key)
        g = 0
        l = 0
        for members in comps.values():
            v = sum(1 for k in members if k[0] == "n")
            e = sum(1 for k in members if k[0] == "s")
            l += 1
            if v == 0:
                g += 1  # vertex-free closed strand: a circle
            else:
                g += e - v + 1
        return g, l

    # -- operations ----------------------------------------------------------

    def mirror(self):
        """Over/under swapped at every crossing (ports rotated by one)."""
        nodes = []
        for n in self.nodes.values():
            if n.kind == CROSSING:
                nodes.append(Node(n.id, n.kind, n.ports[1:] + n.ports[:1]))
            else:
                nodes.append(n)
        return DiagramCode(nodes, self.edges.values(), self.circles.values(),
                           self.meta, self.orient)

    def crossing_change(self, crossing_id):
        """Swap over/under at one crossing only."""
        if self.nodes[crossing_id].kind != CROSSING:
            raise ValidationError("%r is not a crossing" % crossing_id)
        nodes = []
        for n in self.nodes.values():
            if n.id == crossing_id:
                nodes.append(Node(n.id, n.kind, n.ports[1:] + n.ports[:1]))
            else:
                nodes.append(n)
        return DiagramCode(nodes, self.edges.values(), self.circles.values(),
                           self.meta, self.orient)

    def crossing_ids(self):
        return sorted(n.id for n in self.nodes.values() if n.kind == CROSSING)

    def __eq__(self, other):
        if not isinstance(other, DiagramCode):
            return NotImplemented
        return (self.nodes == other.nodes and self.edges == other.edges
                and self.circles == other.circles)

    def __hash__(self):
        return hash(self.content_key())

    def content_key(self):
        return (tuple(sorted(self.nodes.items())),
                tuple(sorted(self.edges.items())),
                tuple(sorted(self.circles.items())))


# -- text format -------------------------------------------------------------

def parse(text):
    """Parse the hkdiag text format into a validated DiagramCode."""
    nodes, edges, circles = [], [], []
    meta, orient = {}, {}
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input")
    header_seen = False
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if not header_seen:
            if tok != ["hkdiag", "1"]:
                raise ParseError("expected header 'hkdiag 1'", ln)
            header_seen = True
            continue
        kind = tok[0]
        try:
            if kind == "node":
                nid, nkind = tok[1], tok[2]
                ports = tuple(int(t) for t in tok[3:])
                nodes.append(Node(nid, nkind, ports))
            elif kind == "edge":
                if len(tok) != 4:
                    raise ParseError("edge needs two endpoints", ln)
                ends = []
                for t in tok[2:4]:
                    nid, port = t.rsplit(".", 1)
                    ends.append((nid, int(port)))
                edges.append(Edge(tok[1], (ends[0], ends[1])))
            elif kind == "circle":
                word = []
                for t in tok[2:]:
                    head, pout = t.rsplit("-", 1)
                    xid, pin = head.rsplit(".", 1)
                    word.append((xid, int(pin), int(pout)))
                circles.append(Circle(tok[1], tuple(word)))
            elif kind == "meta":
                meta[tok[1]] = " ".join(tok[2:])
            elif kind == "orient":
                if tok[2] not in ("+", "-"):
                    raise ParseError("orientation must be + or -", ln)
                orient[tok[1]] = 1 if tok[2] == "+" else -1
            else:
                raise ParseError("unknown record %r" % kind, ln)
        except ParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise ParseError("malformed %s record (%s)" % (kind, exc), ln)
    if not header_seen:
        raise ParseError("missing 'hkdiag 1' header")
    return DiagramCode(nodes, edges, circles, meta, orient)


def parse_json(text):
    """Parse the JSON mirror of the diagram schema."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc)
    if obj.get("format") != "hkdiag" or obj.get("version") != 1:
        raise ParseError("expected {'format': 'hkdiag', 'version': 1}")
    nodes = [Node(n["id"], n["kind"], tuple(n["ports"])) for n in obj.get("nodes", [])]
    edges = [Edge(e["id"], tuple((str(a), int(b)) for a, b in e["ends"]))
             for e in obj.get("edges", [])]
    circles = [Circle(c["id"], tuple((str(x), int(i), int(o)) for x, i, o in c.get("word", [])))
               for c in obj.get("circles", [])]
    orient = {k: int(v) for k, v in obj.get("orient", {}).items()}
    return DiagramCode(nodes, edges, circles, obj.get("meta", {}), orient)


def load_path(path):
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return parse_json(text)
    return parse(text)


def serialize(d):
    """Canonical text form; parse(serialize(d)) == d."""
    out = ["hkdiag 1"]
    for nid in sorted(d.nodes):
        n = d.nodes[nid]
        out.append("node %s %s %s" % (n.id, n.kind, " ".join(map(str, n.ports))))
    for eid in sorted(d.edges):
        e = d.edges[eid]
        out.append("edge %s %s.%d %s.%d" % (e.id, e.ends[0][0], e.ends[0][1],
                                            e.ends[1][0], e.ends[1][1]))
    for cid in sorted(d.circles):
        c = d.circles[cid]
        word = " ".join("%s.%d-%d" % s for s in c.word)
        out.append(("circle %s %s" % (c.id, word)).rstrip())
    for k in sorted(d.meta):
        out.append("meta %s %s" % (k, d.meta[k]))
    for k in sorted(d.orient):
        out.append("orient %s %s" % (k, "+" if d.orient[k] > 0 else "-"))
    return "\n".join(out) + "\n"


def serialize_json(d):
    obj = {
        "format": "hkdiag",
        "version": 1,
        "nodes": [{"id": n.id, "kind": n.kind, "ports": list(n.ports)}
                  for _, n in sorted(d.nodes.items())],
        "edges": [{"id": e.id, "ends": [list(e.ends[0]), list(e.ends[1])]}
                  for _, e in sorted(d.edges.items())],
        "circles": [{"id": c.id, "word": [list(s) for s in c.word]}
                    for _, c in sorted(d.circles.items())],
        "meta": d.meta,
        "orient": d.orient,
    }
    return json.dumps(obj, indent=1, sort_keys=True)
