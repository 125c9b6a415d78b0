"""Coloured-bracket evaluation.

A diagram with an admissible colouring is evaluated in two stages: every
crossing is resolved into a weighted sum of crossing-free nets by fusing the
two strands through all admissible channels (picking up a twist coefficient),
and each crossing-free net is then reduced to a scalar by collapsing
monogons and bigons and applying recoupling moves to a minimal face until
only circles remain.

Conventions, fixed once and validated by the move tests: crossings carry
their over-strand on cyclic positions 0 and 2; resolving a crossing places
the fusion bridge between the position-(0,1) corner and the position-(2,3)
corner with twist sense +1.  With these choices a kink traversed
``in 0 -> out 2, in 3 -> out 1`` is the positive curl.
"""

from .skein import EvaluationError

_MAX_REDUCTION_DEPTH = 400


class Net:
    """Mutable working net: nodes are slot lists of arc ids."""

    __slots__ = ("nodes", "arcs", "free", "coeff", "counter")

    def __init__(self, nodes, arcs, free, coeff, counter=0):
        self.nodes = nodes      # nid -> [arc id per ccw slot]; len 3 or 4
        self.arcs = arcs        # aid -> [end0, end1, color], end = (nid, slot)
        self.free = free        # list of isolated circle colours
        self.coeff = coeff
        self.counter = counter  # fresh-id source for bridges

    def copy(self):
        return Net({k: list(v) for k, v in self.nodes.items()},
                   {k: list(v) for k, v in self.arcs.items()},
                   list(self.free), self.coeff, self.counter)

    def crossings(self):
        return [nid for nid, slots in self.nodes.items() if len(slots) == 4]


def build_net(d, coloring):
    """Net for a diagram under a strand colouring (strand id -> colour)."""
    strand_rep = {}
    for sid, s in d.strands().items():
        for m in s["members"]:
            strand_rep[m] = sid
    nodes = {}
    for nid, node in d.nodes.items():
        nodes[nid] = [None] * len(node.ports)
    arcs = {}
    free = []

    def add_arc(aid, end0, end1, color):
        arcs[aid] = [end0, end1, color]
        for nid, slot in (end0, end1):
            nodes[nid][slot] = aid

    for eid, e in sorted(d.edges.items()):
        ends = tuple((n, d.slot(n, p)) for n, p in e.ends)
        add_arc(("e", eid), ends[0], ends[1], coloring[strand_rep[eid]])
    for cid, c in sorted(d.circles.items()):
        color = coloring[strand_rep[cid]]
        if not c.word:
            free.append(color)
            continue
        k = len(c.word)
        for t in range(k):
            xid, _pin, pout = c.word[t]
            nxt = c.word[(t + 1) % k]
            add_arc(("c", cid, t),
                    (xid, d.slot(xid, pout)),
                    (nxt[0], d.slot(nxt[0], nxt[1])),
                    color)
    return Net(nodes, arcs, free, 1.0 + 0j)


# -- crossing resolution -------------------------------------------------------

def _crossing_colors(net, xid):
    slots = net.nodes[xid]
    a = net.arcs[slots[0]][2]
    b = net.arcs[slots[1]][2]
    return a, b


def _channels(net, xid, p):
    a, b = _crossing_colors(net, xid)
    return [k for k in p.colors if p.admissible(a, b, k)]


def _rewire(net, old_end, new_end):
    aid = net.nodes[old_end[0]][old_end[1]]
    arc = net.arcs[aid]
    if tuple(arc[0]) == old_end:
        arc[0] = new_end
    else:
        arc[1] = new_end
    net.nodes[new_end[0]][new_end[1]] = aid
    return aid


def resolve_crossing(net, xid, k, p):
    """One fused net: bridge colour k replaces the crossing.

    The bridge joins a vertex at the (0,1) corner, with ccw rotation
    (bridge, arc0, arc1), to one at the (2,3) corner with rotation
    (arc2, arc3, bridge); the coefficient is Delta_k/theta(a,b,k) times the
    positive-sense twist lambda^{ab}_k.
    """
    a, b = _crossing_colors(net, xid)
    out = net.copy()
    va = ("v", out.counter)
    vb = ("v", out.counter + 1)
    bridge = ("n", out.counter + 2)
    out.counter += 3
    out.nodes[va] = [None, None, None]
    out.nodes[vb] = [None, None, None]
    _rewire(out, (xid, 0), (va, 1))
    _rewire(out, (xid, 1), (va, 2))
    _rewire(out, (xid, 2), (vb, 0))
    _rewire(out, (xid, 3), (vb, 1))
    del out.nodes[xid]
    out.arcs[bridge] = [(va, 0), (vb, 2), k]
    out.nodes[va][0] = bridge
    out.nodes[vb][2] = bridge
    out.coeff *= p.delta(k) / p.theta(a, b, k) * p.lam(a, b, k, 1)
    return out


def bracket(d, coloring, p):
    """Kauffman bracket of the coloured diagram; 0 for inadmissible colours.

    Crossings are resolved smallest-branching-first, depth first, with the
    channel sums in ascending colour order, so the accumulation order (and
    hence the floating-point result) is reproducible.
    """
    for nid, trip in d.vertex_strand_triples().items():
        i, j, k = (coloring[s] for s in trip)
        if not p.admissible(i, j, k):
            return 0j
    total = 0j
    stack = [build_net(d, coloring)]
    while stack:
        net = stack.pop()
        xs = net.crossings()
        if not xs:
            total += net.coeff * reduce_planar(net, p)
            continue
        xid = min(xs, key=lambda x: (len(_channels(net, x, p)), str(x)))
        for k in reversed(_channels(net, xid, p)):
            stack.append(resolve_crossing(net, xid, k, p))
    return total


# -- planar reduction -----------------------------------------------------------

def reduce_planar(net, p):
    """Scalar value of a crossing-free net (ignoring net.coeff)."""
    if net.crossings():
        raise EvaluationError("reduce_planar needs a crossing-free net")
    net = net.copy()  # reduction consumes its working structures
    return _value(net.nodes, net.arcs, net.free, p, 0)


def _value(nodes, arcs, free, p, depth):
    v = 1.0
    for c in free:
        v *= p.delta(c)
        if v == 0.0:
            return 0.0
    for comp_nodes, comp_arcs in _components(nodes, arcs):
        v *= _component_value(comp_nodes, comp_arcs, p, depth)
        if v == 0.0:
            return 0.0
    return v


def _components(nodes, arcs):
    seen = set()
    out = []
    for start in nodes:
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            nid = queue.pop()
            for aid in nodes[nid]:
                for end in arcs[aid][:2]:
                    if end[0] not in comp:
                        comp.add(end[0])
                        queue.append(end[0])
        seen |= comp
        cn = {nid: nodes[nid] for nid in sorted(comp, key=str)}
        ca = {aid: arcs[aid] for nid in cn for aid in nodes[nid]}
        out.append((cn, ca))
    return out


def _face_orbits(nodes, arcs):
    """Face walks as dart lists; darts are (arc id, direction)."""
    at_slot = {}
    for aid, arc in arcs.items():
        at_slot[tuple(arc[0])] = (aid, 0)
        at_slot[tuple(arc[1])] = (aid, 1)
    faces = []
    seen = set()
    for aid in sorted(arcs, key=str):
        for d in (0, 1):
            if (aid, d) in seen:
                continue
            walk = []
            cur = (aid, d)
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                head = tuple(arcs[cur[0]][1 - cur[1]])
                nid, slot = head
                cur = at_slot[(nid, (slot + 1) % len(nodes[nid]))]
            faces.append(walk)
    return faces


def _canonical_key(nodes, arcs):
    """Canonical encoding of a connected coloured net, minimised over roots.

    A rooted rotation system has no nontrivial automorphism fixing the root
    dart, so the breadth-first encoding below is a complete invariant.
    """
    best = None
    for root in sorted(nodes, key=str):
        for rslot in range(3):
            number = {root: 0}
            entry = {root: rslot}
            order = [root]
            enc = []
            qi = 0
            while qi < len(order):
                nid = order[qi]
                qi += 1
                base = entry[nid]
                for ds in range(3):
                    slot = (base + ds) % 3
                    aid = nodes[nid][slot]
                    arc = arcs[aid]
                    e0 = tuple(arc[0])
                    other = tuple(arc[1]) if e0 == (nid, slot) else e0
                    mid, mslot = other
                    if mid not in number:
                        number[mid] = len(order)
                        entry[mid] = mslot
                        order.append(mid)
                        enc.append((arc[2], number[mid], 0))
                    else:
                        enc.append((arc[2], number[mid],
                                    (mslot - entry[mid]) % 3))
            key = tuple(enc)
            if best is None or key < best:
                best = key
    return best


def _component_value(nodes, arcs, p, depth):
    if depth > _MAX_REDUCTION_DEPTH:
        raise EvaluationError("planar reduction did not terminate")
    key = _canonical_key(nodes, arcs)
    cached = p._reduce_cache.get(key)
    if cached is not None:
        return cached
    faces = _face_orbits(nodes, arcs)
    face = min(faces, key=len)
    if len(face) == 1:
        val = _collapse_monogon(nodes, arcs, face, p, depth)
    elif len(face) == 2:
        val = _collapse_bigon(nodes, arcs, face, p, depth)
    else:
        val = _recouple(nodes, arcs, face, p, depth)
    p._reduce_cache[key] = val
    return val


def _other_end(arc, end):
    return tuple(arc[1]) if tuple(arc[0]) == end else tuple(arc[0])


def _splice(nodes, arcs, w, keep_slots, p, depth, factor):
    """Remove vertex w, joining the two arc ends at keep_slots; then recurse."""
    a1 = nodes[w][keep_slots[0]]
    a2 = nodes[w][keep_slots[1]]
    color = arcs[a1][2]
    if a1 == a2:
        # the survivors are the two ends of one arc: it closes into a circle
        del arcs[a1]
        del nodes[w]
        return factor * p.delta(color) * _value(nodes, arcs, [], p, depth)
    far2 = _other_end(arcs[a2], (w, keep_slots[1]))
    del arcs[a2]
    arc = arcs[a1]
    if tuple(arc[0]) == (w, keep_slots[0]):
        arc[0] = far2
    else:
        arc[1] = far2
    nodes[far2[0]][far2[1]] = a1
    del nodes[w]
    return factor * _value(nodes, arcs, [], p, depth)


def _collapse_monogon(nodes, arcs, face, p, depth):
    """Loop coloured i with third edge t: zero unless t is 0-coloured,
    else Delta_i times the net with the loop and t removed."""
    loop_aid = face[0][0]
    loop = arcs[loop_aid]
    v = loop[0][0]
    i = loop[2]
    lslots = {loop[0][1], loop[1][1]}
    (tslot,) = set(range(3)) - lslots
    t_aid = nodes[v][tslot]
    t = arcs[t_aid]
    if t[2] != 0:
        return 0.0
    w, wslot = _other_end(t, (v, tslot))
    del arcs[loop_aid]
    del arcs[t_aid]
    del nodes[v]
    keep = tuple(s for s in range(3) if s != wslot)
    return _splice(nodes, arcs, w, keep, p, depth + 1, p.delta(i))


def _collapse_bigon(nodes, arcs, face, p, depth):
    """Two parallel arcs between u and v fuse onto the leg colour.

    The legs at u and v must carry equal colours (otherwise the net is a
    zero morphism); the factor is theta(x, y, c)/Delta_c.
    """
    (a1, _), (a2, _) = face
    arc1 = arcs[a1]
    u = arc1[0][0]
    v = arc1[1][0]
    x, y = arc1[2], arcs[a2][2]
    used_u = {end[1] for aid in (a1, a2) for end in arcs[aid][:2] if end[0] == u}
    used_v = {end[1] for aid in (a1, a2) for end in arcs[aid][:2] if end[0] == v}
    (su,) = set(range(3)) - used_u
    (sv,) = set(range(3)) - used_v
    lu = nodes[u][su]
    lv = nodes[v][sv]
    c = arcs[lu][2]
    if arcs[lv][2] != c:
        return 0.0
    factor = p.theta(x, y, c) / p.delta(c)
    del arcs[a1]
    del arcs[a2]
    if lu == lv:
        # third parallel arc: the component was a closed theta
        del arcs[lu]
        del nodes[u]
        del nodes[v]
        return factor * p.delta(c) * _value(nodes, arcs, [], p, depth + 1)
    far_u = _other_end(arcs[lu], (u, su))
    far_v = _other_end(arcs[lv], (v, sv))
    del arcs[lv]
    arc = arcs[lu]
    if tuple(arc[0]) == (u, su):
        arc[0] = far_v
    else:
        arc[1] = far_v
    nodes[far_v[0]][far_v[1]] = lu
    del nodes[u]
    del nodes[v]
    return factor * _value(nodes, arcs, [], p, depth + 1)


def _recouple(nodes, arcs, face, p, depth):
    """Apply the recoupling move to the first edge of a minimal face.

    The edge m between vertices a (ccw rotation m, P, Q) and b (rotation
    m, R, S) is replaced, for every admissible channel n, by an edge between
    new vertices (n, Q, R) and (n, S, P) weighted by {i j m; k l n} where
    i, j, k, l are the colours of Q, P, S, R.
    """
    m_aid = face[0][0]
    m = arcs[m_aid]
    (a, sa), (b, sb) = tuple(m[0]), tuple(m[1])
    mcol = m[2]
    p_aid = nodes[a][(sa + 1) % 3]
    q_aid = nodes[a][(sa + 2) % 3]
    r_aid = nodes[b][(sb + 1) % 3]
    s_aid = nodes[b][(sb + 2) % 3]
    i = arcs[q_aid][2]
    j = arcs[p_aid][2]
    k = arcs[s_aid][2]
    l = arcs[r_aid][2]
    total = 0.0
    for n in p.colors:
        if not (p.admissible(i, l, n) and p.admissible(j, k, n)):
            continue
        coeff = p.sixj(i, j, mcol, k, l, n)
        nn = {nid: list(slots) for nid, slots in nodes.items()}
        na = {aid: list(arc) for aid, arc in arcs.items()}
        c = ("r", depth, n, 0)
        dvert = ("r", depth, n, 1)
        n_aid = ("rn", depth, n)
        nn[c] = [n_aid, None, None]
        nn[dvert] = [n_aid, None, None]
        net2 = Net(nn, na, [], 1.0, 0)
        _rewire(net2, (a, (sa + 2) % 3), (c, 1))       # Q
        _rewire(net2, (b, (sb + 1) % 3), (c, 2))       # R
        _rewire(net2, (b, (sb + 2) % 3), (dvert, 1))   # S
        _rewire(net2, (a, (sa + 1) % 3), (dvert, 2))   # P
        del na[m_aid]
        del nn[a]
        del nn[b]
        na[n_aid] = [(c, 0), (dvert, 0), n]
        total += coeff * _value(nn, na, [], p, depth + 1)
    return total
