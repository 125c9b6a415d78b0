"""Brute-force Temperley-Lieb oracle.

Evaluates a coloured diagram by literal cabling: every colour-c strand class
becomes c parallel strands with one idempotent box inserted somewhere on the
class, trivalent vertices become nested turnback arcs, and every cabled
crossing becomes a grid of elementary crossings expanded with the two-term
smoothing relation (the A-smoothing joins the over-strand's inlet corner to
the under-strand's inlet corner).  States are partial planar matchings,
merged after every expansion site; a state closing L loops carries a factor
(-A^2 - A^{-2})^L.

This path shares nothing with the recoupling evaluator beyond the scalar
table used for the idempotent coefficients, so agreement between the two is
a meaningful cross-check of both.
"""

from .skein import EvaluationError

MAX_COLOR = 5
MAX_CABLED_STRANDS = 24


# -- Temperley-Lieb matching algebra ------------------------------------------

def _pairing_key(pairs):
    return tuple(sorted(tuple(sorted(q)) for q in pairs))


def tl_identity(n):
    return {_pairing_key([(i, n + i) for i in range(n)]): 1.0}


def tl_e(idx, n):
    """Generator e_idx: cup-cap on strands idx, idx+1 (0-based)."""
    pairs = [(idx, idx + 1), (n + idx, n + idx + 1)]
    pairs += [(i, n + i) for i in range(n) if i not in (idx, idx + 1)]
    return {_pairing_key(pairs): 1.0}


def _compose_pairings(pa, pb, n):
    """Glue pa's right side to pb's left side; return (matching, loop count).

    Points 0..n-1 are left, n..2n-1 right; pa's right point n+i is identified
    with pb's left point i.
    """
    adj = {}
    for u, v in pa:
        adj[("a", u)] = ("a", v)
        adj[("a", v)] = ("a", u)
    for u, v in pb:
        adj[("b", u)] = ("b", v)
        adj[("b", v)] = ("b", u)

    def glue(pt):
        side, i = pt
        if side == "a" and i >= n:
            return ("b", i - n)
        if side == "b" and i < n:
            return ("a", i + n)
        return None

    out = []
    seen = set()
    for start in [("a", i) for i in range(n)] + [("b", n + i) for i in range(n)]:
        if start in seen:
            continue
        seen.add(start)
        cur = adj[start]
        while glue(cur) is not None:
            seen.add(cur)
            cur = glue(cur)
            seen.add(cur)
            cur = adj[cur]
        seen.add(cur)
        a = start[1]
        b = cur[1]
        out.append((min(a, b), max(a, b)))
    loops = 0
    for k in adj:
        if k in seen or glue(k) is None:
            continue
        # untouched interior chain: a closed loop
        cur = k
        while cur not in seen:
            seen.add(cur)
            nxt = glue(cur)
            seen.add(nxt)
            cur = adj[nxt]
        loops += 1
    return _pairing_key(out), loops


def tl_compose(x, y, n, delta):
    out = {}
    for pa, ca in x.items():
        for pb, cb in y.items():
            key, loops = _compose_pairings(pa, pb, n)
            out[key] = out.get(key, 0.0) + ca * cb * delta ** loops
    return {k: v for k, v in out.items() if abs(v) > 1e-14}


def tl_close(x, n, delta):
    """Markov trace: left point i joins right point n+i."""
    total = 0.0
    for pairs, c in x.items():
        adj = dict()
        for u, v in pairs:
            adj[u] = v
            adj[v] = u
        seen = set()
        loops = 0
        for s in range(2 * n):
            if s in seen:
                continue
            cur = s
            while cur not in seen:
                seen.add(cur)
                cur = adj[cur]
                seen.add(cur)
                cur = cur + n if cur < n else cur - n
            loops += 1
        total += c * delta ** loops
    return total


def jw_expand(n, p):
    """Idempotent of the n-strand algebra as a sum of matchings.

    jw(n) = jw(n-1)x1 - (Delta_{n-2}/Delta_{n-1}) (jw(n-1)x1) e_{n-1}
    (jw(n-1)x1), supported for colours 0..5.
    """
    if not 0 <= n <= MAX_COLOR:
        raise ValueError("idempotent expansion supported for colours 0..%d" % MAX_COLOR)
    cached = p._jw_cache.get(n)
    if cached is not None:
        return cached
    if n == 0:
        val = {(): 1.0}
    elif n == 1:
        val = tl_identity(1)
    else:
        delta = p.delta(1)
        ext = {}
        for pairs, c in jw_expand(n - 1, p).items():
            shifted = [(u if u < n - 1 else u + 1, v if v < n - 1 else v + 1)
                       for u, v in pairs]
            shifted.append((n - 1, 2 * n - 1))
            ext[_pairing_key(shifted)] = c
        mid = tl_compose(ext, tl_compose(tl_e(n - 2, n), ext, n, delta), n, delta)
        coef = p.delta(n - 2) / p.delta(n - 1)
        val = dict(ext)
        for k, c in mid.items():
            val[k] = val.get(k, 0.0) - coef * c
        val = {k: c for k, c in val.items() if abs(c) > 1e-14}
    p._jw_cache[n] = val
    return val


# -- cabling a diagram ----------------------------------------------------------

def _cable_wiring(d, coloring, rep, p):
    """Fixed connections (adjacency over cabling points) and expansion sites.

    Points: ("n", node, slot, t) for cable position t at a node slot (indices
    counterclockwise around the node), ("x", node, row, col, corner) for the
    corners of an elementary crossing, ("b", class, i) for idempotent box
    points in geometric order (0..c-1 left top-to-bottom, c..2c-1 right).
    """
    adj = {}

    def connect(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    sites = []
    colors_at = {}
    for nid, node in sorted(d.nodes.items()):
        cs = []
        for slot in range(len(node.ports)):
            use = d._usage[(nid, d.port_at(nid, slot))]
            cs.append(coloring[rep[use[1]]])
        colors_at[nid] = cs
        if node.kind == "vertex3":
            c0, c1, c2 = cs
            z = [(c0 + c1 - c2) // 2, (c1 + c2 - c0) // 2, (c2 + c0 - c1) // 2]
            for s in range(3):
                for t in range(z[s]):
                    connect(("n", nid, s, cs[s] - 1 - t), ("n", nid, (s + 1) % 3, t))
        else:
            a, b = cs[0], cs[1]
            if a == 0 or b == 0:
                for t in range(a):
                    connect(("n", nid, 0, t), ("n", nid, 2, a - 1 - t))
                for t in range(b):
                    connect(("n", nid, 1, t), ("n", nid, 3, b - 1 - t))
                continue
            # over rows run west->east (row 0 northmost), under columns
            # south->north (column 0 westmost)
            for s in range(a):
                connect(("n", nid, 0, s), ("x", nid, s, 0, "w"))
                connect(("x", nid, s, b - 1, "e"), ("n", nid, 2, a - 1 - s))
                for t in range(b - 1):
                    connect(("x", nid, s, t, "e"), ("x", nid, s, t + 1, "w"))
            for t in range(b):
                connect(("n", nid, 1, t), ("x", nid, a - 1, t, "s"))
                connect(("x", nid, 0, t, "n"), ("n", nid, 3, b - 1 - t))
                for s in range(1, a):
                    connect(("x", nid, s, t, "n"), ("x", nid, s - 1, t, "s"))
            for s in range(a):
                for t in range(b):
                    base = ("x", nid, s, t)
                    sites.append(("cross", [
                        (complex(p.A),
                         ((base + ("w",), base + ("s",)),
                          (base + ("e",), base + ("n",)))),
                        (1.0 / complex(p.A),
                         ((base + ("w",), base + ("n",)),
                          (base + ("s",), base + ("e",)))),
                    ]))

    # one idempotent box per strand class, carried by its smallest member
    boxed = {}
    for sid, s in sorted(d.strands().items()):
        boxed[min(s["members"])] = sid

    def ribbon(seg_id, end1, end2, color, box_of):
        if color == 0:
            return
        (n1, s1), (n2, s2) = end1, end2
        if box_of is None:
            for t in range(color):
                connect(("n", n1, s1, t), ("n", n2, s2, color - 1 - t))
        else:
            c = color
            for t in range(c):
                connect(("n", n1, s1, t), ("b", box_of, c - 1 - t))
                connect(("n", n2, s2, t), ("b", box_of, c + t))
            sites.append(("box", box_of, c))

    for eid, e in sorted(d.edges.items()):
        ends = tuple((n, d.slot(n, pp)) for n, pp in e.ends)
        ribbon(eid, ends[0], ends[1], coloring[rep[eid]], boxed.get(eid))
    for cid, c in sorted(d.circles.items()):
        color = coloring[rep[cid]]
        if not c.word:
            if color > 0:
                # closed cable: the box's left side wraps onto its right side
                for i in range(color):
                    connect(("b", cid, i), ("b", cid, color + i))
                sites.append(("box", cid, color))
            continue
        k = len(c.word)
        for t in range(k):
            xid, _pin, pout = c.word[t]
            nxt = c.word[(t + 1) % k]
            ribbon((cid, t),
                   (xid, d.slot(xid, pout)),
                   (nxt[0], d.slot(nxt[0], nxt[1])),
                   color, boxed.get(cid) if t == 0 else None)
    return adj, sites


def brute_bracket(d, coloring, p):
    """Kauffman bracket by exhaustive cabled-state expansion.

    Guards: colours at most 5, at most 24 cabled strands in total.
    Inadmissible colourings evaluate to 0, matching the recoupling path.
    """
    strands = d.strands()
    rep = {}
    for sid, s in strands.items():
        for m in s["members"]:
            rep[m] = sid
    for sid in strands:
        if coloring[sid] > MAX_COLOR:
            raise EvaluationError("oracle limited to colours <= %d" % MAX_COLOR)
    if sum(coloring[sid] for sid in strands) > MAX_CABLED_STRANDS:
        raise EvaluationError("oracle cabling guard exceeded")
    for trip in d.vertex_strand_triples().values():
        if not p.admissible(*(coloring[s] for s in trip)):
            return 0j

    adj, sites = _cable_wiring(d, coloring, rep, p)
    delta = complex(p.delta(1))

    # collect the terminals every site owns, in processing order
    site_terminals = []
    for site in sites:
        if site[0] == "cross":
            base = site[1][0][1][0][0][:4]
            site_terminals.append([base + (c,) for c in ("w", "s", "e", "n")])
        else:
            _, sid, c = site
            site_terminals.append([("b", sid, i) for i in range(2 * c)])
    terminal_set = {t for ts in site_terminals for t in ts}

    for pt, nbrs in adj.items():
        want = 1 if pt in terminal_set else 2
        if len(nbrs) != want:
            raise EvaluationError("cabling wiring degree error at %r" % (pt,))

    # trace fixed chains between site terminals
    chains = {}
    loops0 = 0
    visited = set()
    for t in sorted(terminal_set):
        if t in visited:
            continue
        visited.add(t)
        prev, cur = t, adj[t][0]
        while cur not in terminal_set:
            visited.add(cur)
            nxt = [q for q in adj[cur] if q != prev]
            if len(nxt) != 1:
                raise EvaluationError("broken cable chain at %r" % (cur,))
            prev, cur = cur, nxt[0]
        visited.add(cur)
        chains[t] = cur
        chains[cur] = t
    # interior points not on any terminal chain form cabled free loops
    for pt in sorted(adj):
        if pt in visited or pt in terminal_set:
            continue
        prev, cur = pt, adj[pt][0]
        visited.add(pt)
        while cur != pt:
            visited.add(cur)
            nxt = [q for q in adj[cur] if q != prev]
            prev, cur = cur, nxt[0]
        loops0 += 1

    def chain_key(ch):
        return tuple(sorted((a, b) for a, b in ch.items() if a < b))

    states = {chain_key(chains): delta ** loops0}

    for site, terms in zip(sites, site_terminals):
        if site[0] == "cross":
            options = site[1]
        else:
            _, sid, c = site
            options = []
            for pairs, coeff in sorted(jw_expand(c, p).items()):
                options.append((coeff,
                                tuple((("b", sid, u), ("b", sid, v))
                                      for u, v in pairs)))
        new_states = {}
        for key, amp in states.items():
            ch = {}
            for a, b in key:
                ch[a] = b
                ch[b] = a
            for coeff, pairing in options:
                ch2 = dict(ch)
                closed = 0
                for t1, t2 in pairing:
                    f1 = ch2.pop(t1)
                    f2 = ch2.pop(t2)
                    if f1 == t2:
                        closed += 1
                        continue
                    ch2.pop(f1, None)
                    ch2.pop(f2, None)
                    ch2[f1] = f2
                    ch2[f2] = f1
                k2 = chain_key(ch2)
                v = amp * coeff * delta ** closed
                new_states[k2] = new_states.get(k2, 0j) + v
        states = new_states

    total = 0j
    for key, amp in states.items():
        if key:
            raise EvaluationError("unfinished chains after expansion: %r" % (key,))
        total += amp
    return total
