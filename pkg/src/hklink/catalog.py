"""Built-in diagrams: census entries, move test pairs, and framed links.

All diagrams are constructed as explicit combinatorial maps.  Port lists are
counterclockwise; comments give the plane angles used to read the rotations
off a drawing.  Crossing-bearing families (kinks, clasps, braid closures) are
built with a small braid builder so the over/under and rotation bookkeeping
lives in one place.
"""

import importlib.resources as resources
from dataclasses import dataclass

from .diagram import CROSSING, VERTEX, Circle, DiagramCode, Edge, Node, load_path


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diagram: DiagramCode
    genus: int
    components: int
    note: str = ""


# -- braid builder -----------------------------------------------------------

def braid_diagram(n_strands, letters, closure="trace", meta=None):
    """Close a braid word into a diagram.

    Letters: ("s", i, +1|-1) crosses columns i and i+1 (positive sign means
    the strand rising from column i+1 passes over); ("curl", i, +1|-1) puts a
    kink of that framing sign on column i.  Closure is "trace" (column tops
    join their own bottoms) or "plat" (adjacent column pairs are capped).
    """
    nodes, edges, circles = [], [], []
    cur = [None] * n_strands
    bot = [None] * n_strands
    counter = [0, 0]

    def new_node(ports):
        nid = "x%d" % counter[0]
        counter[0] += 1
        nodes.append(Node(nid, CROSSING, ports))
        return nid

    def new_edge(a, b):
        eid = "a%02d" % counter[1]
        counter[1] += 1
        edges.append(Edge(eid, (a, b)))

    def attach(col, end):
        if cur[col] is None:
            bot[col] = end
        else:
            new_edge(cur[col], end)

    for letter in letters:
        kind = letter[0]
        if kind == "s":
            _, i, sign = letter
            x = new_node((0, 1, 2, 3))
            if sign > 0:
                # ccw ports: (N_left, S_left, S_right, S->N over on slots 0,2)
                attach(i, (x, 1))
                attach(i + 1, (x, 2))
                cur[i], cur[i + 1] = (x, 0), (x, 3)
            else:
                # ccw ports: (N_right, N_left, S_left, S_right)
                attach(i, (x, 2))
                attach(i + 1, (x, 3))
                cur[i], cur[i + 1] = (x, 1), (x, 0)
        elif kind == "curl":
            _, i, sign = letter
            ports = (0, 1, 2, 3) if sign > 0 else (1, 2, 3, 0)
            x = new_node(ports)
            attach(i, (x, 0))
            new_edge((x, 2), (x, 3))
            cur[i] = (x, 1)
        else:
            raise ValueError("unknown braid letter %r" % (letter,))

    if closure == "trace":
        for col in range(n_strands):
            if cur[col] is None:
                circles.append(Circle("c%d" % col, ()))
            else:
                new_edge(cur[col], bot[col])
    elif closure == "plat":
        if n_strands % 2:
            raise ValueError("plat closure needs an even strand count")
        for k in range(0, n_strands, 2):
            if cur[k] is None and cur[k + 1] is None:
                circles.append(Circle("c%d" % k, ()))
            else:
                new_edge(cur[k], cur[k + 1])
                new_edge(bot[k], bot[k + 1])
    else:
        raise ValueError("unknown closure %r" % closure)
    return DiagramCode(nodes, edges, circles, meta)


# -- crossing-free spines ------------------------------------------------------

def circle_diagram():
    return DiagramCode([], [], [Circle("c0", ())], {"name": "circle"})


def theta_diagram():
    """Two vertices joined by three parallel edges (left, middle, right).

    At u the edges leave at 240/270/300 degrees, at w they arrive at
    120/90/60, which reverses the cyclic order.
    """
    nodes = [Node("u", VERTEX, (0, 1, 2)), Node("w", VERTEX, (0, 1, 2))]
    edges = [Edge("ea", (("u", 0), ("w", 2))),
             Edge("em", (("u", 1), ("w", 1))),
             Edge("eb", (("u", 2), ("w", 0)))]
    return DiagramCode(nodes, edges, [], {"name": "0_1_theta", "census": "0_1"})


def handcuffs_diagram():
    """Loop at u, loop at w, connecting bar; loops open away from the bar."""
    nodes = [Node("u", VERTEX, (0, 1, 2)), Node("w", VERTEX, (0, 1, 2))]
    edges = [Edge("bar", (("u", 0), ("w", 1))),
             Edge("li", (("u", 1), ("u", 2))),
             Edge("lj", (("w", 2), ("w", 0)))]
    return DiagramCode(nodes, edges, [], {"name": "0_1_handcuffs", "census": "0_1"})


def tripod_diagram():
    """Trivial genus-3 spine: three looped leaves on a central vertex."""
    nodes = [Node("c", VERTEX, (0, 1, 2))]
    edges = []
    for t in range(3):
        v = "v%d" % (t + 1)
        nodes.append(Node(v, VERTEX, (0, 1, 2)))
        edges.append(Edge("s%d" % (t + 1), (("c", t), (v, 2))))
        edges.append(Edge("l%d" % (t + 1), ((v, 0), (v, 1))))
    return DiagramCode(nodes, edges, [], {"name": "trivial_genus3"})


def tetrahedron_diagram():
    """Planar K4: outer triangle A, B, C with hub D."""
    nodes = [Node("A", VERTEX, (0, 1, 2)),   # (to B @210, to D @270, to C @330)
             Node("B", VERTEX, (0, 1, 2)),   # (to C @0, to D @45, to A @75)
             Node("C", VERTEX, (0, 1, 2)),   # (to A @105, to D @135, to B @180)
             Node("D", VERTEX, (0, 1, 2))]   # (to A @90, to B @225, to C @315)
    edges = [Edge("ab", (("A", 0), ("B", 2))),
             Edge("ac", (("A", 2), ("C", 0))),
             Edge("ad", (("A", 1), ("D", 0))),
             Edge("bc", (("B", 0), ("C", 2))),
             Edge("bd", (("B", 1), ("D", 1))),
             Edge("cd", (("C", 1), ("D", 2)))]
    return DiagramCode(nodes, edges, [], {"name": "tetrahedron"})


# -- census diagrams with crossings -------------------------------------------

def four_one_diagram():
    """The 4_1 genus-2 handlebody-knot: handcuffs with crossed clasps.

    The bar k runs from u (top) to w (bottom).  Loop i leaves u, descends on
    the right past the other clasp, and full-twists with the bar near w
    (crossings xi1, xi2); loop j leaves w, ascends on the left and clasps
    the bar near u (xj2, xj1).  Each clasp sits past the opposite vertex's
    fork, so neither can be slid off; all four crossings carry the same
    sign.  The whole diagram is symmetric under a half turn of the plane.
    """
    nodes = [
        Node("u", VERTEX, (0, 1, 2)),         # (bar @270, i out @300, i in @330)
        Node("w", VERTEX, (0, 1, 2)),         # (bar @90, j out @120, j in @150)
        Node("xi1", CROSSING, (0, 1, 2, 3)),  # (i NE, k N, i SW, k S); i over
        Node("xi2", CROSSING, (0, 1, 2, 3)),  # (k N, i NW, k S, i SE); k over
        Node("xj1", CROSSING, (0, 1, 2, 3)),  # (j SW, k S, j NE, k N); j over
        Node("xj2", CROSSING, (0, 1, 2, 3)),  # (k S, j SE, k N, j NW); k over
    ]
    edges = [
        Edge("k0", (("u", 0), ("xj2", 2))),
        Edge("k1", (("xj2", 0), ("xj1", 3))),
        Edge("k2", (("xj1", 1), ("xi1", 1))),
        Edge("k3", (("xi1", 3), ("xi2", 0))),
        Edge("k4", (("xi2", 2), ("w", 0))),
        Edge("i0", (("u", 1), ("xi1", 0))),
        Edge("i1", (("xi1", 2), ("xi2", 1))),
        Edge("i2", (("xi2", 3), ("u", 2))),
        Edge("j0", (("w", 1), ("xj1", 0))),
        Edge("j1", (("xj1", 2), ("xj2", 1))),
        Edge("j2", (("xj2", 3), ("w", 2))),
    ]
    return DiagramCode(nodes, edges, [], {"name": "4_1", "census": "4_1"})


# -- small link diagrams -------------------------------------------------------

def kinked_circle(sign=1, meta=None):
    """Unknot with a single kink of the given framing sign."""
    d = braid_diagram(1, [("curl", 0, sign)], "trace")
    d.meta.update(meta or {"name": "unknot_kink_%s" % ("plus" if sign > 0 else "minus")})
    return d


def two_circles():
    return DiagramCode([], [], [Circle("c0", ()), Circle("c1", ())],
                       {"name": "two_circles"})


def rii_poked_circles():
    """Two circles with a removable over-over poke between them.

    Circle A runs vertically through both crossings; circle B pokes over it
    westward at x1 and back eastward at x2.
    """
    nodes = [Node("x1", CROSSING, (0, 1, 2, 3)),   # (B E, A N, B W, A S); B over
             Node("x2", CROSSING, (0, 1, 2, 3))]
    circles = [Circle("ca", (("x1", 1, 3), ("x2", 1, 3))),
               Circle("cb", (("x1", 0, 2), ("x2", 2, 0)))]
    return DiagramCode(nodes, [], circles, {"name": "rii_poked"})


def hopf_diagram(meta=None):
    """Hopf link: circle cs vertical, circle cr rings it (over at x1)."""
    nodes = [Node("x1", CROSSING, (0, 1, 2, 3)),   # (R E, S N, R W, S S); R over
             Node("x2", CROSSING, (0, 1, 2, 3))]   # (S N, R W, S S, R E); S over
    circles = [Circle("cs", (("x1", 1, 3), ("x2", 0, 2))),
               Circle("cr", (("x1", 0, 2), ("x2", 1, 3)))]
    return DiagramCode(nodes, [], circles, meta or {"name": "hopf"})


# -- Reidemeister move pairs ---------------------------------------------------

def rv_twisted_theta():
    """Theta with a positive half-twist of the middle/right edge pair at u."""
    nodes = [Node("u", VERTEX, (0, 1, 2)),
             Node("w", VERTEX, (0, 1, 2)),
             Node("x", CROSSING, (0, 1, 2, 3))]  # (em top, eb top, em bot, eb bot)
    edges = [Edge("ea", (("u", 0), ("w", 2))),
             Edge("m0", (("u", 2), ("x", 0))),
             Edge("m1", (("x", 2), ("w", 1))),
             Edge("b0", (("u", 1), ("x", 1))),
             Edge("b1", (("x", 3), ("w", 0)))]
    return DiagramCode(nodes, edges, [], {"name": "theta_vertex_twist"})


def riv_ring_on_vertex():
    """Theta plus a ring around vertex u: over ea, under em, under eb.

    The ring runs counterclockwise around u, meeting ea at 240 degrees,
    em at 270 and eb at 300.
    """
    nodes = [Node("u", VERTEX, (0, 1, 2)),
             Node("w", VERTEX, (0, 1, 2)),
             Node("xa", CROSSING, (0, 1, 2, 3)),  # (ring in, ea away, ring out, ea to-u)
             Node("xc", CROSSING, (0, 1, 2, 3)),  # (em to-u, ring in, em away, ring out)
             Node("xb", CROSSING, (0, 1, 2, 3))]  # (eb to-u, ring in, eb away, ring out)
    edges = [Edge("ea0", (("u", 0), ("xa", 3))),
             Edge("ea1", (("xa", 1), ("w", 2))),
             Edge("em0", (("u", 1), ("xc", 0))),
             Edge("em1", (("xc", 2), ("w", 1))),
             Edge("eb0", (("u", 2), ("xb", 0))),
             Edge("eb1", (("xb", 2), ("w", 0)))]
    circles = [Circle("ring", (("xa", 0, 2), ("xc", 1, 3), ("xb", 1, 3)))]
    return DiagramCode(nodes, edges, circles, {"name": "ring_on_vertex"})


def riv_ring_on_edge():
    """Theta plus a ring around the right edge eb (over at y1, under at y2)."""
    nodes = [Node("u", VERTEX, (0, 1, 2)),
             Node("w", VERTEX, (0, 1, 2)),
             Node("y1", CROSSING, (0, 1, 2, 3)),  # (ring in, eb to-u, ring out, eb away)
             Node("y2", CROSSING, (0, 1, 2, 3))]  # (eb to-u, ring in, eb away, ring out)
    edges = [Edge("ea", (("u", 0), ("w", 2))),
             Edge("em", (("u", 1), ("w", 1))),
             Edge("eb0", (("u", 2), ("y1", 1))),
             Edge("eb1", (("y1", 3), ("y2", 0))),
             Edge("eb2", (("y2", 2), ("w", 0)))]
    circles = [Circle("ring", (("y1", 0, 2), ("y2", 1, 3)))]
    return DiagramCode(nodes, edges, circles, {"name": "ring_on_edge"})


def theta_with_kink(sign=1):
    """Theta with a kink on the middle edge."""
    ports = (0, 1, 2, 3) if sign > 0 else (1, 2, 3, 0)
    nodes = [Node("u", VERTEX, (0, 1, 2)),
             Node("w", VERTEX, (0, 1, 2)),
             Node("x", CROSSING, ports)]
    edges = [Edge("ea", (("u", 0), ("w", 2))),
             Edge("m0", (("u", 1), ("x", 0))),
             Edge("mk", (("x", 2), ("x", 3))),
             Edge("m1", (("x", 1), ("w", 1))),
             Edge("eb", (("u", 2), ("w", 0)))]
    return DiagramCode(nodes, edges, [], {"name": "theta_kink"})


def reidemeister_pairs():
    """Before/after diagram pairs for the six handlebody-link moves."""
    return {
        "RI": (circle_diagram(), kinked_circle(+1)),
        "RII": (two_circles(), rii_poked_circles()),
        "RIII": (braid_diagram(3, [("s", 0, 1), ("s", 1, 1), ("s", 0, 1)], "trace",
                               {"name": "riii_before"}),
                 braid_diagram(3, [("s", 1, 1), ("s", 0, 1), ("s", 1, 1)], "trace",
                               {"name": "riii_after"})),
        "RIV": (riv_ring_on_vertex(), riv_ring_on_edge()),
        "RV": (theta_diagram(), rv_twisted_theta()),
        "RVI": (theta_diagram(), handcuffs_diagram()),
    }


# -- framed links for surgery --------------------------------------------------

def unlink(n, framed=True):
    meta = {"name": "unlink%d" % n}
    if framed:
        meta["framed"] = "true"
    return DiagramCode([], [], [Circle("c%d" % i, ()) for i in range(n)], meta)


def framed_unknot(framing=0):
    if framing == 0:
        d = unlink(1)
        d.meta["name"] = "unknot_0"
        return d
    sign = 1 if framing > 0 else -1
    word = [("curl", 0, sign)] * abs(framing)
    d = braid_diagram(1, word, "trace",
                      {"name": "unknot_%+d" % framing, "framed": "true"})
    return d


def kii_pair():
    """A handle-slide pair: split (+1, 0) unlink vs the slid (+1, +1) Hopf."""
    before = braid_diagram(1, [("curl", 0, 1)], "trace", {"framed": "true"})
    before = DiagramCode(before.nodes.values(), before.edges.values(),
                         list(before.circles.values()) + [Circle("cfree", ())],
                         {"name": "kii_before", "framed": "true"})
    after = braid_diagram(2, [("curl", 0, 1), ("s", 0, 1), ("s", 0, 1), ("curl", 1, 1)],
                          "trace", {"name": "kii_after", "framed": "true"})
    return before, after


def framed_links():
    kb, ka = kii_pair()
    hopf = hopf_diagram({"name": "hopf", "framed": "true"})
    return {
        "unknot_0": framed_unknot(0),
        "unknot_plus": framed_unknot(+1),
        "unknot_minus": framed_unknot(-1),
        "unlink2": unlink(2),
        "unlink3": unlink(3),
        "hopf": hopf,
        "kii_before": kb,
        "kii_after": ka,
    }


# -- the catalog ----------------------------------------------------------------

def entries():
    """Catalog diagrams with hand-checked genus and component counts."""
    return [
        CatalogEntry("circle", circle_diagram(), 1, 1, "genus-1 unknot"),
        CatalogEntry("0_1_theta", theta_diagram(), 2, 1, "trivial genus 2, theta spine"),
        CatalogEntry("0_1_handcuffs", handcuffs_diagram(), 2, 1,
                     "trivial genus 2, handcuffs spine"),
        CatalogEntry("4_1", four_one_diagram(), 2, 1, "4-crossing census knot"),
        CatalogEntry("trivial_genus3", tripod_diagram(), 3, 1, "three-leaf spine"),
        CatalogEntry("tetrahedron", tetrahedron_diagram(), 3, 1, "planar K4 spine"),
        CatalogEntry("unknot_kink_plus", kinked_circle(+1), 1, 1, "framing +1 curl"),
        CatalogEntry("unknot_kink_minus", kinked_circle(-1), 1, 1, "framing -1 curl"),
        CatalogEntry("hopf", hopf_diagram(), 2, 2, "two linked genus-1 components"),
        CatalogEntry("rii_poked", rii_poked_circles(), 2, 2, "removable poke"),
        CatalogEntry("theta_kink", theta_with_kink(+1), 2, 1, "kink on a theta edge"),
        CatalogEntry("ring_on_edge", riv_ring_on_edge(), 3, 2, "theta with satellite ring"),
    ]


def by_name(name):
    for e in entries():
        if e.name == name:
            return e
    raise KeyError(name)


def data_dir():
    """Directory holding the shipped .hkd files and reference table."""
    return resources.files("hklink") / "data"


def load_shipped(name):
    return load_path(str(data_dir() / "catalog" / (name + ".hkd")))
