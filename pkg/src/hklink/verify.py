"""Built-in verification suites shared by the CLI and the test suite.

Each suite returns a SuiteResult with the worst deviation it saw; a suite
passes when that deviation stays within its tolerance.
"""

import math
from dataclasses import dataclass, field
from itertools import product

from . import catalog
from .evaluate import bracket
from .invariant import hk_invariant, trivial_genus2_closed_form
from .skein import QuantumParams
from .tloracle import brute_bracket
from .wrt import FramedLink, kirby_move_pair_check, theorem_double_check, z_wrt


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    checks: int
    details: list = field(default_factory=list)


def _result(name, devs, tol, details=None):
    worst = max(devs) if devs else 0.0
    return SuiteResult(name, worst <= tol, worst, len(devs), details or [])


def suite_scalars(rs=range(3, 17), tol=1e-9):
    """Scalar identities: theta symmetry, vanishing top loop value, the
    closed form for N, twist modulus, and the stabilisation identity."""
    devs = []
    for r in rs:
        p = QuantumParams(r)
        devs.append(abs(p.delta(r - 1)))
        for n in range(1, r):
            devs.append(abs(p.quantum_int(n) - (-1) ** (n - 1) * p.delta(n - 1)))
        devs.append(abs(p.n_value() - r / (2 * math.sin(math.pi / r) ** 2)))
        lhs = sum(p.delta(n) ** 2 * p.curl_factor(n, +1) for n in p.colors)
        devs.append(abs(lhs - p.kappa() * math.sqrt(p.n_value())))
        for i in p.colors:
            for j in p.colors:
                for k in p.colors:
                    if not p.admissible(i, j, k):
                        continue
                    base = p.theta(i, j, k)
                    for tri in ((j, k, i), (k, i, j), (j, i, k), (i, k, j), (k, j, i)):
                        devs.append(abs(p.theta(*tri) - base))
                    devs.append(abs(abs(p.lam(i, j, k)) - 1.0))
    return _result("scalars", devs, tol)


def suite_welldef(rs=range(3, 11), tol=1e-9):
    """The two spines of the trivial genus-2 knot agree with each other and
    with the closed form."""
    theta = catalog.theta_diagram()
    cuffs = catalog.handcuffs_diagram()
    devs = []
    for r in rs:
        p = QuantumParams(r)
        a = hk_invariant(theta, p).value
        b = hk_invariant(cuffs, p).value
        cf = trivial_genus2_closed_form(p)
        devs.extend([abs(a - b), abs(a - cf)])
    return _result("welldef", devs, tol)


def suite_reidemeister(rs=range(3, 9), tol=1e-9):
    """Invariance under the six moves, on encoded before/after pairs."""
    pairs = catalog.reidemeister_pairs()
    devs = []
    details = []
    for move, (before, after) in pairs.items():
        for r in rs:
            p = QuantumParams(r)
            a = hk_invariant(before, p).value
            b = hk_invariant(after, p).value
            devs.append(abs(a - b))
            details.append((move, r, abs(a - b)))
    return _result("reidemeister", devs, tol, details)


def suite_mirror(rs=range(3, 9), tol=1e-9):
    devs = []
    for entry in catalog.entries():
        for r in rs:
            p = QuantumParams(r)
            a = hk_invariant(entry.diagram, p).value
            b = hk_invariant(entry.diagram.mirror(), p).value
            devs.append(abs(a - b))
    return _result("mirror", devs, tol)


def suite_r3_law(tol=1e-9):
    """At the lowest level the invariant only sees total genus: every catalog
    diagram and every single crossing change gives 2^genus."""
    p = QuantumParams(3)
    devs = []
    for entry in catalog.entries():
        want = 2.0 ** entry.genus
        devs.append(abs(hk_invariant(entry.diagram, p).value - want))
        for xid in entry.diagram.crossing_ids():
            flipped = entry.diagram.crossing_change(xid)
            devs.append(abs(hk_invariant(flipped, p).value - want))
    return _result("r3_law", devs, tol)


def suite_oracle(rs=(4, 5, 6), tol=1e-9, max_color=3):
    """Recoupling evaluation against the brute-force cabled expansion."""
    corpus = ["circle", "0_1_theta", "tetrahedron", "unknot_kink_plus",
              "unknot_kink_minus", "hopf", "rii_poked"]
    devs = []
    for name in corpus:
        d = catalog.by_name(name).diagram
        strands = sorted(d.strands())
        for r in rs:
            p = QuantumParams(r)
            cap = min(max_color, p.color_max)
            for colors in product(range(cap + 1), repeat=len(strands)):
                coloring = dict(zip(strands, colors))
                if sum(colors) > 14:
                    continue
                a = bracket(d, coloring, p)
                b = brute_bracket(d, coloring, p)
                devs.append(abs(a - b))
    return _result("oracle", devs, tol)


def suite_curl_and_encircle(rs=(4, 5, 6), tol=1e-9):
    """The kink phase and the value of one strand encircled by another."""
    devs = []
    kplus = catalog.by_name("unknot_kink_plus").diagram
    hopf = catalog.by_name("hopf").diagram
    sid = sorted(kplus.strands())[0]
    for r in rs:
        p = QuantumParams(r)
        for n in p.colors:
            want = p.curl_factor(n, +1) * p.delta(n)
            devs.append(abs(bracket(kplus, {sid: n}, p) - want))
        for n in p.colors:
            for i in p.colors:
                got = bracket(hopf, {"cs": n, "cr": i}, p)
                num = p.a_pow(2 * (n + 1) * (i + 1)) - p.a_pow(-2 * (n + 1) * (i + 1))
                den = p.a_pow(2 * (n + 1)) - p.a_pow(-2 * (n + 1))
                want = (-1) ** i * (num / den) * p.delta(n)
                devs.append(abs(got - want))
    return _result("curl_encircle", devs, tol)


def suite_kirby(rs=range(3, 13), tol=1e-9):
    """Stabilisation (both signs) and the catalog handle-slide pair."""
    links = catalog.framed_links()
    empty = FramedLink(catalog.unlink(0))
    devs = []
    for r in rs:
        p = QuantumParams(r)
        for name in ("unknot_plus", "unknot_minus"):
            chk = kirby_move_pair_check(empty, FramedLink(links[name]), p)
            devs.append(chk["deviation"])
    for r in range(3, 9):
        p = QuantumParams(r)
        chk = kirby_move_pair_check(FramedLink(links["kii_before"]),
                                    FramedLink(links["kii_after"]), p)
        devs.append(chk["deviation"])
    return _result("kirby", devs, tol)


def suite_wrt_normalisation(rs=range(3, 11), tol=1e-9):
    """Surgery values of the empty link, the zero-framed unknot, and
    zero-framed unlinks."""
    devs = []
    for r in rs:
        p = QuantumParams(r)
        n = p.n_value()
        devs.append(abs(z_wrt(FramedLink(catalog.unlink(0)), p) - n ** -0.5))
        devs.append(abs(z_wrt(FramedLink(catalog.framed_unknot(0)), p) - 1.0))
        for g in (2, 3):
            devs.append(abs(z_wrt(FramedLink(catalog.unlink(g)), p)
                            - n ** ((g - 1) / 2.0)))
    return _result("wrt_norm", devs, tol)


def suite_omega_annihilation(rs=(4, 5, 6, 7), tol=1e-9):
    """A loop-sum circle around an n-coloured strand gives N for n=0 and
    kills every other colour."""
    hopf = catalog.by_name("hopf").diagram
    devs = []
    for r in rs:
        p = QuantumParams(r)
        n_val = p.n_value()
        for n in p.colors:
            tot = sum(p.delta(i) * bracket(hopf, {"cs": n, "cr": i}, p)
                      for i in p.colors)
            want = n_val * p.delta(n) if n == 0 else 0.0
            devs.append(abs(tot - want))
    return _result("omega", devs, tol)


def suite_theorem_double(rs=range(3, 11), tol=1e-6):
    """Invariant vs the surgery invariant of the exterior's double on the
    three trivial cases (genus 1, 2, 3)."""
    cases = [
        (catalog.circle_diagram(), catalog.framed_unknot(0)),
        (catalog.theta_diagram(), catalog.unlink(2)),
        (catalog.tripod_diagram(), catalog.unlink(3)),
    ]
    devs = []
    details = []
    for d, ld in cases:
        for r in rs:
            p = QuantumParams(r)
            rep = theorem_double_check(d, FramedLink(ld), p)
            rel = rep["deviation"] / max(1.0, abs(rep["hk_value"]))
            devs.append(rel)
            details.append((rep["diagram"], r, rel))
    return _result("theorem_double", devs, tol, details)


def suite_table(rs=range(3, 11), tol=1e-6):
    """The two census columns that ship with diagram encodings."""
    from .table import reference_values
    ref = reference_values()
    devs = []
    for name in ("0_1_theta", "0_1_handcuffs", "4_1"):
        entry = catalog.by_name(name)
        column = entry.diagram.meta.get("census", name)
        for r in rs:
            p = QuantumParams(r)
            got = hk_invariant(entry.diagram, p).value
            devs.append(abs(got - ref[column][r]))
    return _result("table", devs, tol)


ALL_SUITES = {
    "scalars": suite_scalars,
    "welldef": suite_welldef,
    "reidemeister": suite_reidemeister,
    "mirror": suite_mirror,
    "r3": suite_r3_law,
    "oracle": suite_oracle,
    "curl": suite_curl_and_encircle,
    "kirby": suite_kirby,
    "wrt": suite_wrt_normalisation,
    "omega": suite_omega_annihilation,
    "theorem3": suite_theorem_double,
    "table": suite_table,
}


def run_suites(names=None, rs=None):
    names = list(names or ALL_SUITES)
    out = []
    for name in names:
        fn = ALL_SUITES[name]
        out.append(fn(rs) if rs is not None else fn())
    return out
