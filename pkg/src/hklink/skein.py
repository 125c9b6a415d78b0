"""Scalar engine for the quantum data at a root of unity.

Everything here lives at A = exp(2*pi*i/4r) for an integer level r >= 3:
quantum integers [n], loop values Delta_n, theta and tetrahedral network
values, 6j recoupling coefficients, the twist coefficients lambda^{ij}_k,
and the surgery normalisation constants N and kappa.  All values are
double-precision; callers compare with absolute tolerances (1e-9 is the
working tolerance throughout the package).
"""

import cmath
import math


class AdmissibilityError(ValueError):
    """A network value was requested for an inadmissible colour triple."""


class EvaluationError(RuntimeError):
    """Internal evaluation failure (non-terminating reduction, bad net)."""


def admissible_triple(i, j, k, color_max):
    """Triangle inequalities, parity, and the level bound i+j+k <= 2*color_max."""
    if i < 0 or j < 0 or k < 0 or i > color_max or j > color_max or k > color_max:
        return False
    if (i + j + k) % 2:
        return False
    if i > j + k or j > i + k or k > i + j:
        return False
    return i + j + k <= 2 * color_max


class QuantumParams:
    """Level r >= 3 with A = exp(2*pi*i/4r) and memoised scalar tables.

    Instances are immutable in their mathematical content; the internal
    dictionaries only cache values, so sharing one instance across threads
    or worker tasks is safe.
    """

    def __init__(self, r):
        if not isinstance(r, int) or r < 3:
            raise ValueError("level r must be an integer >= 3, got %r" % (r,))
        self.r = r
        self.color_max = r - 2
        self.A = cmath.exp(2j * math.pi / (4 * r))
        s1 = math.sin(math.pi / r)
        # [n] and [n]! for 0 <= n <= 4r+1 cover every factorial the
        # tetrahedral sum can request at this level.
        top = 4 * r + 2
        self._qint = [math.sin(n * math.pi / r) / s1 for n in range(top)]
        self._qfact = [1.0] * top
        for n in range(1, top):
            self._qfact[n] = self._qfact[n - 1] * self._qint[n]
        # Delta_n = (-1)^n [n+1]; _dfact is offset by one so Delta_{-1}! = 1
        # sits at index 0.
        self._delta = [(-1) ** n * self._qint[n + 1] for n in range(top - 1)]
        self._dfact = [1.0] * (top - 1)
        for n in range(top - 2):
            self._dfact[n + 1] = self._dfact[n] * self._delta[n]
        self._theta = {}
        self._tet = {}
        self._sixj = {}
        self._reduce_cache = {}
        self._jw_cache = {}

    def __repr__(self):
        return "QuantumParams(r=%d)" % self.r

    @property
    def colors(self):
        return range(self.color_max + 1)

    def a_pow(self, e):
        """A**e for integer e, computed as a unit complex exponential."""
        return cmath.exp(1j * math.pi * e / (2 * self.r))

    def quantum_int(self, n):
        """[n] = (A^2n - A^-2n)/(A^2 - A^-2) = sin(n*pi/r)/sin(pi/r)."""
        if 0 <= n < len(self._qint):
            return self._qint[n]
        return math.sin(n * math.pi / self.r) / math.sin(math.pi / self.r)

    def delta(self, n):
        """Loop value Delta_n of an n-coloured circle; Delta_{r-1} = 0."""
        if n == -1:
            return 0.0
        return self._delta[n]

    def delta_factorial(self, n):
        """Delta_n! = Delta_n Delta_{n-1} ... Delta_0, with Delta_{-1}! = 1."""
        return self._dfact[n + 1]

    def admissible(self, i, j, k):
        return admissible_triple(i, j, k, self.color_max)

    def theta(self, i, j, k):
        """Value of the theta network with strand colours i, j, k.

        Symmetric in its arguments and non-zero for admissible triples.
        """
        key = (i, j, k)
        v = self._theta.get(key)
        if v is None:
            if not self.admissible(i, j, k):
                raise AdmissibilityError("theta%r is not admissible at r=%d" % (key, self.r))
            x = (j + k - i) // 2
            y = (i + k - j) // 2
            z = (i + j - k) // 2
            df = self.delta_factorial
            v = (df(x + y + z) * df(x - 1) * df(y - 1) * df(z - 1)
                 / (df(y + z - 1) * df(x + z - 1) * df(x + y - 1)))
            self._theta[key] = v
        return v

    def tet(self, i, j, k, l, m, n):
        """Value of the tetrahedral network [i j k; l m n].

        The four vertex triples are (i,j,k), (i,m,n), (j,l,n), (k,l,m);
        all of them must be admissible.
        """
        key = (i, j, k, l, m, n)
        v = self._tet.get(key)
        if v is None:
            for tri in ((i, j, k), (i, m, n), (j, l, n), (k, l, m)):
                if not self.admissible(*tri):
                    raise AdmissibilityError(
                        "tet%r has inadmissible vertex %r" % (key, tri))
            a = ((i + j + k) // 2, (i + m + n) // 2,
                 (j + l + n) // 2, (k + l + m) // 2)
            b = ((i + j + l + m) // 2, (i + k + l + n) // 2, (j + k + m + n) // 2)
            lo, hi = max(a), min(b)
            qf = self._qfact
            big_f = 1.0
            for bt in b:
                for asv in a:
                    big_f *= qf[bt - asv]
            big_e = qf[i] * qf[j] * qf[k] * qf[l] * qf[m] * qf[n]
            s = 0.0
            for z in range(lo, hi + 1):
                term = qf[z + 1]
                for asv in a:
                    term /= qf[z - asv]
                for bt in b:
                    term /= qf[bt - z]
                s += -term if z % 2 else term
            v = big_f / big_e * s
            self._tet[key] = v
        return v

    def sixj(self, i, j, m, k, l, n):
        """Normalised recoupling coefficient {i j m; k l n}.

        Equals tet(i,j,m,k,l,n) * Delta_n / (theta(i,l,n) * theta(j,k,n)).
        """
        key = (i, j, m, k, l, n)
        v = self._sixj.get(key)
        if v is None:
            v = (self.tet(i, j, m, k, l, n) * self.delta(n)
                 / (self.theta(i, l, n) * self.theta(j, k, n)))
            self._sixj[key] = v
        return v

    def lam(self, i, j, k, sense=1):
        """Twist coefficient lambda^{ij}_k, a unit complex number.

        sense=+1 gives (-1)^{(i+j-k)/2} A^{i+j-k+(i^2+j^2-k^2)/2}; sense=-1
        gives its reciprocal (the opposite half-twist).
        """
        if not self.admissible(i, j, k):
            raise AdmissibilityError("lambda(%d,%d,%d) is not admissible" % (i, j, k))
        e = (i + j - k) + (i * i + j * j - k * k) // 2
        sign = -1.0 if ((i + j - k) // 2) % 2 else 1.0
        return sign * self.a_pow(e if sense > 0 else -e)

    def n_value(self):
        """N = sum of Delta_n^2 over the colour set; equals r/(2 sin^2(pi/r))."""
        return sum(self.delta(n) ** 2 for n in self.colors)

    def kappa(self):
        """kappa = exp(i pi (r-2)(3-2r)/4r), the framing anomaly constant."""
        r = self.r
        return cmath.exp(1j * math.pi * (r - 2) * (3 - 2 * r) / (4 * r))

    def curl_factor(self, n, sign):
        """Bracket factor of a single kink of the given sign on an n-strand."""
        e = n * n + 2 * n
        f = self.a_pow(e if sign > 0 else -e)
        return -f if n % 2 else f
