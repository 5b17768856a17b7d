"""Exact Grover-walk engine: walk matrices, the spectral mapping from the
adjacency spectrum to the time-evolution spectrum, the periodicity
decision with exact period, and the structural identity checks used by
the feasibility analysis.

Restricted to connected regular graphs: for irregular degrees the
reflection 2d*d - I has irrational entries and the exact rational
pipeline would break, so such inputs are rejected rather than
approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    Poly,
    QuadraticNumber,
    Spectrum,
    Unresolved,
    _primes_below,
    charpoly,
    cyclotomic_sieve,
    extract_spectrum,
    int_mat_power,
    int_matmul,
    is_quadratic_algebraic_integer,
    kernel_dim,
)
from .graphs import (
    ArcSpace,
    Graph,
    arc_space,
    biadjacency,
    count_quadrangles,
    is_bipartite,
    is_connected,
    regularity,
)

DIRECT_CHECK_MAX_ARCS = 200


class NotRegularError(ValueError):
    pass


class NotConnectedError(ValueError):
    pass


class UnresolvedSpectrumError(ValueError):
    pass


class SpectrumShapeError(ValueError):
    pass


def _require_regular_connected(g: Graph) -> int:
    k = regularity(g)
    if k is None or k == 0:
        raise NotRegularError("graph is not regular (or has no edges)")
    if not is_connected(g):
        raise NotConnectedError("graph is not connected")
    return k


# ---------------------------------------------------------------------------
# walk matrices


@dataclass(frozen=True)
class WalkMatrices:
    """Shift S, discriminant T = A/k, and time evolution U = S(2d*d - I)
    over the canonical arc order.  k * U is an integer matrix; U is real
    orthogonal and S is a symmetric permutation with S^2 = I."""

    shift: tuple[tuple[int, ...], ...]
    discriminant: tuple[tuple[Fraction, ...], ...]
    time_evolution: tuple[tuple[Fraction, ...], ...]
    degree: int
    arcs: ArcSpace

    def scaled_evolution(self) -> list[list[int]]:
        """k * U as plain integers."""
        return [[int(x * self.degree) for x in row] for row in self.time_evolution]


def build_walk_matrices(g: Graph) -> WalkMatrices:
    k = _require_regular_connected(g)
    space = arc_space(g)
    m = space.size
    shift = tuple(tuple(1 if b == space.inverse_index[a] else 0 for b in range(m))
                  for a in range(m))
    # (S (2 d*d - k I))[a][b] = 2 [o(a) = t(b)] - k [b = a^-1]
    ku = [[2 * (space.arcs[a][0] == space.arcs[b][1]) - k * (b == space.inverse_index[a])
           for b in range(m)] for a in range(m)]
    u = tuple(tuple(Fraction(x, k) for x in row) for row in ku)
    t = tuple(tuple(Fraction(x, k) for x in row) for row in g.adjacency)
    ones = int_matmul(ku, [[x for x in row] for row in zip(*ku)])
    if any(ones[i][j] != (k * k if i == j else 0) for i in range(m) for j in range(m)):
        raise AssertionError("time evolution is not orthogonal")
    return WalkMatrices(shift, t, u, k, space)


# ---------------------------------------------------------------------------
# spectral mapping


@dataclass(frozen=True)
class USpectrumModel:
    """Time-evolution spectrum data derived from the vertex spectrum:
    the eigenvalue pairs e^{+-i arccos(lambda)} over the discriminant
    spectrum, plus +1 and -1 with the cycle-space multiplicities."""

    t_entries: Spectrum | None
    m_plus: int
    m_minus: int
    u_charpoly: Poly


def u_charpoly_via_mapping(adj_charpoly: Poly, k: int, edges: int, vertices: int,
                           ker_dim_t_plus_i: int) -> Poly:
    """Characteristic polynomial of the time evolution from the adjacency
    characteristic polynomial of a connected k-regular graph.

    Every discriminant eigenvalue t other than +-1 contributes the factor
    x^2 - 2tx + 1 (the conjugate unit-circle pair); t = +1 and t = -1
    contribute single factors (x - 1) and (x + 1) since the pair
    degenerates there; the flat +-1 eigenspaces add (x-1)^(E-V+1) and
    (x+1)^(E-V+ker).  Total degree is forced to 2E.
    """
    if adj_charpoly.degree() != vertices:
        raise ValueError("adjacency charpoly degree does not match vertex count")
    # monic discriminant polynomial p(t) = p_A(k t) / k^n
    p_t = adj_charpoly.scale_arg(k) * Fraction(1, k ** vertices)
    g = p_t.exact_div(Poly([-1, 1]))
    for _ in range(ker_dim_t_plus_i):
        g = g.exact_div(Poly([1, 1]))
    if g.degree() >= 1 and (g(Fraction(1)) == 0 or g(Fraction(-1)) == 0):
        raise ValueError("leftover unit eigenvalue: inconsistent inputs")
    # substitute t = (x^2+1)/(2x) and clear denominators: each root t of g
    # becomes the conjugate pair of roots of x^2 - 2tx + 1
    dg = g.degree()
    x2p1 = Poly([1, 0, 1])
    acc = Poly.zero()
    pw = Poly.one()
    for i in range(dg + 1):
        term = g.coeffs[i] * pw * (2 ** (dg - i))
        acc = acc + term.shift_up(dg - i)
        pw = pw * x2p1
    m_plus = edges - vertices + 1
    m_minus = edges - vertices + ker_dim_t_plus_i
    if m_plus < 0 or m_minus < 0:
        raise ValueError("negative flat multiplicity: inconsistent inputs")
    out = Poly([-1, 1]) ** (1 + m_plus) * Poly([1, 1]) ** (ker_dim_t_plus_i + m_minus) * acc
    if out.degree() != 2 * edges:
        raise ValueError(
            f"mapped charpoly has degree {out.degree()}, expected {2 * edges}")
    return out


def u_spectrum_model(g: Graph) -> USpectrumModel:
    k = _require_regular_connected(g)
    adj = [list(row) for row in g.adjacency]
    p_a = charpoly(adj)
    shifted = [[adj[i][j] + (k if i == j else 0) for j in range(g.n)] for i in range(g.n)]
    ker = kernel_dim(shifted)
    u_poly = u_charpoly_via_mapping(p_a, k, g.edge_count, g.n, ker)
    spec = extract_spectrum(p_a)
    t_entries = spec.scaled(Fraction(1, k)) if isinstance(spec, Spectrum) else None
    return USpectrumModel(
        t_entries=t_entries,
        m_plus=g.edge_count - g.n + 1,
        m_minus=g.edge_count - g.n + ker,
        u_charpoly=u_poly,
    )


# ---------------------------------------------------------------------------
# periodicity


@dataclass(frozen=True)
class Periodic:
    period: int
    cyclotomic_orders: tuple[tuple[int, int], ...]

    def orders_dict(self) -> dict[int, int]:
        return dict(self.cyclotomic_orders)

    def render(self) -> str:
        orders = ",".join(str(d) for d, _ in self.cyclotomic_orders)
        return f"PERIODIC period={self.period} orders={{{orders}}}"


@dataclass(frozen=True)
class NotPeriodic:
    witness: QuadraticNumber | None
    residual: Poly | None

    def render(self) -> str:
        if self.witness is not None:
            return f"NOT PERIODIC witness={self.witness}"
        return f"NOT PERIODIC residual={self.residual}"


PeriodicityVerdict = Periodic | NotPeriodic


def decide_periodic(g: Graph, cross_check: bool | None = None) -> PeriodicityVerdict:
    """Decide periodicity of the Grover walk on a connected regular graph.

    The complete decision path divides every cyclotomic factor out of the
    mapped time-evolution charpoly: the walk is periodic iff nothing is
    left, and the period is the lcm of the cyclotomic orders.  When the
    vertex spectrum resolves into quadratic surds, a violation of the
    algebraic-integer condition on 2*lambda gives a fast negative
    certificate with a witness eigenvalue.  For small instances the
    mapped polynomial is cross-checked against the directly computed one.
    """
    k = _require_regular_connected(g)
    model = u_spectrum_model(g)
    if cross_check is None:
        cross_check = 2 * g.edge_count <= DIRECT_CHECK_MAX_ARCS
    if cross_check:
        if 2 * g.edge_count > DIRECT_CHECK_MAX_ARCS:
            raise ValueError("direct cross-check limited to 200 arcs")
        wm = build_walk_matrices(g)
        direct = charpoly([list(row) for row in wm.time_evolution])
        if direct != model.u_charpoly:
            raise AssertionError("spectral mapping disagrees with direct charpoly")
    if model.t_entries is not None:
        for t_eig in model.t_entries.values():
            if not is_quadratic_algebraic_integer(t_eig * 2):
                return NotPeriodic(witness=t_eig, residual=None)
    sieve = cyclotomic_sieve(model.u_charpoly)
    if sieve.full:
        return Periodic(period=sieve.order_lcm(), cyclotomic_orders=sieve.orders)
    return NotPeriodic(witness=None, residual=sieve.residual)


def period_oracle(g: Graph, tau_max: int = 2 * math.lcm(*range(1, 25))) -> int | None:
    """Smallest tau <= tau_max with U^tau = I, by exact iteration.

    Residues of (kU)^tau modulo two fixed primes screen the candidates;
    every candidate is then verified exactly over the integers, so the
    result does not depend on the prime choice.  Test oracle only.
    """
    k = _require_regular_connected(g)
    if 2 * g.edge_count > DIRECT_CHECK_MAX_ARCS:
        raise ValueError("period oracle limited to 200 arcs")
    ku = build_walk_matrices(g).scaled_evolution()
    m = len(ku)
    pmax = math.isqrt(2 ** 62 // max(m, 1))  # residue dot products fit int64
    prime_gen = _primes_below(pmax)
    screens = []
    for _ in range(2):
        p = next(prime_gen)
        base = np.array([[x % p for x in row] for row in ku], dtype=np.int64)
        screens.append({"p": p, "base": base, "power": base.copy(), "kpow": k % p})
    eye = np.eye(m, dtype=np.int64)
    for tau in range(1, tau_max + 1):
        if tau > 1:
            for s in screens:
                s["power"] = (s["power"] @ s["base"]) % s["p"]
                s["kpow"] = (s["kpow"] * k) % s["p"]
        if all(np.array_equal(s["power"], (s["kpow"] * eye) % s["p"]) for s in screens):
            exact = int_mat_power(ku, tau)
            scale = k ** tau
            if all(exact[i][j] == (scale if i == j else 0)
                   for i in range(m) for j in range(m)):
                return tau
    return None


def eigenvalue_gate(k: int, theta: QuadraticNumber) -> bool:
    """Admissibility of a second-largest eigenvalue for a periodic
    bipartite regular graph with four or five distinct eigenvalues.

    Replays the algebraic-integer argument: 2*theta/k must be an
    algebraic integer in the open interval (0, 2); a rational value is
    then forced to 1 and an irrational one to sqrt(2) or sqrt(3); theta
    itself must be an algebraic integer, which forces k even.
    """
    if k < 1:
        raise ValueError("degree must be positive")
    if not isinstance(theta, QuadraticNumber):
        theta = QuadraticNumber(theta)
    if theta.sign() <= 0:
        raise ValueError("theta must be positive")
    ratio = theta * 2 / k
    if not (QuadraticNumber(0) < ratio < QuadraticNumber(2)):
        return False
    if not is_quadratic_algebraic_integer(ratio):
        return False
    if ratio.is_rational:
        if ratio != QuadraticNumber(1):
            return False
    elif ratio.a != 0:
        # eigenvalues with rational square are pure surds
        return False
    return is_quadratic_algebraic_integer(theta)


# ---------------------------------------------------------------------------
# structural checks


def walk_regularity_check(g: Graph, r_max: int | None = None) -> bool:
    """True iff diag(A^r) is constant for all 2 <= r <= r_max (default 2n)."""
    if r_max is None:
        r_max = 2 * g.n
    if r_max < 2:
        raise ValueError("r_max must be at least 2")
    adj = [list(row) for row in g.adjacency]
    power = adj
    for _ in range(2, r_max + 1):
        power = int_matmul(power, adj)
        diag = [power[i][i] for i in range(g.n)]
        if any(d != diag[0] for d in diag):
            return False
    return True


def _distinct_minus_top(spec: Spectrum, k: int) -> Poly:
    """Product of (x - lambda) over the distinct eigenvalues other than k,
    with conjugate surd pairs merged into rational quadratics."""
    out = Poly.one()
    top = QuadraticNumber(k)
    seen: set[QuadraticNumber] = set()
    for value in spec.values():
        if value == top or value in seen:
            continue
        if value.is_rational:
            out = out * Poly([-value.a, 1])
        else:
            conj = value.conjugate()
            norm = value.a * value.a - value.b * value.b * value.m
            out = out * Poly([norm, -2 * value.a, 1])
            seen.add(conj)
        seen.add(value)
    return out


def hoffman_check(g: Graph) -> bool:
    """Exact check of q(A) = (q(k)/n) J with q the product of (x - lambda)
    over the distinct non-principal eigenvalues.  Holds exactly for
    connected regular graphs; fails when the graph is disconnected."""
    k = regularity(g)
    if k is None or k == 0:
        raise NotRegularError("graph is not regular (or has no edges)")
    spec = extract_spectrum(charpoly([list(r) for r in g.adjacency]))
    if isinstance(spec, Unresolved):
        raise UnresolvedSpectrumError(f"spectrum did not resolve: {spec.residual}")
    q = _distinct_minus_top(spec, k)
    # integer Horner after clearing denominators keeps the matmuls fast
    denom = math.lcm(*(c.denominator for c in q.coeffs))
    coeffs = [int(c * denom) for c in q.coeffs]
    adj = [list(row) for row in g.adjacency]
    acc = [[coeffs[-1] if i == j else 0 for j in range(g.n)] for i in range(g.n)]
    for c in reversed(coeffs[:-1]):
        acc = int_matmul(acc, adj)
        for i in range(g.n):
            acc[i][i] += c
    scale = Fraction(sum(c * k ** i for i, c in enumerate(coeffs)), g.n)
    return all(acc[i][j] == scale for i in range(g.n) for j in range(g.n))


@dataclass(frozen=True)
class QuadrangleReport:
    """Quadrangle counts read off the spectrum (exact rationals), with the
    optional brute-force count and per-vertex constancy when the graph is
    available."""

    q_spectral: Fraction
    qx_spectral: Fraction
    q_brute: int | None
    per_vertex_constant: bool | None


def quadrangle_report(spectrum: Spectrum, n: int, k: int,
                      g: Graph | None = None) -> QuadrangleReport:
    """Quadrangle count from the fourth power sum: the closed 4-walks of a
    k-regular graph split into 2k^2 - k degenerate walks per vertex plus
    two traversals of each quadrangle through it."""
    if spectrum.dimension() != n:
        raise ValueError("spectrum multiplicities do not sum to n")
    s4 = spectrum.power_sum(4)
    q_spectral = (s4 - n * (2 * k * k - k)) / 8
    qx_spectral = 4 * q_spectral / n
    q_brute: int | None = None
    constant: bool | None = None
    if g is not None:
        q_brute, per_vertex = count_quadrangles(g)
        constant = all(c == per_vertex[0] for c in per_vertex)
    return QuadrangleReport(q_spectral, qx_spectral, q_brute, constant)


def _five_eig_shape(spec: Spectrum, k: int) -> tuple[QuadraticNumber, int, int] | None:
    """Match {[+-k]^1, [+-theta]^a, [0]^b} with a >= 1, b >= 0; returns
    (theta, a, b) or None."""
    top = QuadraticNumber(k)
    if spec.multiplicity(top) != 1 or spec.multiplicity(-top) != 1:
        return None
    b = spec.multiplicity(QuadraticNumber(0))
    others = [(v, m) for v, m in spec.entries
              if v not in (top, -top) and v.sign() != 0]
    if len(others) != 2:
        return None
    (hi, a1), (lo, a2) = others
    if hi != -lo or a1 != a2:
        return None
    theta = hi if hi.sign() > 0 else lo
    return theta, a1, b


def verify_biadjacency_identities(g: Graph) -> bool:
    """Exact block identities on the biadjacency matrix N of a connected
    bipartite regular graph whose spectrum is {[+-k]^1, [+-theta]^a} or
    {[+-k]^1, [+-theta]^a, [0]^b}:

    four eigenvalues:  N N^T       = theta^2 I + (2(k^2 - theta^2)/n) J
    five eigenvalues:  N N^T N     = theta^2 N + (2k/n)(k^2 - theta^2) J
    """
    k = _require_regular_connected(g)
    split = is_bipartite(g)
    if split is None:
        raise SpectrumShapeError("graph is not bipartite")
    spec = extract_spectrum(charpoly([list(r) for r in g.adjacency]))
    if isinstance(spec, Unresolved):
        raise UnresolvedSpectrumError(f"spectrum did not resolve: {spec.residual}")
    shape = _five_eig_shape(spec, k)
    if shape is None:
        raise SpectrumShapeError(f"spectrum {spec} is not of the 4/5-eigenvalue form")
    theta, _, b = shape
    theta_sq = (theta * theta).as_fraction()
    n = g.n
    nmat = biadjacency(g, split)
    nnt = int_matmul(nmat, [list(r) for r in zip(*nmat)])
    half = n // 2
    if b == 0:
        const = Fraction(2 * (k * k - theta_sq), n)
        return all(nnt[i][j] == (theta_sq if i == j else 0) + const
                   for i in range(half) for j in range(half))
    lhs = int_matmul(nnt, nmat)
    const = Fraction(2 * k, n) * (k * k - theta_sq)
    return all(lhs[i][j] == theta_sq * nmat[i][j] + const
               for i in range(half) for j in range(half))
