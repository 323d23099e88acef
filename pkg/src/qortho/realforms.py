"""Automorphism matrices, star-structure checks, and real-form labels.

The involutive Hopf automorphisms T -> D T D^-1 come in three families:
the canonical D (a permutation for even N, a middle-sign flip for odd N),
the real diagonal family D' (entries +-1, symmetric under the prime map,
middle entries forced to +1), and for even N the imaginary family
D'' = i diag(eps) with eps antisymmetric under the prime map.  Composing
them with the base conjugations (star for q real, cross for |q| = 1)
produces every real form; the classical-limit signature of the invariant
metric, or the SO* criterion, labels each one.
"""

import itertools
from fractions import Fraction

from .errors import (
    BadFamily, BadN, ConditionFailed, IdentityFailed, NoPlaneConjugation,
    NotInvolution, Unclassifiable, WitnessNotAutomorphism,
)
from .linalg import (
    SqMat, antilinear_fixed_basis, bar_mat, classical_mat, inverse,
    kron_embed, signature,
)
from .rmatrix import GroupShape, build_metric, build_R
from .scalars import ConjRegime, GaussRat, Scalar

STAR = "star"
CROSS = "cross"


class AutoMatrix:
    """A D-type matrix with its family tag and square sign."""

    __slots__ = ("family", "N", "eps", "mat", "square_sign")

    def __init__(self, family, N, eps, mat, square_sign):
        self.family = family
        self.N = N
        self.eps = eps
        self.mat = mat
        self.square_sign = square_sign

    def tag(self):
        if self.family == "canonical":
            return "canonical"
        signs = "".join("+" if e > 0 else "-" for e in self.eps)
        return f"{self.family}:{signs}"

    def __eq__(self, other):
        if not isinstance(other, AutoMatrix):
            return NotImplemented
        return (self.family, self.N, self.eps, self.mat) == \
               (other.family, other.N, other.eps, other.mat)

    def __repr__(self):
        return f"<AutoMatrix {self.tag()} N={self.N}>"


def canonical_D(N):
    """Even N: permutation exchanging n and n+1; odd N: diagonal with a
    single -1 at the middle index.  Squares to +1."""
    shape = GroupShape(N)
    one = Scalar.one()
    if shape.odd:
        entries = {(a, a): (-one if a == shape.n2 else one)
                   for a in range(1, N + 1)}
    else:
        n = shape.n
        entries = {(a, a): one for a in range(1, N + 1)
                   if a not in (n, n + 1)}
        entries[(n, n + 1)] = one
        entries[(n + 1, n)] = one
    return AutoMatrix("canonical", N, None, SqMat(N, entries), +1)


def _dprime(N, eps):
    shape = GroupShape(N)
    if len(eps) != N or any(e not in (1, -1) for e in eps):
        raise BadFamily(f"eps must be a length-{N} sign vector")
    for j in range(1, N + 1):
        if eps[j - 1] != eps[shape.prime(j) - 1]:
            raise BadFamily(f"dprime requires eps_j = eps_j' (j={j})")
    if shape.odd:
        if eps[shape.n2 - 1] != 1:
            raise BadFamily("dprime middle entry must be +1")
    elif eps[shape.n - 1] != 1 or eps[shape.n] != 1:
        raise BadFamily("dprime entries n and n+1 must be +1")
    mat = SqMat(N, {(a, a): Scalar.from_frac(eps[a - 1]) for a in range(1, N + 1)})
    return AutoMatrix("dprime", N, tuple(eps), mat, +1)


def _dsecond(N, eps):
    shape = GroupShape(N)
    if shape.odd:
        raise BadFamily("dsecond exists only for even N")
    if len(eps) != N or any(e not in (1, -1) for e in eps):
        raise BadFamily(f"eps must be a length-{N} sign vector")
    for j in range(1, N + 1):
        if eps[j - 1] != -eps[shape.prime(j) - 1]:
            raise BadFamily(f"dsecond requires eps_j = -eps_j' (j={j})")
    if eps[shape.n - 1] != 1 or eps[shape.n] != -1:
        raise BadFamily("dsecond must have eps_n = 1, eps_n+1 = -1")
    i = Scalar.i_unit()
    mat = SqMat(N, {(a, a): i * Scalar.from_frac(eps[a - 1]) for a in range(1, N + 1)})
    return AutoMatrix("dsecond", N, tuple(eps), mat, -1)


def dsecond_canonical(N):
    """D''_1 = i diag(1, ..., 1, -1, ..., -1)."""
    n = GroupShape(N).n
    return _dsecond(N, (1,) * n + (-1,) * n)


def enumerate_autos(N, family):
    """Full family in lexicographic sign order (+ before -)."""
    shape = GroupShape(N)
    n = shape.n
    if family == "canonical":
        return [canonical_D(N)]
    if family == "dprime":
        free = n if shape.odd else n - 1
        out = []
        for signs in itertools.product((1, -1), repeat=free):
            eps = [0] * N
            for j, e in enumerate(signs, start=1):
                eps[j - 1] = e
                eps[shape.prime(j) - 1] = e
            if shape.odd:
                eps[shape.n2 - 1] = 1
            else:
                eps[n - 1] = eps[n] = 1
            out.append(_dprime(N, tuple(eps)))
        return out
    if family == "dsecond":
        if shape.odd:
            raise BadFamily("dsecond exists only for even N")
        out = []
        for signs in itertools.product((1, -1), repeat=n - 1):
            eps = [0] * N
            for j, e in enumerate(signs, start=1):
                eps[j - 1] = e
                eps[shape.prime(j) - 1] = -e
            eps[n - 1] = 1
            eps[n] = -1
            out.append(_dsecond(N, tuple(eps)))
        return out
    raise BadFamily(f"unknown family {family!r}")


def auto_from_signs(N, family, signs):
    """Family member from a full-length +- sign string."""
    eps = tuple(1 if ch == "+" else -1 for ch in signs)
    if family == "dprime":
        return _dprime(N, eps)
    if family == "dsecond":
        return _dsecond(N, eps)
    raise BadFamily(f"unknown family {family!r}")


class ConjugationSpec:
    """Base conjugation, ordered automorphism list, deformation regime."""

    __slots__ = ("base", "autos", "regime")

    def __init__(self, base, autos, regime):
        if base not in (STAR, CROSS):
            raise ValueError(f"base must be star or cross, got {base!r}")
        expected = ConjRegime.REAL_Q if base == STAR else ConjRegime.UNIT_MODULUS_Q
        if regime is not expected:
            raise ValueError(f"{base} requires regime {expected.value}")
        self.base = base
        self.autos = list(autos)
        self.regime = regime

    def composed(self, N):
        G = SqMat.identity(N)
        for a in self.autos:
            if a.N != N:
                raise BadN(f"automorphism built for N={a.N}, spec needs {N}")
            G = G * a.mat
        return G

    def to_json(self):
        return {"base": self.base,
                "autos": [a.tag() for a in self.autos],
                "regime": self.regime.value}

    def __repr__(self):
        autos = ",".join(a.tag() for a in self.autos) or "none"
        return f"<ConjugationSpec {self.base};{autos};{self.regime.value}>"


class RealFormLabel:

    __slots__ = ("kind", "l", "m", "regime")

    def __init__(self, kind, l, m, regime):
        self.kind = kind
        self.l = l
        self.m = m
        self.regime = regime

    @staticmethod
    def so(p, m, regime):
        # SO(l, m) and SO(m, l) are the same group; print larger count first
        return RealFormLabel("so", max(p, m), min(p, m), regime)

    @staticmethod
    def sostar(N, regime):
        return RealFormLabel("sostar", N, None, regime)

    @property
    def signature(self):
        return (self.l, self.m) if self.kind == "so" else None

    def __eq__(self, other):
        if not isinstance(other, RealFormLabel):
            return NotImplemented
        return (self.kind, self.l, self.m, self.regime) == \
               (other.kind, other.l, other.m, other.regime)

    def __str__(self):
        if self.kind == "so":
            return f"SO({self.l},{self.m})"
        return f"SO*({self.l})"

    def __repr__(self):
        return f"<RealFormLabel {self}>"


def _first_diff(X, Y):
    for r, c in sorted(set(X.entries) | set(Y.entries)):
        xv, yv = X.get(r, c), Y.get(r, c)
        if xv != yv:
            return {"row": r, "col": c, "lhs": str(xv), "rhs": str(yv)}
    return None


def check_auto_conditions(Dm, N):
    """Verify R D1 D2 = D2 D1 R, D^t C D = C = D C D^t, and D^2 = +-1.

    Returns a certificate dict recording the square sign; raises
    ConditionFailed with the first offending entry otherwise."""
    mat = Dm.mat if isinstance(Dm, AutoMatrix) else Dm
    C = build_metric(N)
    for X in (mat.transpose() * C * mat, mat * C * mat.transpose()):
        if X != C:
            raise ConditionFailed("DCD", _first_diff(X, C))
    R = build_R(N)
    D1 = kron_embed(mat, 1, N, 2)
    D2 = kron_embed(mat, 2, N, 2)
    lhs = R * D1 * D2
    rhs = D2 * D1 * R
    if lhs != rhs:
        raise ConditionFailed("RDD", _first_diff(lhs, rhs))
    sq = mat * mat
    if sq == SqMat.identity(N):
        sign = +1
    elif sq == -SqMat.identity(N):
        sign = -1
    else:
        raise ConditionFailed("square", _first_diff(sq, SqMat.identity(N)))
    return {"RDD": True, "DCD": True, "square_sign": sign}


def check_reality(Dm, base, N):
    """Reality condition matching the base conjugation: cross needs
    bar(D) = D with D^2 = 1 or bar(D) = -D with D^2 = -1; star needs
    bar(D) = C^t D C^t."""
    mat = Dm.mat if isinstance(Dm, AutoMatrix) else Dm
    barD = bar_mat(mat, ConjRegime.REAL_Q)  # entries are constants
    sq = mat * mat
    if base == CROSS:
        I = SqMat.identity(N)
        return (barD == mat and sq == I) or (barD == -mat and sq == -I)
    if base == STAR:
        C = build_metric(N)
        return barD == C.transpose() * mat * C.transpose()
    raise ValueError(f"base must be star or cross, got {base!r}")


def plane_conjugation_matrix(spec, N):
    """K with x* = K x on the quantum plane: C^t G for star, G for cross;
    exists only when the composed automorphism G squares to +1."""
    G = spec.composed(N)
    if G * G != SqMat.identity(N):
        raise NoPlaneConjugation("composed automorphism does not square to +1")
    if spec.base == STAR:
        return build_metric(N).transpose() * G
    return G


_UNITS = (Scalar.one(), -Scalar.one(), Scalar.i_unit(), -Scalar.i_unit())


def _match_up_to_unit(X, Y):
    """Unit scalar lam with X = lam * Y, or None."""
    if X.dim != Y.dim or set(X.entries) != set(Y.entries):
        return None
    if X.is_zero():
        return Scalar.one()
    key = min(X.entries)
    ratio = X.entries[key] / Y.entries[key]
    for lam in _UNITS:
        if ratio == lam:
            return lam if X == lam * Y else None
    return None


def _dsecond_from(G, N):
    """Recognize G (or -G) as a dsecond family member; None otherwise."""
    shape = GroupShape(N)
    if shape.odd or len(G.entries) != N:
        return None
    i_unit = GaussRat(0, 1)
    eps = []
    for a in range(1, N + 1):
        v = G.get(a, a).as_gauss()
        if v is None:
            return None
        e = v / i_unit
        if e == GaussRat(1):
            eps.append(1)
        elif e == GaussRat(-1):
            eps.append(-1)
        else:
            return None
    if eps[shape.n - 1] == -1:
        eps = [-e for e in eps]
    try:
        return _dsecond(N, tuple(eps))
    except BadFamily:
        return None


def classify(spec, N):
    """Real-form label of a conjugation: classical-limit signature of the
    invariant metric in a real basis, or SO*(2n) for the imaginary family."""
    I = SqMat.identity(N)
    G = spec.composed(N)
    G2 = G * G
    if G2 == I:
        K = plane_conjugation_matrix(spec, N)
        if K * bar_mat(K, spec.regime) != I:
            raise NotInvolution("K bar(K) != I at generic q")
        K1 = classical_mat(K)
        M = antilinear_fixed_basis(K1, spec.regime)
        Minv = inverse(M)
        S = Minv.transpose() * classical_mat(build_metric(N)) * Minv
        p, m = signature(S)
        return RealFormLabel.so(p, m, spec.regime)
    if G2 == -I and spec.base == STAR:
        dsec = _dsecond_from(G, N)
        if dsec is not None and check_sostar(N, dsec):
            return RealFormLabel.sostar(N, spec.regime)
    raise Unclassifiable(f"no classification branch applies to {spec!r}")


def build_mpp(N):
    """Change of basis M'' with rows (t/2)(e_j + e_j') and
    (t/2) i (e_j - e_j'), normalizing the metric at q = 1."""
    shape = GroupShape(N)
    if shape.odd:
        raise BadN("M'' exists only for even N")
    n = shape.n
    th = Scalar.t_unit() * Scalar.from_frac(Fraction(1, 2))
    ith = Scalar.i_unit() * th
    entries = {}
    for j in range(1, n + 1):
        jp = shape.prime(j)
        entries[(j, j)] = th
        entries[(j, jp)] = th
        entries[(n + j, j)] = ith
        entries[(n + j, jp)] = -ith
    return SqMat(N, entries)


def symplectic_j(N):
    n = N // 2
    one = Scalar.one()
    entries = {}
    for j in range(1, n + 1):
        entries[(j, n + j)] = one
        entries[(n + j, j)] = -one
    return SqMat(N, entries)


def check_sostar(N, Dsec, mpp=None):
    """SO*(2n) structure checks at q = 1.

    (i) the M'' basis turns the metric into the identity;
    (ii) the canonical D''_1 conjugation transports to O bar = J O J^-1,
        i.e. bar(M'') C^t D''_1 M''^-1 = J up to one global unit;
    (iii) the given D'' reduces to D''_1 through the pair-swap witness A.
    """
    shape = GroupShape(N)
    if shape.odd:
        raise BadN("SO* requires even N")
    n = shape.n
    C = build_metric(N)
    Mpp = mpp if mpp is not None else build_mpp(N)
    Minv = inverse(Mpp)
    if classical_mat(Minv.transpose() * C * Minv) != SqMat.identity(N):
        return False

    D1 = dsecond_canonical(N)
    X = classical_mat(bar_mat(Mpp, ConjRegime.REAL_Q) * C.transpose() * D1.mat * Minv)
    if _match_up_to_unit(X, symplectic_j(N)) is None:
        return False

    # pair-swap permutation sending the given eps pattern to D''_1
    one = Scalar.one()
    entries = {}
    for j in range(1, n + 1):
        jp = shape.prime(j)
        if Dsec.eps[j - 1] == -1:
            entries[(j, jp)] = one
            entries[(jp, j)] = one
        else:
            entries[(j, j)] = one
            entries[(jp, jp)] = one
    A = SqMat(N, entries)
    if A * Dsec.mat * inverse(A) != D1.mat:
        return False
    C1 = classical_mat(C)
    if A.transpose() * C1 * A != C1:
        return False
    lhs = C1.transpose() * Dsec.mat * A
    rhs = bar_mat(A, ConjRegime.REAL_Q) * C1.transpose() * D1.mat
    return _match_up_to_unit(lhs, rhs) is not None


def check_equivalence_witness(A, spec1, spec2, N, at_q1=False):
    """Verify that the automorphism alpha(T) = A T A^-1 intertwines the two
    conjugations: G1 A = lam bar(A) G2 for cross, C^t G1 A = lam bar(A) C^t G2
    for star, with lam a unit scalar.  A itself must satisfy the automorphism
    conditions (up to an overall sign of the metric identity).

    With at_q1 the identities are evaluated in the classical limit, where
    R = 1 makes the commutation trivial."""
    if spec1.base != spec2.base or spec1.regime is not spec2.regime:
        raise ValueError("witness requires specs with a common base and regime")
    regime = spec1.regime
    C = build_metric(N)
    if at_q1:
        C = classical_mat(C)
        rdd_ok = kron_embed(A, 1, N, 2) * kron_embed(A, 2, N, 2) == \
            kron_embed(A, 2, N, 2) * kron_embed(A, 1, N, 2)
    else:
        R = build_R(N)
        A1 = kron_embed(A, 1, N, 2)
        A2 = kron_embed(A, 2, N, 2)
        rdd_ok = R * A1 * A2 == A2 * A1 * R
    if not rdd_ok:
        raise WitnessNotAutomorphism("A fails the R commutation")
    X = A.transpose() * C * A
    Y = A * C * A.transpose()
    if not ((X == C and Y == C) or (X == -C and Y == -C)):
        raise WitnessNotAutomorphism("A fails the metric condition up to sign")
    G1 = spec1.composed(N)
    G2 = spec2.composed(N)
    barA = bar_mat(A, regime)
    if spec1.base == STAR:
        lhs = C.transpose() * G1 * A
        rhs = barA * C.transpose() * G2
    else:
        lhs = G1 * A
        rhs = barA * G2
    lam = _match_up_to_unit(lhs, rhs)
    if lam is None:
        raise IdentityFailed("conjugation transport identity fails",
                             _first_diff(lhs, rhs))
    return True


class CountResult:

    __slots__ = ("count", "rows", "caveat")

    def __init__(self, count, rows, caveat=None):
        self.count = count
        self.rows = rows
        self.caveat = caveat

    def __repr__(self):
        return f"<CountResult {self.count} forms>"


def _row(spec, N):
    label = classify(spec, N)
    sig = label.signature
    return {"spec": spec.to_json(), "label": str(label),
            "signature": list(sig) if sig else None}


def count_real_forms(N, regime):
    """Inequivalent conjugations with their labels.

    q real, N = 2n+1: the 2^n star conjugations twisted by D'.
    q real, N = 2n: 2^(n-1) star/D' plus 2^(n-2) sharp-twisted classes
    (the D' pairs with fully negated free signs are identified by the
    A-witness) plus 2^(n-1) SO* classes from D''.
    |q| = 1: cross alone for odd N; cross and sharp-twisted cross for even.
    """
    shape = GroupShape(N)
    specs = []
    if regime is ConjRegime.REAL_Q:
        dprimes = enumerate_autos(N, "dprime")
        for dp in dprimes:
            specs.append(ConjugationSpec(STAR, [dp], regime))
        if not shape.odd:
            D = canonical_D(N)
            for dp in dprimes:
                if dp.eps[0] == 1:  # class representative of the negated pair
                    specs.append(ConjugationSpec(STAR, [D, dp], regime))
            for ds in enumerate_autos(N, "dsecond"):
                specs.append(ConjugationSpec(STAR, [ds], regime))
    else:
        specs.append(ConjugationSpec(CROSS, [], regime))
        if not shape.odd:
            specs.append(ConjugationSpec(CROSS, [canonical_D(N)], regime))
    rows = [_row(spec, N) for spec in specs]
    caveat = ("N=8 admits outer triality automorphisms beyond these families; "
              "the table lists only the D-matrix classes" if N == 8 else None)
    return CountResult(len(rows), rows, caveat)
