"""Quantum orthogonal planes as quadratic rewriting systems.

Relations come from the antisymmetric projector: each row of P_A applied
to x (x) x must vanish.  Row reduction with increasing pairs as pivot
columns turns the row space into one rewrite rule per pair x^a x^b (a < b),
with right-hand sides supported on weakly decreasing words.  The diamond
lemma on triple overlaps certifies confluence, so weakly decreasing words
form a monomial basis and normal forms decide ideal membership.

Words are plain tuples of generator indices; the empty tuple is the unit.
"""

from .errors import BadN, QorthoError, RankMismatch
from .linalg import unpack
from .rmatrix import build_projectors
from .scalars import Scalar, bar as bar_scalar

_REDUCE_BUDGET = 100_000


class NCPoly:
    """Noncommutative polynomial: map word -> Scalar, zero terms dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {tuple(w): v for w, v in (terms or {}).items()
                      if not v.is_zero()}

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def const(c):
        return NCPoly({(): c})

    @staticmethod
    def gen(a):
        return NCPoly({(a,): Scalar.one()})

    @staticmethod
    def word(w, coeff=None):
        return NCPoly({tuple(w): coeff if coeff is not None else Scalar.one()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, v in other.terms.items():
            s = out.get(w)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NCPoly(out)

    def __neg__(self):
        return NCPoly({w: -v for w, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    s = out.get(w)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = s
            return NCPoly(out)
        return NCPoly({w: v * other for w, v in self.terms.items()})

    def __rmul__(self, other):
        # scalar * poly; scalars commute with coefficients
        return NCPoly({w: other * v for w, v in self.terms.items()})

    def sorted_terms(self):
        """Canonical order: degree, then lexicographic on words."""
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "".join(f"x{a}" for a in w) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<NCPoly {self}>"


def _measure(word, letter_rules):
    # (degree, letters that still carry a letter rule, reversed index order)
    return (len(word), sum(1 for l in word if l in letter_rules),
            tuple(-l for l in word))


def _reduce_spot(word, pair_rules, letter_rules):
    for i, l in enumerate(word):
        if l in letter_rules:
            return i, 1, letter_rules[l]
        if i + 1 < len(word) and (l, word[i + 1]) in pair_rules:
            return i, 2, pair_rules[(l, word[i + 1])]
    return None


def _normalize_terms(terms, pair_rules, letter_rules, budget=None):
    out = {}
    work = dict(terms)
    while work:
        w = min(work)
        c = work.pop(w)
        if c.is_zero():
            continue
        spot = _reduce_spot(w, pair_rules, letter_rules)
        if spot is None:
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
            continue
        if budget is not None:
            budget -= 1
            if budget < 0:
                raise QorthoError("rewriting exceeded the step budget")
        i, span, rep = spot
        for w2, c2 in rep.terms.items():
            nw = w[:i] + w2 + w[i + span:]
            nc = c * c2
            s = work.get(nw)
            s = nc if s is None else s + nc
            if s.is_zero():
                work.pop(nw, None)
            else:
                work[nw] = s
    return out


class RewriteSystem:
    """Quadratic rules x^a x^b -> lower terms (a < b), plus optional
    generator substitutions x^a -> poly used by the quotient embeddings.

    Construction completes the system (right-hand sides are re-normalized
    against the full rule set, at most 10 passes) and then certifies that
    every rule strictly decreases the termination measure."""

    __slots__ = ("N", "pair_rules", "letter_rules", "confluent")

    def __init__(self, N, pair_rules, letter_rules=None):
        if not isinstance(N, int) or N < 1:
            raise BadN(f"width must be a positive integer, got {N!r}")
        self.N = N
        pair_rules = dict(pair_rules)
        letter_rules = dict(letter_rules or {})
        for (a, b) in pair_rules:
            if not (1 <= a < b <= N):
                raise ValueError(f"pair rule key must satisfy 1 <= a < b <= N: {(a, b)}")
        for a in letter_rules:
            if not (1 <= a <= N):
                raise ValueError(f"letter rule key out of range: {a}")
        for _ in range(10):
            changed = False
            for key, rhs in list(pair_rules.items()):
                nf = NCPoly(_normalize_terms(rhs.terms, pair_rules, letter_rules,
                                             budget=_REDUCE_BUDGET))
                if nf != rhs:
                    pair_rules[key] = nf
                    changed = True
            for key, rhs in list(letter_rules.items()):
                nf = NCPoly(_normalize_terms(rhs.terms, pair_rules, letter_rules,
                                             budget=_REDUCE_BUDGET))
                if nf != rhs:
                    letter_rules[key] = nf
                    changed = True
            if not changed:
                break
        else:
            raise QorthoError("rule completion did not stabilize in 10 passes")
        for key, rhs in pair_rules.items():
            bound = _measure(key, letter_rules)
            for w in rhs.terms:
                if not _measure(w, letter_rules) < bound:
                    raise QorthoError(f"rule {key} does not decrease the "
                                      f"termination measure at {w}")
        for a, rhs in letter_rules.items():
            bound = _measure((a,), letter_rules)
            for w in rhs.terms:
                if not _measure(w, letter_rules) < bound:
                    raise QorthoError(f"rule x{a} does not decrease the "
                                      f"termination measure at {w}")
        self.pair_rules = pair_rules
        self.letter_rules = letter_rules
        self.confluent = "unchecked"

    def __repr__(self):
        return (f"<RewriteSystem N={self.N} rules={len(self.pair_rules)}"
                f"+{len(self.letter_rules)} confluent={self.confluent!r}>")


def normal_form(p, rs):
    """Rewrite p to its normal form (leftmost redex first).  Terminates for
    every constructed system: each step strictly decreases the measure."""
    for w in p.terms:
        if any(l < 1 or l > rs.N for l in w):
            raise ValueError(f"word {w} uses letters outside 1..{rs.N}")
    return NCPoly(_normalize_terms(p.terms, rs.pair_rules, rs.letter_rules))


def plane_relations(N):
    """Rewrite rules of the N-generator quantum orthogonal plane, one per
    increasing pair, derived from the rows of P_A."""
    if not isinstance(N, int) or N < 3:
        raise BadN(f"plane relations need integer N >= 3, got {N!r}")
    _, PA, _, _ = build_projectors(N)
    inc = [(a, b) for a in range(1, N + 1) for b in range(a + 1, N + 1)]
    rest = [(a, b) for a in range(1, N + 1) for b in range(1, a + 1)]
    cols = inc + rest
    colpos = {pair: k for k, pair in enumerate(cols)}

    rows = {}
    for (r, c), v in PA.entries.items():
        rows.setdefault(r, {})[colpos[unpack(c, N, 2)]] = v
    basis = []  # (pivot position, row dict with pivot coefficient 1)
    for r in sorted(rows):
        vec = dict(rows[r])
        for piv, brow in basis:
            coef = vec.get(piv)
            if coef is None or coef.is_zero():
                continue
            for k, v in brow.items():
                s = vec.get(k, Scalar.zero()) - coef * v
                if s.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = s
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        if not vec:
            continue
        piv = min(vec)
        inv = vec[piv].inv()
        vec = {k: inv * v for k, v in vec.items()}
        for _, brow in basis:
            coef = brow.get(piv)
            if coef is None:
                continue
            for k, v in vec.items():
                s = brow.get(k, Scalar.zero()) - coef * v
                if s.is_zero():
                    brow.pop(k, None)
                else:
                    brow[k] = s
        basis.append((piv, vec))

    pivots = {cols[piv] for piv, _ in basis}
    if pivots != set(inc):
        raise RankMismatch(f"P_A pivots {sorted(pivots)} are not the "
                           f"increasing pairs for N={N}")
    rules = {}
    for piv, vec in basis:
        rhs = NCPoly({cols[k]: -v for k, v in vec.items() if k != piv})
        rules[cols[piv]] = rhs
    return RewriteSystem(N, rules)


def check_confluence(rs):
    """Diamond lemma on overlaps.  For words x^a x^b x^c with both (a,b)
    and (b,c) rules, the two one-step reducts must share a normal form;
    generator substitutions overlapping a pair rule are checked the same
    way.  Returns (True, None) or (False, witness) and records the status."""
    def nf(p):
        return normal_form(p, rs)

    for (a, b), rhs_ab in sorted(rs.pair_rules.items()):
        for c in range(b + 1, rs.N + 1):
            rhs_bc = rs.pair_rules.get((b, c))
            if rhs_bc is None:
                continue
            left = nf(rhs_ab * NCPoly.gen(c))
            right = nf(NCPoly.gen(a) * rhs_bc)
            if left != right:
                witness = {"overlap": [a, b, c],
                           "left": str(left), "right": str(right)}
                rs.confluent = ("no", witness)
                return False, witness
    for (a, b), rhs_ab in sorted(rs.pair_rules.items()):
        for pos, l in enumerate((a, b)):
            sub = rs.letter_rules.get(l)
            if sub is None:
                continue
            one_step = (sub * NCPoly.gen(b)) if pos == 0 else (NCPoly.gen(a) * sub)
            left = nf(one_step)
            right = nf(rhs_ab)
            if left != right:
                witness = {"overlap": [a, b], "letter": l,
                           "left": str(left), "right": str(right)}
                rs.confluent = ("no", witness)
                return False, witness
    rs.confluent = "yes"
    return True, None


def conj_poly(p, K, regime):
    """Antilinear anti-multiplicative extension of x* = K x: coefficients
    are conjugated, generators mapped through K, word order reversed."""
    images = {}
    for a in range(1, K.dim + 1):
        images[a] = NCPoly({(b,): K.get(a, b) for b in range(1, K.dim + 1)
                            if not K.get(a, b).is_zero()})
    out = NCPoly.zero()
    for w, c in p.terms.items():
        term = NCPoly.const(bar_scalar(c, regime))
        for l in reversed(w):
            term = term * images[l]
        out = out + term
    return out


def check_star_consistency(rs, K, regime):
    """The conjugation must be an involution on generators and must map
    every defining relation into the relation ideal (normal form zero)."""
    for a in range(1, rs.N + 1):
        g = NCPoly.gen(a)
        if conj_poly(conj_poly(g, K, regime), K, regime) != g:
            return False
    for (a, b), rhs in rs.pair_rules.items():
        rel = NCPoly.word((a, b)) - rhs
        if not normal_form(conj_poly(rel, K, regime), rs).is_zero():
            return False
    return True


def quotient_check(sign, n_from=4, include_scaling=True):
    """Embed the three-generator plane into the N=4 plane modulo x3 = (+-)x2.

    The substitution is y1 -> x1, y2 -> t*x2 (i*t*x2 for the minus sign,
    with t*t = s + 1/s), y3 -> x4; every three-generator relation must
    normalize to zero in the quotient system.  With include_scaling False
    the t factor is dropped, which is the documented failure mode."""
    if n_from != 4:
        raise BadN("the quotient embedding is defined from the N=4 plane")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    base = plane_relations(4)
    sub = NCPoly({(2,): Scalar.from_frac(sign)})
    ext = RewriteSystem(4, base.pair_rules, {3: sub})
    ok, _ = check_confluence(ext)
    if not ok:
        return False
    scale = Scalar.t_unit() if include_scaling else Scalar.one()
    if sign == -1:
        scale = Scalar.i_unit() * scale
    images = {1: NCPoly.gen(1), 2: NCPoly({(2,): scale}), 3: NCPoly.gen(4)}
    for (a, b), rhs in plane_relations(3).pair_rules.items():
        rel = NCPoly.word((a, b)) - rhs
        mapped = NCPoly.zero()
        for w, c in rel.terms.items():
            term = NCPoly.const(c)
            for l in w:
                term = term * images[l]
            mapped = mapped + term
        if not normal_form(mapped, ext).is_zero():
            return False
    return True


def rules_json(rs):
    """Rule dump: [{"lhs": [a, b], "rhs": [{"word": [...], "coeff": "..."}]}]."""
    out = []
    for (a, b), rhs in sorted(rs.pair_rules.items()):
        out.append({"lhs": [a, b],
                    "rhs": [{"word": list(w), "coeff": str(c)}
                            for w, c in rhs.sorted_terms()]})
    return out
