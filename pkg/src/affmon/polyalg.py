"""Sparse elements of monoid algebras R[M] with exponent vectors in Z^r.

Monomials are ordered lexicographically with t_1 < t_2 < ... < t_r: the
exponent of t_r is compared first.  Coefficients are Python ints (R = Z) or
Fractions (R = Q).
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .monoid import AffineMonoid, membership, members_up_to

# compare exponent vectors from the last variable down to the first
LAST_VARIABLE_DOMINATES = True


def lex_key(e):
    return tuple(reversed(e)) if LAST_VARIABLE_DOMINATES else tuple(e)


@dataclass(frozen=True)
class CoefficientRing:
    name: str

    def is_unit(self, c):
        if self.name == "ZZ":
            return c in (1, -1)
        return c != 0

    def convert(self, c):
        if self.name == "ZZ":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return int(c)
            return int(c)
        return Fraction(c)


ZZ = CoefficientRing("ZZ")
QQ = CoefficientRing("QQ")


class Poly:
    """A finite R-linear combination of monomials t^e, e in Z^r."""

    __slots__ = ("terms", "rank", "ring")

    def __init__(self, terms, rank, ring=ZZ):
        self.rank = rank
        self.ring = ring
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != rank:
                raise ValueError(f"exponent {e} does not have length {rank}")
            c = ring.convert(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def constant(cls, c, rank, ring=ZZ):
        return cls({(0,) * rank: c}, rank, ring)

    @classmethod
    def monomial(cls, e, c=1, ring=ZZ):
        return cls({tuple(e): c}, len(e), ring)

    @classmethod
    def variable(cls, i, rank, ring=ZZ):
        """The variable t_{i+1} (0-based index)."""
        return cls.monomial(tuple(int(k == i) for k in range(rank)), 1, ring)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        return Poly.constant(other, self.rank, self.ring)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.rank, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.rank, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                k = tuple(a + b for a, b in zip(e, f))
                out[k] = out.get(k, 0) + c * d
        return Poly(out, self.rank, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are only defined for unit monomials")
        result = Poly.constant(1, self.rank, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.rank, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({str(self)!r}, rank={self.rank})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lex_key, reverse=True):
            factors = [str(self.terms[e])]
            for i, x in enumerate(e):
                if x == 1:
                    factors.append(f"x{i + 1}")
                elif x:
                    factors.append(f"x{i + 1}^{x}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @property
    def support(self):
        return list(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def in_monoid(self, M):
        """True iff every monomial of the support lies in M."""
        return all(membership(M, e).is_member for e in self.terms)

    def is_unit_monomial(self):
        return len(self.terms) == 1 and self.ring.is_unit(next(iter(self.terms.values())))

    def inverse_monomial(self):
        (e, c), = self.terms.items()
        if not self.ring.is_unit(c):
            raise ValueError(f"{self} is not a unit")
        return Poly({tuple(-x for x in e): Fraction(1, 1) / c if self.ring is QQ else c},
                    self.rank, self.ring)

    def substitute(self, images):
        """Image under the R-algebra map t_i -> images[i].

        A negative exponent needs its variable to map to a unit monomial.
        """
        if len(images) != self.rank:
            raise ValueError("need one image per variable")
        target_rank = images[0].rank if images else 0
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                if k >= 0:
                    cache[key] = images[i] ** k
                else:
                    cache[key] = images[i].inverse_monomial() ** (-k)
            return cache[key]

        out = Poly({}, target_rank, self.ring)
        for e, c in self.terms.items():
            term = Poly.constant(c, target_rank, self.ring)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def embed(self, rank, offset=0):
        """The same polynomial in a ring with ``rank`` variables, shifted by ``offset``."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * rank
            f[offset:offset + len(e)] = e
            out[tuple(f)] = c
        return Poly(out, rank, self.ring)

    @classmethod
    def parse(cls, text, rank=None, ring=ZZ):
        return parse_poly(text, rank, ring)


def _split_terms(text):
    # split on + and - that are not the sign of an exponent
    pieces = []
    buf = ""
    for ch in text:
        if ch in "+-" and buf.strip() and not buf.rstrip().endswith("^") and not buf.rstrip().endswith("*"):
            pieces.append(buf)
            buf = "" if ch == "+" else "-"
        else:
            buf += ch
    if buf.strip():
        pieces.append(buf)
    return [p.strip() for p in pieces if p.strip()]


def parse_poly(text, rank=None, ring=ZZ):
    """Parse ``3*x1^2*x2 + -1*x4``; ``rank`` defaults to the largest variable index."""
    pieces = _split_terms(text.strip())
    parsed = []
    top = 0
    for piece in pieces:
        sign = 1
        body = piece.replace(" ", "")
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ValueError(f"empty term in {text!r}")
        coeff = Fraction(sign)
        exps = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"malformed term {piece!r}")
            m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", factor)
            if m:
                idx = int(m.group(1))
                if idx < 1:
                    raise ValueError(f"variables are numbered from x1: {factor!r}")
                exps[idx] = exps.get(idx, 0) + int(m.group(2) or 1)
                top = max(top, idx)
            elif re.fullmatch(r"-?\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
            else:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
        parsed.append((exps, coeff))
    if rank is None:
        rank = top
    if top > rank:
        raise ValueError(f"variable x{top} exceeds rank {rank}")
    terms = {}
    for exps, c in parsed:
        e = tuple(exps.get(i + 1, 0) for i in range(rank))
        terms[e] = terms.get(e, 0) + c
    return Poly(terms, rank, ring)


def poly_mul(f, g):
    return f * g


def leading_data(f):
    """(H(f), L(f)): the lex-greatest exponent of f and its coefficient."""
    if not f.terms:
        raise ValueError("the zero polynomial has no leading term")
    H = max(f.terms, key=lex_key)
    return H, f.terms[H]


def is_quasi_monic(f):
    return f.ring.is_unit(leading_data(f)[1])


def monic_form(f, u, coeff_monoid=None, coefficients=None):
    """Write f as a polynomial in the monomial t^u.

    Each term t^e is split as t^(k u) * t^(e - k u) with k the largest
    integer whose remainder is admissible: a member of ``coeff_monoid``, or
    accepted by the predicate ``coefficients``.  Returns ``{k: c_k}`` with
    polynomials ``c_k``, or raises ``ValueError`` naming a term that has no
    admissible split.
    """
    u = tuple(u)
    if not any(u):
        raise ValueError("u must be a nonzero monomial")
    if coefficients is None:
        coefficients = lambda e: membership(coeff_monoid, e).is_member
    out = {}
    for e, c in f.terms.items():
        kmax = _max_multiple(e, u)
        k = kmax
        while k >= 0:
            rest = tuple(a - k * b for a, b in zip(e, u))
            if coefficients(rest):
                break
            k -= 1
        if k < 0:
            raise ValueError(f"term x^{e} is not t^(k u) times an admissible monomial")
        out.setdefault(k, {})[rest] = c
    return {k: Poly(t, f.rank, f.ring) for k, t in out.items()}


def _max_multiple(e, u):
    ks = [a // b for a, b in zip(e, u) if b > 0]
    if ks:
        return max(0, min(ks))
    ks = [a // b for a, b in zip(e, u) if b < 0]
    return max(0, min(ks)) if ks else 0


def is_monic_in(f, u, coeff_monoid=None, coefficients=None):
    """True iff f = U^K + c_{K-1} U^{K-1} + ... + c_0 up to a unit, U = t^u, K >= 1.

    Lower coefficients must be supported on ``coeff_monoid`` (or on
    exponents accepted by ``coefficients``).  The top coefficient must be a
    unit constant.
    """
    try:
        form = monic_form(f, u, coeff_monoid, coefficients)
    except ValueError:
        return False
    if not form:
        return False
    K = max(form)
    top = form[K]
    return K >= 1 and top.is_constant() and f.ring.is_unit(leading_data(top)[1])


@dataclass(frozen=True)
class GradedPiece:
    j: int
    i: int
    members: tuple
    generators: tuple = None
    degree_bound: int = None

    def monoid(self, ambient_rank):
        if self.generators is None:
            raise ValueError("only the degree-zero piece is a monoid")
        return AffineMonoid(ambient_rank, self.generators, name=f"M_0^{self.j + 1}")


def graded_component(M, j, i, degree_bound=None):
    """Members of M with j-th exponent exactly i (j is 0-based), up to total degree.

    For i = 0 the piece is the face of M cut out by x_j = 0, which is
    generated by the generators of M lying on it.
    """
    if not M.nonnegative:
        raise ValueError("graded components need nonnegative generators")
    if not 0 <= j < M.ambient_rank:
        raise ValueError(f"variable index {j} out of range")
    if degree_bound is None:
        from .cones import default_degree_bound
        degree_bound = default_degree_bound()
    members = tuple(sorted((x for x in members_up_to(M, degree_bound) if x[j] == i),
                           key=lambda x: (sum(x), x)))
    gens = None
    if i == 0:
        gens = tuple(g for g in M.generators if g[j] == 0)
    return GradedPiece(j, i, members, gens, degree_bound)


def hat_monoid(M, j):
    """M_0^j = M ∩ {x_j = 0}, generated by the generators of M lying on it."""
    return AffineMonoid(M.ambient_rank, tuple(g for g in M.generators if g[j] == 0),
                        name=f"hat({M.name}, {j + 1})" if M.name else None)
