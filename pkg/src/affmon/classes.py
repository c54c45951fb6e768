"""Substitution automorphisms and certificates for the classes M_1 ⊇ M_2 ⊇ ...

A level-n certificate for a positive monoid M records the pairs (U_j, S_j),
a rule that turns quasi-monic inputs into a t_first-fixing automorphism, and a
certificate for the face M ∩ {x_first = 0} at level n - 1.  Rules are checked
on random panels of quasi-monics; a passing panel is evidence, not a proof
over all inputs, and reports say so.

Exponents of substituted variables are powers q, q^2, q^3, ... of one base q
larger than every exponent in the input.  The leading power of the fixed
variable then encodes the whole monomial in base q, so distinct monomials
cannot cancel and the lex-leading monomial supplies the top term.
"""

import random
from dataclasses import dataclass, field, replace
from math import gcd

from .lattice import rational_rank
from .monoid import AffineMonoid, membership, members_up_to, nonnegative_combination
from .polyalg import Poly, hat_monoid, is_monic_in, lex_key
from .polyhedral import _dot


class CertificationInconclusive(Exception):
    """No rule applies, or a precondition could not be established."""


class CertificationFailed(Exception):
    """A rule was applied and a check failed; ``report`` names the check."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _unit(r, i):
    return tuple(int(k == i) for k in range(r))


def _scale(v, k):
    return tuple(k * x for x in v)


def _max_degree(M):
    return max((sum(g) for g in M.generators), default=0)


def gen1(M, first=0):
    """Generators with positive exponent of the variable ``first``."""
    return [g for g in M.generators if g[first] > 0]


def support(M):
    return M.coordinate_support()


# -- pure powers and tilting ------------------------------------------------

@dataclass(frozen=True)
class PhiVerdict:
    kind: str  # "yes" | "no" | "unknown"
    powers: tuple = None
    reason: str = None

    def __bool__(self):
        return self.kind == "yes"


def _guaranteed_multiple(M, v):
    """Some N with N*v in M, for v in the rational cone of M."""
    lam = nonnegative_combination(M.generators, v)
    den = 1
    for x in lam:
        den = den * x.denominator // gcd(den, x.denominator)
    return den


def pure_power(M, i, bound=None):
    """Least p with p*e_i in M, ``None`` if e_i lies outside the cone, ``"unknown"`` past ``bound``."""
    e = _unit(M.ambient_rank, i)
    if not M.cone.contains(e):
        return None
    cap = _guaranteed_multiple(M, e)
    limit = cap if bound is None else min(cap, bound)
    for p in range(1, limit + 1):
        if membership(M, _scale(e, p)).is_member:
            return p
    return "unknown"


def is_phi_simplicial(M, power_bound=None, coordinates=None):
    """Decide whether M contains a positive pure power of every coordinate.

    When e_i lies in the cone some multiple N*e_i is in M (clear the
    denominators of a cone representation), so without ``power_bound`` the
    answer is exact and the least powers are returned.
    """
    if coordinates is None:
        if M.rank != M.ambient_rank:
            raise ValueError(f"monoid rank {M.rank} differs from ambient rank {M.ambient_rank}")
        coordinates = range(M.ambient_rank)
    powers = []
    for i in coordinates:
        p = pure_power(M, i, power_bound)
        if p is None:
            return PhiVerdict("no", reason=f"e{i + 1} is outside the cone")
        if p == "unknown":
            return PhiVerdict("unknown", reason=f"no multiple of e{i + 1} up to {power_bound}")
        powers.append(p)
    return PhiVerdict("yes", tuple(powers))


@dataclass(frozen=True)
class TiltVerdict:
    index: int
    kind: str  # "tilted" | "not_tilted" | "bounded"
    exponents: dict = None
    reason: str = None


def tilt_search(M, i, bound=None):
    """Is t_i tilted: t_i in M and t_i^c t_j in M for every j?  Minimal c_j are returned."""
    from .cones import default_degree_bound

    if bound is None:
        bound = default_degree_bound()
    r = M.ambient_rank
    ei = _unit(r, i)
    if not membership(M, ei).is_member:
        return TiltVerdict(i, "not_tilted", reason=f"t{i + 1} is not in M")
    exps = {}
    for j in range(r):
        if j == i:
            continue
        ej = _unit(r, j)
        if ej not in M.lattice:
            return TiltVerdict(i, "not_tilted", reason=f"t{j + 1} is outside gp(M)")
        # t_j t_i^c stays outside the cone for all c when some facet vanishing on e_i is negative on e_j
        if not M.cone.in_span(ej) or any(_dot(f, ei) == 0 and _dot(f, ej) < 0 for f in M.cone.facets):
            return TiltVerdict(i, "not_tilted", reason=f"t{j + 1} t{i + 1}^c leaves the cone")
        for c in range(bound + 1):
            if membership(M, tuple(a + c * b for a, b in zip(ej, ei))).is_member:
                exps[j] = c
                break
        else:
            return TiltVerdict(i, "bounded", reason=f"no c <= {bound} for t{j + 1}")
    return TiltVerdict(i, "tilted", exps)


def tilted_variables(M, bound=None):
    """All (i, {j: c_j}) with t_i a tilted variable of M (0-based indices)."""
    out = []
    for i in range(M.ambient_rank):
        v = tilt_search(M, i, bound)
        if v.kind == "tilted":
            out.append((i, v.exponents))
    return out


# -- automorphisms ------------------------------------------------------------

class SubstitutionAutomorphism:
    """An R-algebra endomorphism of R[t_1..t_r] given by the images of the variables.

    ``images`` maps a 0-based variable index to its image; missing variables
    are fixed.  Elementary substitutions t_i -> t_i + u t^a are built with
    :meth:`from_assignments`.
    """

    def __init__(self, rank, images=None, fixed_variable=0, params=None):
        self.rank = rank
        self.fixed_variable = fixed_variable
        self.images = {}
        for k, p in (images or {}).items():
            if p != Poly.variable(k, rank):
                self.images[k] = p
        self.params = dict(params or {})

    @classmethod
    def from_assignments(cls, rank, assignments, fixed_variable=0, params=None):
        images = {}
        for i, (u, a) in assignments.items():
            if tuple(a) == _unit(rank, i):
                raise ValueError("an added monomial must differ from its variable")
            images[i] = Poly.variable(i, rank) + Poly.monomial(a, u)
        return cls(rank, images, fixed_variable, params)

    @classmethod
    def identity(cls, rank, fixed_variable=0):
        return cls(rank, {}, fixed_variable)

    def image(self, k):
        return self.images.get(k, Poly.variable(k, self.rank))

    def added(self, k):
        return self.image(k) - Poly.variable(k, self.rank)

    def apply(self, f):
        if f.rank != self.rank:
            raise ValueError(f"rank mismatch: {f.rank} vs {self.rank}")
        return f.substitute([self.image(k) for k in range(self.rank)])

    __call__ = apply

    def after(self, other):
        """The map f -> self(other(f))."""
        return SubstitutionAutomorphism(
            self.rank, {k: self.apply(other.image(k)) for k in range(self.rank)},
            self.fixed_variable)

    def _order(self):
        deps = {}
        for k in self.images:
            h = self.added(k)
            used = {i for e in h.terms for i, x in enumerate(e) if x}
            if k in used:
                return None
            deps[k] = used & set(self.images)
        order = []
        done = set()
        pending = dict(deps)
        while pending:
            ready = [k for k, d in pending.items() if d <= done]
            if not ready:
                return None
            for k in sorted(ready):
                order.append(k)
                done.add(k)
                del pending[k]
        return order

    def is_triangular(self):
        return self._order() is not None

    def inverse(self):
        """Inverse of a triangular substitution (each t_k + h_k with h_k free of t_k, acyclic)."""
        order = self._order()
        if order is None:
            raise ValueError("substitution is not triangular")
        inv = SubstitutionAutomorphism(self.rank, {}, self.fixed_variable)
        for k in order:
            inv.images[k] = Poly.variable(k, self.rank) - inv.apply(self.added(k))
        return inv

    def __eq__(self, other):
        return (isinstance(other, SubstitutionAutomorphism) and self.rank == other.rank
                and self.images == other.images)

    def __repr__(self):
        parts = ", ".join(f"x{k + 1} -> {self.images[k]}" for k in sorted(self.images))
        return f"SubstitutionAutomorphism({parts or 'identity'})"

    def to_dict(self):
        return {"rank": self.rank, "fixed_variable": self.fixed_variable,
                "images": {str(k + 1): str(self.images[k]) for k in sorted(self.images)}}


def apply_automorphism(eta, f):
    return eta.apply(f)


@dataclass
class AutomorphismReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return all(self.checks.values())

    def fail(self, name, message):
        self.checks[name] = False
        self.failures.append(f"{name}: {message}")


def _poly_in_monoid(p, M):
    for e in p.terms:
        if not membership(M, e).is_member:
            return e
    return None


def verify_automorphism(M, eta, require_M1_form=False):
    """Check that ``eta`` fixes its variable and restricts to an automorphism of R[M].

    Checks: ``fixes`` (the designated variable is fixed), ``triangular``
    (inverse exists), ``restricts`` (images of generators lie in R[M]),
    ``inverse_restricts`` (same for the inverse) and, when asked, ``m1_form``
    (every added monomial is in M with positive exponent of the fixed variable).
    """
    if eta.rank != M.ambient_rank:
        raise ValueError(f"automorphism rank {eta.rank} differs from ambient rank {M.ambient_rank}")
    if not M.nonnegative:
        raise ValueError("automorphism checks need nonnegative generators")
    rep = AutomorphismReport()
    first = eta.fixed_variable
    rep.checks["fixes"] = first not in eta.images
    if not rep.checks["fixes"]:
        rep.failures.append(f"fixes: x{first + 1} -> {eta.image(first)}")
    try:
        inv = eta.inverse()
        rep.checks["triangular"] = True
    except ValueError as exc:
        inv = None
        rep.fail("triangular", str(exc))
    for name, phi in (("restricts", eta), ("inverse_restricts", inv)):
        if phi is None:
            rep.checks[name] = False
            continue
        rep.checks[name] = True
        for g in M.generators:
            bad = _poly_in_monoid(phi.apply(Poly.monomial(g)), M)
            if bad is not None:
                rep.fail(name, f"image of x^{g} has the monomial x^{bad} outside M")
                break
    if require_M1_form:
        rep.checks["m1_form"] = True
        for k in sorted(eta.images):
            for a in eta.added(k).terms:
                if a[first] <= 0 or not membership(M, a).is_member:
                    rep.fail("m1_form", f"x{k + 1} adds x^{a}, not in M with positive x{first + 1}-exponent")
                    break
    return rep


def _powers_of(q, count):
    return [q ** s for s in range(1, count + 1)]


def _digit_substitution(rank, first, variables, q, companions=None):
    """x_v -> x_v + x_first^e (x_row^(e-1) for companions), e = q, q^2, ... in variable order."""
    images = {}
    for v, e in zip(variables, _powers_of(q, len(variables))):
        a = [0] * rank
        a[first] = e
        if companions and companions.get(v) is not None:
            a[companions[v]] = e - 1
        images[v] = Poly.variable(v, rank) + Poly.monomial(tuple(a))
    return images


def lowest_key(i):
    """Lex key with t_i made the least significant variable."""
    def key(e):
        return tuple(e[k] for k in reversed(range(len(e))) if k != i) + (e[i],)
    return key


def tilt_automorphism(M, i, f, exponents=None):
    """t_k -> t_k + t_i^(q^s) for the other variables of M; eta(f) is monic in t_i.

    c exceeds the total degree of every generator and q > max(c * c_j, deg f).
    f must be quasi-monic for the lex order with t_i least significant.
    """
    if exponents is None:
        v = tilt_search(M, i)
        if v.kind != "tilted":
            raise ValueError(f"t{i + 1} is not a tilted variable: {v.reason}")
        exponents = v.exponents
    if not f.terms:
        raise ValueError("the zero polynomial is not quasi-monic")
    H = max(f.terms, key=lowest_key(i))
    if not f.ring.is_unit(f.terms[H]):
        raise ValueError(f"{f} is not quasi-monic")
    c = _max_degree(M) + 1
    cmax = max(exponents.values(), default=0)
    q = max(c * cmax, f.total_degree(), 1) + 1
    variables = [k for k in support(M) if k != i]
    images = _digit_substitution(M.ambient_rank, i, variables, q)
    return SubstitutionAutomorphism(M.ambient_rank, images, i,
                                    params={"c": c, "q": q, "exponents": dict(exponents)})


def free_form(i):
    """Coefficient test for monic in t_i over R[t_k : k != i]."""
    return lambda e: e[i] == 0 and all(x >= 0 for x in e)


# -- quasi-monic panels ---------------------------------------------------------

def random_quasi_monic(rng, exponents, key=lex_key, max_terms=5, coeff_range=3):
    """A random polynomial on ``exponents`` whose key-leading coefficient is +-1."""
    nonzero = [e for e in exponents if any(e)]
    if not nonzero:
        raise ValueError("need a nonconstant monomial")
    k = rng.randint(1, max_terms)
    chosen = {rng.choice(nonzero)}
    pool = list(exponents)
    for _ in range(k - 1):
        chosen.add(rng.choice(pool))
    coeffs = [c for c in range(-coeff_range, coeff_range + 1) if c]
    terms = {e: rng.choice(coeffs) for e in sorted(chosen)}
    lead = max(terms, key=key)
    terms[lead] = rng.choice([1, -1])
    rank = len(nonzero[0])
    return Poly(terms, rank)


def _bounded_exponents(rank, degree):
    out = [()]
    for _ in range(rank):
        out = [e + (a,) for e in out for a in range(degree + 1)]
    return [e for e in out if sum(e) <= degree]


def monoid_panel(M, size=25, max_degree=6, seed=0, rng=None):
    """Quasi-monics in R[M] supported on members of total degree <= ``max_degree``."""
    rng = rng or random.Random(seed)
    pts = sorted(x for x in members_up_to(M, max_degree, (1,) * M.ambient_rank))
    return [random_quasi_monic(rng, pts) for _ in range(size)]


def subset_quasi_monic(rng, S, max_degree=6):
    """A quasi-monic of R[S] ≅ R[Z_1..Z_n], last listed element dominant."""
    n = len(S)
    zs = _bounded_exponents(n, max_degree)
    F = random_quasi_monic(rng, zs)
    r = len(S[0])
    terms = {}
    for z, c in F.terms.items():
        e = tuple(sum(zk * s[i] for zk, s in zip(z, S)) for i in range(r))
        terms[e] = terms.get(e, 0) + c
    return Poly(terms, r)


@dataclass
class PanelResult:
    total: int
    passed: int
    failures: list = field(default_factory=list)
    seed: int = 0

    @property
    def ok(self):
        return self.passed == self.total


def tilt_panel(M, i=0, size=25, max_degree=6, seed=0):
    """Run tilt_automorphism over a random panel of quasi-monics in R[M]."""
    v = tilt_search(M, i)
    if v.kind != "tilted":
        raise ValueError(f"t{i + 1} is not a tilted variable: {v.reason}")
    rng = random.Random(seed)
    pts = sorted(members_up_to(M, max_degree, (1,) * M.ambient_rank))
    res = PanelResult(size, 0, seed=seed)
    for s in range(size):
        f = random_quasi_monic(rng, pts, key=lowest_key(i))
        eta = tilt_automorphism(M, i, f, v.exponents)
        g = eta.apply(f)
        rep = verify_automorphism(M, eta)
        if is_monic_in(g, _unit(M.ambient_rank, i), coefficients=free_form(i)) and rep.ok:
            res.passed += 1
        else:
            res.failures.append({"sample": s, "f": str(f), "checks": rep.failures})
    return res


# -- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    kind: str  # positive | free | tilt | ps | segre | custom | lift
    params: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": self.kind, "params": self.params}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], dict(d.get("params", {})))


@dataclass
class MnCertificate:
    monoid: AffineMonoid
    level: int
    first: int = 0
    pairs: tuple = ()
    rule: Rule = field(default_factory=lambda: Rule("positive"))
    recursion: "MnCertificate" = None
    simplicial_mode: bool = False
    simplicial_vars: tuple = ()
    notes: tuple = ()
    panel: PanelResult = None

    def to_dict(self):
        d = {
            "level": self.level,
            "first": self.first,
            "monoid": {"ambient_rank": self.monoid.ambient_rank,
                       "generators": [list(g) for g in self.monoid.generators]},
            "pairs": [{"U": list(U), "S": [list(s) for s in S]} for U, S in self.pairs],
            "rule": self.rule.to_dict(),
            "simplicial_mode": self.simplicial_mode,
            "simplicial_vars": list(self.simplicial_vars),
            "notes": list(self.notes),
            "recursion": self.recursion.to_dict() if self.recursion else None,
        }
        if self.panel is not None:
            d["panel"] = {"total": self.panel.total, "passed": self.panel.passed,
                          "seed": self.panel.seed, "status": "panel-certified"}
        return d

    @classmethod
    def from_dict(cls, d, monoid=None):
        if monoid is None:
            m = d["monoid"]
            monoid = AffineMonoid(m["ambient_rank"], tuple(tuple(g) for g in m["generators"]))
        rec = d.get("recursion")
        recursion = None
        if rec:
            recursion = cls.from_dict(rec)
        return cls(monoid=monoid, level=d["level"], first=d.get("first", 0),
                   pairs=tuple((tuple(p["U"]), tuple(tuple(s) for s in p["S"]))
                               for p in d.get("pairs", [])),
                   rule=Rule.from_dict(d.get("rule", {"kind": "positive"})),
                   recursion=recursion,
                   simplicial_mode=d.get("simplicial_mode", False),
                   simplicial_vars=tuple(d.get("simplicial_vars", ())),
                   notes=tuple(d.get("notes", ())))

    def chain(self):
        c = self
        while c is not None:
            yield c
            c = c.recursion


def positive_certificate(M, first=None, notes=()):
    if M.unit_generators:
        raise CertificationInconclusive("monoid has nontrivial units")
    if first is None:
        supp = support(M)
        first = supp[0] if supp else 0
    return MnCertificate(M, 1, first, notes=tuple(notes))


def _build_automorphism(rule, M, first, polys):
    """The automorphism a rule assigns to its panel inputs."""
    r = M.ambient_rank
    kind, P = rule.kind, rule.params
    l = max((p.total_degree() for p in polys), default=0)
    if kind == "positive":
        return SubstitutionAutomorphism.identity(r, first)
    if kind in ("free", "tilt", "ps"):
        c = _max_degree(M) + 1
        q = max(c * P.get("cmax", 0), l, 1) + 1
        images = _digit_substitution(r, first, P["variables"], q)
        return SubstitutionAutomorphism(r, images, first, {"q": q})
    if kind == "segre":
        cols, rows, k = P["cols"], P["rows"], P["k"]
        images = {}
        for j, f in enumerate(polys):
            d = max(f.total_degree() + 1, 2)
            block = segre_block(j, k)
            variables = [cols[i] for i in block]
            companions = {v: (rows[j - 1] if j >= 1 else None) for v in variables}
            images.update(_digit_substitution(r, first, variables, d, companions))
        return SubstitutionAutomorphism(r, images, first)
    if kind == "custom":
        p = max(P.get("p_min", 2), l + 1)
        images = {}
        for var, terms in P["images"].items():
            k = int(var)
            img = Poly.variable(k, r)
            for coef, slope, offset in terms:
                a = tuple(s * p + o for s, o in zip(slope, offset))
                img = img + Poly.monomial(a, coef)
            images[k] = img
        return SubstitutionAutomorphism(r, images, first, {"p": p})
    if kind == "lift":
        tn, pn, zs = P["tn"], P["pn"], P["z"]
        B = pn * (l + 1) + 1
        theta_images = {}
        for z, e in zip(zs, _powers_of(B, len(zs))):
            theta_images[z] = Poly.variable(z, r) + Poly.monomial(_scale(_unit(r, tn), pn * e))
        theta = SubstitutionAutomorphism(r, theta_images, first)
        base = Rule.from_dict(P["base"])
        inner = [theta.apply(f) for f in polys]
        eta = _build_automorphism(base, M, first, inner)
        return eta.after(theta)
    raise ValueError(f"unknown rule kind {kind!r}")


def segre_block(j, k):
    """0-based column positions moved for pair j (0-based): a contiguous block of k - 1 columns."""
    start = j * (k - 1) + 1
    return list(range(start, start + k - 1))


@dataclass
class CertificateReport:
    checks: list = field(default_factory=list)
    panel: PanelResult = None

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def failures(self):
        return [f"{n}: {d}" for n, ok, d in self.checks if not ok]


def _simplicial_face(M, coords):
    """Generators supported on ``coords``: they generate R[t_coords] ∩ R[M]."""
    cs = set(coords)
    return AffineMonoid(M.ambient_rank, tuple(g for g in M.generators
                                              if all(x == 0 for i, x in enumerate(g) if i not in cs)))


def verify_certificate(cert, panel_size=25, max_degree=6, seed=0, _depth=0):
    """Re-check every structural condition of a certificate and run its panel."""
    M = cert.monoid
    rep = CertificateReport()
    tag = f"level {cert.level}" + (f" (depth {_depth})" if _depth else "")
    rep.add(f"{tag}: positive", not M.unit_generators, "monoid has units")
    rep.add(f"{tag}: level <= rank", 1 <= cert.level <= max(M.rank, 1),
            f"level {cert.level}, rank {M.rank}")
    if cert.level == 1 or not rep.ok:
        return rep
    first = cert.first
    hat = hat_monoid(M, first)
    if cert.simplicial_mode:
        vs = list(cert.simplicial_vars)
        rep.add(f"{tag}: simplicial variables", len(vs) == cert.level and vs[0] == first,
                f"{vs} for level {cert.level}")
        if cert.rule.kind != "lift":
            phi = is_phi_simplicial(M, coordinates=support(M))
            rep.add(f"{tag}: phi-simplicial", phi.kind == "yes", phi.reason or "")
    else:
        us = sorted(U for U, _ in cert.pairs)
        rep.add(f"{tag}: pairs cover gen1", us == sorted(gen1(M, first)),
                f"U's {us} vs gen1 {sorted(gen1(M, first))}")
        gens = set(M.generators)
        for U, S in cert.pairs:
            ok = (len(S) == cert.level and all(s in gens for s in S)
                  and rational_rank(S) == len(S))
            rep.add(f"{tag}: S for U={U}", ok, "S must be independent generators of size level")
    if rep.ok:
        panel = _run_panel(cert, hat, panel_size, max_degree, seed)
        rep.panel = panel
        rep.add(f"{tag}: panel", panel.ok, f"{panel.passed}/{panel.total}; {panel.failures[:1]}")
    rec = cert.recursion
    if rec is None:
        rep.add(f"{tag}: recursion present", False, "missing certificate for the face")
        return rep
    rep.add(f"{tag}: recursion level", rec.level == cert.level - 1, f"{rec.level}")
    rep.add(f"{tag}: recursion monoid", set(rec.monoid.generators) == set(hat.generators),
            f"{sorted(rec.monoid.generators)} vs {sorted(hat.generators)}")
    sub = verify_certificate(rec, panel_size, max_degree, seed, _depth + 1)
    rep.checks.extend(sub.checks)
    return rep


def _run_panel(cert, hat, size, max_degree, seed):
    M = cert.monoid
    r = M.ambient_rank
    first = cert.first
    rng = random.Random(seed)
    res = PanelResult(size, 0, seed=seed)
    if cert.simplicial_mode:
        from .cones import is_normal
        face = _simplicial_face(M, cert.simplicial_vars)
        pts = sorted(members_up_to(face, max_degree, (1,) * r))
        coeff = M if is_normal(M) else hat
    for s in range(size):
        if cert.simplicial_mode:
            polys = [random_quasi_monic(rng, pts)]
            targets = [(polys[0], _unit(r, first))]
        else:
            polys = [subset_quasi_monic(rng, list(S), max_degree) for _, S in cert.pairs]
            targets = list(zip(polys, [U for U, _ in cert.pairs]))
            coeff = hat
        eta = _build_automorphism(cert.rule, M, first, polys)
        auto = verify_automorphism(M, eta)
        bad = list(auto.failures)
        for f, U in targets:
            if not is_monic_in(eta.apply(f), U, coeff):
                bad.append(f"eta({f}) is not monic in x^{U}")
        if bad:
            res.failures.append({"sample": s, "problems": bad})
        else:
            res.passed += 1
    return res


def _check(cert, panel_size, max_degree, seed):
    rep = verify_certificate(cert, panel_size, max_degree, seed)
    if not rep.ok:
        raise CertificationFailed("; ".join(rep.failures()), rep)
    cert.panel = rep.panel
    return cert


def is_free_on_support(M):
    supp = support(M)
    r = M.ambient_rank
    return (M.nonnegative and len(supp) == M.rank
            and all(membership(M, _unit(r, i)).is_member for i in supp))


def free_certificate(M, level=None, coords=None):
    """ℤ_+^s on coordinates ``coords`` is in M_s via x_k -> x_k + x_first^(q^i)."""
    if coords is None:
        coords = support(M)
    coords = list(coords)
    if level is None:
        level = len(coords)
    if level <= 1:
        return positive_certificate(M, coords[0] if coords else 0)
    first = coords[0]
    rule = Rule("free", {"variables": coords[1:], "cmax": 0})
    rec = free_certificate(hat_monoid(M, first), level - 1, coords[1:])
    return MnCertificate(M, level, first, (), rule, rec, True, tuple(coords[:level]),
                         notes=("free monoid",))


def _tilt_certificate(M, level, first):
    v = tilt_search(M, first)
    if v.kind != "tilted":
        raise CertificationInconclusive(f"x{first + 1} is not tilted: {v.reason}")
    supp = support(M)
    rest = [k for k in supp if k != first]
    coords = [first] + rest
    rule = Rule("tilt", {"variables": rest, "cmax": max(v.exponents.values(), default=0)})
    hat = hat_monoid(M, first)
    rec = _auto_certificate(hat, level - 1)
    return MnCertificate(M, level, first, (), rule, rec, True, tuple(coords[:level]),
                         notes=("tilted variable",))


def _auto_certificate(M, level):
    if level <= 1:
        return positive_certificate(M)
    if M.rank < level:
        raise CertificationInconclusive(f"level {level} exceeds rank {M.rank}")
    if is_free_on_support(M):
        return free_certificate(M, level)
    phi = is_phi_simplicial(M, coordinates=support(M)) if M.nonnegative else PhiVerdict("no")
    if phi.kind != "yes":
        raise CertificationInconclusive("no built-in rule applies: not free and not phi-simplicial")
    for first in support(M):
        try:
            return _tilt_certificate(M, level, first)
        except CertificationInconclusive:
            continue
    raise CertificationInconclusive("no tilted variable")


def certificate_from_hints(M, hints):
    """Build a certificate from user data: level, first, pairs, rule, optional recursion."""
    level = int(hints["level"])
    first = int(hints.get("first", 0))
    pairs = tuple((tuple(p["U"]), tuple(tuple(s) for s in p["S"])) for p in hints.get("pairs", []))
    rule = Rule.from_dict(hints.get("rule", {"kind": "positive"}))
    hat = hat_monoid(M, first)
    if level <= 1:
        return positive_certificate(M, first)
    if hints.get("recursion"):
        rec = certificate_from_hints(hat, hints["recursion"])
    else:
        rec = _auto_certificate(hat, level - 1)
    return MnCertificate(M, level, first, pairs, rule, rec,
                         bool(hints.get("simplicial_mode", False)),
                         tuple(hints.get("simplicial_vars", ())), notes=("from hints",))


def certify_Mn(M, level=None, hints=None, panel_size=25, max_degree=6, seed=0):
    """Certify M at some level of the class chain.

    With ``hints`` the given data is checked.  Otherwise the built-in rules
    are tried (free monoids, tilted phi-simplicial monoids) from the highest
    possible level down; level 1 only needs positivity.  Raises
    :class:`CertificationInconclusive` when nothing applies at the requested
    level and :class:`CertificationFailed` when a supplied certificate is wrong.
    """
    if M.unit_generators:
        raise CertificationInconclusive("monoid has nontrivial units")
    if hints is not None:
        cert = certificate_from_hints(M, hints)
        if level is not None and level != cert.level:
            cert = downgrade(cert, level)
        return _check(cert, panel_size, max_degree, seed)
    levels = [level] if level is not None else list(range(max(M.rank, 1), 0, -1))
    last = None
    for n in levels:
        try:
            cert = _auto_certificate(M, n)
            return _check(cert, panel_size, max_degree, seed)
        except (CertificationInconclusive, CertificationFailed) as exc:
            last = exc
    raise CertificationInconclusive(str(last) if last else "no rule applies")


def downgrade(cert, k):
    """The same data read at level k <= cert.level (every S_j and variable list cut to k)."""
    if not 1 <= k <= cert.level:
        raise ValueError(f"cannot move a level-{cert.level} certificate to level {k}")
    if k == cert.level:
        return cert
    if k == 1:
        return positive_certificate(cert.monoid, cert.first, notes=cert.notes + ("downgraded",))
    return replace(cert, level=k,
                   pairs=tuple((U, S[:k]) for U, S in cert.pairs),
                   simplicial_vars=cert.simplicial_vars[:k],
                   recursion=downgrade(cert.recursion, k - 1),
                   notes=cert.notes + ("downgraded",), panel=None)


def direct_sum(M, m):
    r = M.ambient_rank
    gens = [tuple(g) + (0,) * m for g in M.generators]
    gens += [_unit(r + m, r + s) for s in range(m)]
    return AffineMonoid(r + m, tuple(gens), name=f"{M.name} + Z+^{m}" if M.name else None)


def _embed_cert(cert, m):
    """The same certificate with m more ambient coordinates (zero on the monoid)."""
    M = cert.monoid
    r = M.ambient_rank + m
    new = AffineMonoid(r, tuple(tuple(g) + (0,) * m for g in M.generators), name=M.name)
    return replace(cert, monoid=new,
                   pairs=tuple((U + (0,) * m, tuple(s + (0,) * m for s in S)) for U, S in cert.pairs),
                   recursion=_embed_cert(cert.recursion, m) if cert.recursion else None,
                   panel=None)


def direct_sum_lift(cert, m, panel_size=25, max_degree=6, seed=0):
    """From M at level n (M with a pure power of t_n) to M ⊕ ℤ_+^m at level n + m.

    The new variables Z_i go to Z_i + t_n^(p_n B^i) before the base rule is
    applied, which turns quasi-monics in t and Z into quasi-monics in t over R[Z].
    """
    if m == 0:
        return cert
    M = cert.monoid
    if cert.simplicial_mode:
        tn = cert.simplicial_vars[-1]
    elif cert.level == 1:
        tn = cert.first
    else:
        raise ValueError("direct sums need a certificate in simplicial mode")
    pn = pure_power(M, tn)
    if not isinstance(pn, int):
        raise ValueError(f"no pure power of x{tn + 1} in the monoid")
    r = M.ambient_rank
    big = direct_sum(M, m)
    zs = list(range(r, r + m))
    base = _embed_cert(cert, m)
    rule = Rule("lift", {"base": base.rule.to_dict(), "tn": tn, "pn": pn, "z": zs})
    vars_ = (tuple(cert.simplicial_vars) if cert.simplicial_mode else (cert.first,)) + tuple(zs)
    hat = hat_monoid(big, cert.first)
    if cert.level >= 2:
        rec = direct_sum_lift(cert.recursion, m, panel_size, max_degree, seed)
        rec = replace(rec, monoid=hat)
    elif m == 1:
        rec = positive_certificate(hat)
    elif not hat_monoid(M, cert.first).generators:
        rec = free_certificate(hat, m, zs)
    else:
        raise CertificationInconclusive("no certificate for the face at level m")
    out = MnCertificate(big, cert.level + m, cert.first, (), rule, rec, True, vars_,
                        notes=cert.notes + (f"direct sum with Z+^{m}",))
    return _check(out, panel_size, max_degree, seed)


def free_relabeling(M):
    """{generator: e_i} when the generators are linearly independent, so M ≅ Z_+^k; else None."""
    gens = list(M.generators)
    if rational_rank(gens) != len(gens):
        return None
    k = len(gens)
    return {g: _unit(k, i) for i, g in enumerate(gens)}
