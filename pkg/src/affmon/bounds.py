"""Upper bounds for the Serre dimension of monoid rings R[M].

Every entry records which hypotheses were machine-checked ("certified: ...")
and which were taken on the user's word ("asserted-by-user: ...").  The
engine only reports upper bounds.
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field

from .classes import (CertificationFailed, CertificationInconclusive, certify_Mn,
                      verify_certificate)
from .cones import is_normal, is_seminormal
from .lattice import Lattice
from .segre import k_of, rees_monoid, segre_certificate, segre_monoid

UNCONDITIONAL = "unconditional"

COMMENTARY = (
    "Monic-inversion results give surjectivity of Um(P) -> Um(P/A_+P) rather than numeric "
    "bounds; their monoid-side condition (automorphisms of the form t_i -> t_i + M_1) can be "
    "checked with verify_automorphism(..., require_M1_form=True).",
)


@dataclass(frozen=True)
class RingProfile:
    d: int
    normal: bool = False
    reduced: bool = False
    contains_Q: bool = False
    is_PID: bool = False
    is_Dedekind: bool = False

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 0:
            raise ValueError(f"ring dimension must be a nonnegative integer, got {self.d!r}")


@dataclass
class BoundEntry:
    rule: str
    locus: str
    quote: str
    hypotheses: list
    bound: int


@dataclass
class BoundReport:
    monoid: dict
    profile: dict
    entries: list = field(default_factory=list)
    commentary: tuple = COMMENTARY

    @property
    def best(self):
        return min((e.bound for e in self.entries), default=None)

    def entry(self, rule):
        return next((e for e in self.entries if e.rule == rule), None)

    def to_dict(self):
        return {"monoid": self.monoid, "profile": self.profile,
                "entries": [asdict(e) for e in self.entries],
                "best": self.best, "commentary": list(self.commentary)}


def certificate_id(cert):
    blob = json.dumps(cert.to_dict(), sort_keys=True).encode()
    return "cert:" + hashlib.sha256(blob).hexdigest()[:12]


@dataclass
class MonoidAnalysis:
    """Cached facts about M used by several rules."""

    normal: bool = None
    seminormal: bool = None
    unit_rank: int = None
    certificate: object = None
    certificate_note: str = None
    segre: tuple = None
    rees_m: int = None


def match_segre(M):
    """(m, n) with M equal to segre_monoid(m, n).monoid as generator sets, else None."""
    r = M.ambient_rank
    gens = set(M.generators)
    for m in range(2, r + 1):
        n = r + 1 - m
        if n >= 1 and set(segre_monoid(m, n).monoid.generators) == gens:
            return m, n
    if set(segre_monoid(1, r).monoid.generators) == gens:
        return 1, r
    return None


def match_rees(M):
    """m with M the Rees monoid of (X_1..X_m), else None."""
    m = M.ambient_rank - 1
    if m < 1:
        return None
    ideal = [tuple(int(k == i) for k in range(m)) for i in range(m)]
    return m if set(rees_monoid(ideal).generators) == set(M.generators) else None


def analyze(M, cert=None, auto_certify=True, panel_size=25, seed=0):
    a = MonoidAnalysis()
    pointed = not M.unit_generators
    a.normal = is_normal(M)
    a.seminormal = is_seminormal(M) if pointed else None
    a.unit_rank = Lattice(M.unit_generators, M.ambient_rank).rank if M.unit_generators else 0
    a.segre = match_segre(M)
    a.rees_m = match_rees(M)
    if cert is not None:
        rep = verify_certificate(cert, panel_size=panel_size, seed=seed)
        if not rep.ok:
            raise CertificationFailed("; ".join(rep.failures()), rep)
        a.certificate = cert
    elif auto_certify and pointed and M.rank >= 1:
        try:
            if a.segre and a.segre[0] >= 2:
                a.certificate = segre_certificate(segre_monoid(*a.segre), panel_size, seed=seed)
                if a.segre[0] > a.segre[1]:
                    a.certificate = None
                    a.certificate_note = "transposed Segre certificate lives on the isomorphic Segre(n,m)"
            if a.certificate is None:
                a.certificate = certify_Mn(M, panel_size=panel_size, seed=seed)
        except (CertificationInconclusive, CertificationFailed) as exc:
            a.certificate_note = str(exc)
    return a


def serre_bound(M, profile, cert=None, analysis=None, assertions=(), auto_certify=True,
                panel_size=25, seed=0):
    """All applicable upper bounds for S-dim(R[M]) together with the minimum."""
    d, r = profile.d, M.rank
    rep = BoundReport({"ambient_rank": M.ambient_rank,
                       "generators": [list(g) for g in M.generators], "rank": r},
                      asdict(profile))
    add = rep.entries.append
    if r == 0:
        add(BoundEntry("R0", "splitting theorem for R", "d", [UNCONDITIONAL], d))
        return rep
    if analysis is None:
        analysis = analyze(M, cert, auto_certify, panel_size, seed)
    a = analysis
    add(BoundEntry("R1", "general bound for monoid rings", "max{1, d+r-1}",
                   [UNCONDITIONAL], max(1, d + r - 1)))
    if a.normal:
        hyp = ["certified: is_normal"]
        ru = a.unit_rank
        add(BoundEntry("R2", "normal monoids, unit rank", "d+r-rank U(M)",
                       hyp + [f"certified: rank U(M) = {ru}"], d + r - ru))
        if ru == r - 1:
            add(BoundEntry("R2.1", "normal monoids with rank U(M) = r-1", "d",
                           hyp + [f"certified: rank U(M) = {ru}"], d))
        if r == 2:
            add(BoundEntry("R2.2", "normal monoids of rank 2", "d", hyp + ["certified: rank 2"], d))
    c = a.certificate
    if a.seminormal and c is not None:
        n = c.level
        add(BoundEntry("R3", "seminormal monoids in the level-n class", "d+r-n",
                       ["certified: is_seminormal", f"{certificate_id(c)} (level {n}, panel-verified)"],
                       d + r - n))
    if a.segre:
        m, n = a.segre
        k = k_of(m, n)
        add(BoundEntry("R4", "Segre extensions", "d+m+n-1-k(m,n)",
                       [f"certified: generators equal Segre({m},{n})",
                        "certified: minor-presentation isomorphism",
                        f"k(m,n) = floor((m+n-1)/min(m,n)) = {k}"],
                       d + m + n - 1 - k))
    asserted = set(assertions)
    if {"quasi_truncated", "quasi_normal"} <= asserted and r >= 2 and a.seminormal:
        add(BoundEntry("R5", "quasi-truncated quasi-normal monoids (level 2)", "d+rank(M)-2",
                       ["asserted-by-user: quasi_truncated", "asserted-by-user: quasi_normal",
                        "certified: is_seminormal", "certified: rank >= 2"],
                       d + r - 2))
    if a.rees_m:
        m = a.rees_m
        value = d + (m + 1) // 2 if m % 2 else d + m // 2 + 1
        quote = "d+(m+1)/2" if m % 2 else "d+m/2+1"
        hyp = [f"certified: Rees monoid of (X1..X{m}) equals Segre(2,{m})"]
        r4 = rep.entry("R4")
        if r4 is not None and r4.bound != value:
            hyp.append(f"discrepancy: Segre rule gives {r4.bound}")
        add(BoundEntry("R6", "Rees algebras of (X1..Xm)", quote, hyp, value))
    return rep


def mu_bound(M, profile, rankP, cert=None):
    """Bound rank(P) + d + r - n on the number of generators of P (n = 1 without a certificate)."""
    if rankP < 1:
        raise ValueError("rank(P) must be positive")
    r = M.rank
    if r == 0:
        return rankP + profile.d
    if M.unit_generators or not is_seminormal(M):
        raise ValueError("the monoid must be positive and seminormal")
    n = cert.level if cert is not None else 1
    return rankP + profile.d + r - n
