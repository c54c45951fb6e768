"""Command-line front end: analyze, segre, rees, certify, normalize, bound.

Exit status is 0 when everything verified, 2 when some answer is
inconclusive, and 1 on a failed check or bad input.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .bounds import RingProfile, serre_bound
from .classes import (CertificationFailed, CertificationInconclusive, MnCertificate,
                      certify_Mn, gen1, is_phi_simplicial, tilt_search, verify_certificate)
from .cones import (interior_monoid, is_normal, is_seminormal, normalization,
                    seminormality_witness, seminormalization)
from .lattice import Lattice
from .monoid import AffineMonoid, is_positive, units
from .polyalg import parse_poly
from .segre import (k_of, rees_monoid, rees_segre_isomorphism, segre_certificate,
                    segre_monoid, verify_segre_iso)

SCHEMA_VERSION = 1
OK, FAILED, INCONCLUSIVE = 0, 1, 2
PROFILE_FLAGS = ("normal", "reduced", "contains_Q", "is_PID", "is_Dedekind")


class DocumentError(ValueError):
    pass


@dataclass
class MonoidDocument:
    ambient_rank: int
    generators: list
    name: str = None
    assertions: dict = field(default_factory=dict)
    hints: dict = None
    schema_version: int = SCHEMA_VERSION

    def monoid(self):
        return AffineMonoid(self.ambient_rank, tuple(tuple(g) for g in self.generators),
                            name=self.name)

    def to_dict(self):
        d = {"schema_version": self.schema_version, "ambient_rank": self.ambient_rank,
             "generators": [list(g) for g in self.generators]}
        if self.name is not None:
            d["name"] = self.name
        if self.assertions:
            d["assertions"] = self.assertions
        if self.hints is not None:
            d["hints"] = self.hints
        return d

    def profile(self, d=None):
        a = self.assertions
        dim = a.get("d", 0) if d is None else d
        return RingProfile(dim, **{k: bool(a.get(k, False)) for k in PROFILE_FLAGS})


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_document(text, source="<input>"):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError(f"{source}: top level must be an object")
    unknown = set(raw) - {"schema_version", "ambient_rank", "generators", "name", "assertions", "hints"}
    if unknown:
        raise DocumentError(f"{source}: unknown fields {sorted(unknown)}")
    if raw.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise DocumentError(f"{source}: unsupported schema_version {raw['schema_version']!r}")
    r = raw.get("ambient_rank")
    gens = raw.get("generators")
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise DocumentError(f"{source}: ambient_rank must be a nonnegative integer")
    if not isinstance(gens, list) or not all(
            isinstance(g, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in g)
            for g in gens):
        raise DocumentError(f"{source}: generators must be a list of integer arrays")
    doc = MonoidDocument(r, [list(g) for g in gens], raw.get("name"),
                         dict(raw.get("assertions") or {}), raw.get("hints"),
                         raw.get("schema_version", SCHEMA_VERSION))
    try:
        doc.monoid()
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from None
    return doc


def dump_document(doc):
    return canonical_json(doc.to_dict())


def load_document(path):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), path)


# -- reports -----------------------------------------------------------------

def _vec(v):
    return list(v)


def _cert_summary(cert):
    return {"level": cert.level, "chain": [c.level for c in cert.chain()],
            "rule": cert.rule.kind, "panel": cert.panel and f"{cert.panel.passed}/{cert.panel.total}",
            "certificate": cert.to_dict()}


def analyze_report(doc, bound=None, seed=0, d=None):
    M = doc.monoid()
    status = OK
    out = {"name": doc.name, "ambient_rank": M.ambient_rank, "generators": [_vec(g) for g in M.generators],
           "rank": M.rank}
    U = units(M)
    out["units"] = [_vec(u) for u in U]
    out["unit_rank"] = Lattice(U, M.ambient_rank).rank if U else 0
    out["positive"] = is_positive(M)
    if M.rank == 0:
        out["degenerate"] = "rank 0: R[M] = R"
        out["bounds"] = serre_bound(M, doc.profile(d)).to_dict()
        return out, status
    cone = M.cone
    out["cone"] = {"dimension": cone.dimension, "pointed": cone.pointed,
                   "facets": [_vec(f) for f in cone.facets], "rays": [_vec(r) for r in cone.rays]}
    out["normal"] = is_normal(M)
    if out["positive"]:
        out["seminormal"] = is_seminormal(M)
        w = seminormality_witness(M)
        out["seminormality_witness"] = w and _vec(w)
        out["normalization"] = [_vec(g) for g in normalization(M).generators]
        out["seminormalization"] = [_vec(g) for g in seminormalization(M).generators]
    if M.nonnegative:
        if M.rank == M.ambient_rank:
            phi = is_phi_simplicial(M, power_bound=bound)
            out["phi_simplicial"] = {"verdict": phi.kind, "powers": phi.powers and list(phi.powers),
                                     "reason": phi.reason}
            if phi.kind == "unknown":
                status = INCONCLUSIVE
        else:
            out["phi_simplicial"] = {"verdict": "no", "reason": "rank below ambient rank"}
        tilted = []
        for i in range(M.ambient_rank):
            v = tilt_search(M, i, bound)
            if v.kind == "tilted":
                tilted.append({"variable": f"x{i + 1}",
                               "exponents": {f"x{j + 1}": c for j, c in sorted(v.exponents.items())}})
            elif v.kind == "bounded":
                tilted.append({"variable": f"x{i + 1}", "verdict": "unknown", "reason": v.reason})
        out["tilted_variables"] = tilted
        out["gen1"] = [_vec(g) for g in gen1(M)]
    cert = None
    if out["positive"]:
        try:
            cert = certify_Mn(M, hints=doc.hints, seed=seed)
            out["certificate"] = _cert_summary(cert)
        except CertificationFailed as exc:
            out["certificate"] = {"status": "failed", "reason": str(exc)}
            status = FAILED
        except CertificationInconclusive as exc:
            out["certificate"] = {"status": "inconclusive", "reason": str(exc)}
            status = max(status, INCONCLUSIVE)
    rep = serre_bound(M, doc.profile(d), cert=cert,
                      assertions=[k for k, v in doc.assertions.items() if v is True], seed=seed)
    out["bounds"] = rep.to_dict()
    return out, status


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    return lines


def _flat(v):
    return isinstance(v, list) and all(isinstance(x, (int, str, bool, type(None))) or
                                       (isinstance(x, list) and all(isinstance(y, int) for y in x))
                                       for x in v)


def bound_lines(report):
    lines = []
    for e in report["entries"]:
        hyp = "; ".join(e["hypotheses"])
        lines.append(f"{e['rule']} ({e['locus']}): S-dim <= {e['bound']}  [{e['quote']}]  {hyp}")
    lines.append(f"best: S-dim <= {report['best']}")
    return lines


def emit(obj, args, bounds=None):
    if getattr(args, "text", False):
        body = dict(obj)
        b = body.pop("bounds", None) or bounds
        lines = _text(body)
        if b:
            lines.append("bounds:")
            lines.extend("  " + s for s in bound_lines(b))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(canonical_json(obj))


# -- commands ------------------------------------------------------------------

def cmd_analyze(args):
    doc = load_document(args.path)
    out, status = analyze_report(doc, args.bound, args.seed, args.dim)
    emit(out, args)
    return status


def cmd_segre(args):
    S = segre_monoid(args.m, args.n)
    out = {"m": args.m, "n": args.n, "k": k_of(args.m, args.n),
           "k_interpretation": "floor((m+n-1)/min(m,n))",
           "monoid": {"ambient_rank": S.ambient_rank, "generators": [_vec(g) for g in S.monoid.generators]}}
    status = OK
    if args.verify:
        rep = verify_segre_iso(S, args.degree_bound or 6)
        out["isomorphism"] = {"ok": rep.ok, "checks": rep.checks,
                              "counterexamples": {k: str(v) for k, v in rep.counterexamples.items()}}
        if not rep.ok:
            status = FAILED
    if args.certificate:
        try:
            out["certificate"] = _cert_summary(segre_certificate(S, seed=args.seed))
        except CertificationFailed as exc:
            out["certificate"] = {"status": "failed", "reason": str(exc)}
            status = FAILED
    emit(out, args)
    return status


def parse_ideal(text, nvars=None):
    gens = []
    polys = [parse_poly(p) for p in text.split(",") if p.strip()]
    rank = nvars or max((p.rank for p in polys), default=0)
    for piece, p in zip(text.split(","), polys):
        if len(p.terms) != 1 or list(p.terms.values()) != [1]:
            raise DocumentError(f"ideal generator {piece.strip()!r} is not a monomial")
        gens.append(tuple(p.embed(rank).terms)[0])
    return gens


def cmd_rees(args):
    gens = parse_ideal(args.ideal, args.vars)
    A = rees_monoid(gens, extended=args.extended)
    out = {"ideal": [_vec(g) for g in gens], "extended": args.extended,
           "monoid": {"ambient_rank": A.ambient_rank, "generators": [_vec(g) for g in A.generators]}}
    status = OK
    if args.verify_segre:
        m = len(gens[0])
        if sorted(gens) != sorted(tuple(int(k == i) for k in range(m)) for i in range(m)) or args.extended:
            out["segre"] = {"status": "not applicable", "reason": "ideal is not (X1..Xm)"}
            status = INCONCLUSIVE
        else:
            iso = rees_segre_isomorphism(m)
            out["segre"] = {"target": f"Segre(2,{m})", "ok": iso.ok, "checks": iso.checks,
                            "matrix": iso.matrix}
            if not iso.ok:
                status = FAILED
    emit(out, args)
    return status


def cmd_certify(args):
    with open(args.path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{args.path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(raw, dict) and "level" in raw and "monoid" in raw:
        try:
            cert = MnCertificate.from_dict(raw)
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"{args.path}: malformed certificate: {exc}") from None
        rep = verify_certificate(cert, seed=args.seed)
        failed = rep.failures()
        out = {"ok": rep.ok, "checks": [{"check": n, "ok": ok, "detail": d} for n, ok, d in rep.checks]}
        if failed:
            out["violated"] = failed
        emit(out, args)
        return OK if rep.ok else FAILED
    doc = parse_document(text, args.path)
    M = doc.monoid()
    try:
        cert = certify_Mn(M, level=args.level, hints=doc.hints, seed=args.seed)
    except CertificationFailed as exc:
        emit({"status": "failed", "reason": str(exc)}, args)
        return FAILED
    except CertificationInconclusive as exc:
        emit({"status": "inconclusive", "reason": str(exc)}, args)
        return INCONCLUSIVE
    emit(_cert_summary(cert), args)
    return OK


def cmd_normalize(args):
    doc = load_document(args.path)
    M = doc.monoid()
    if not is_positive(M):
        out = {"normal": is_normal(M), "note": "monoid has units; use the positive part for generators"}
        emit(out, args)
        return OK
    out = {"normal": is_normal(M), "seminormal": is_seminormal(M),
           "normalization": [_vec(g) for g in normalization(M).generators],
           "seminormalization": [_vec(g) for g in seminormalization(M).generators]}
    w = seminormality_witness(M)
    out["seminormality_witness"] = w and _vec(w)
    if args.interior and M.rank:
        I = interior_monoid(M, args.degree_bound)
        out["interior_generators"] = {"degree_bound": args.degree_bound or int(os.environ.get("AFFMON_DEGREE_BOUND", "40")),
                                      "generators": [_vec(g) for g in I.generators]}
    emit(out, args)
    return OK


def cmd_bound(args):
    doc = load_document(args.path)
    M = doc.monoid()
    rep = serre_bound(M, doc.profile(args.dim),
                      assertions=[k for k, v in doc.assertions.items() if v is True], seed=args.seed)
    out = rep.to_dict()
    if args.text:
        sys.stdout.write("\n".join(bound_lines(out)) + "\n")
    else:
        sys.stdout.write(canonical_json(out))
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="affmon", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for quasi-monic panels")
    common.add_argument("--degree-bound", type=int, default=None,
                        help="degree bound for enumerations (overrides AFFMON_DEGREE_BOUND)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full analysis of a monoid document")
    a.add_argument("path")
    a.add_argument("--bound", type=int, default=None, help="search bound for tilt exponents and pure powers")
    a.add_argument("--dim", type=int, default=None, help="dimension d of R (default: assertions.d or 0)")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("segre", parents=[common], help="Segre monoid of an m x n matrix")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--certificate", action="store_true")
    s.set_defaults(func=cmd_segre)

    r = sub.add_parser("rees", parents=[common], help="Rees monoid of a monomial ideal")
    r.add_argument("--ideal", required=True, help='comma-separated monomials, e.g. "x1,x2^2*x3"')
    r.add_argument("--vars", type=int, default=None, help="number of variables of the polynomial ring")
    r.add_argument("--extended", action="store_true", help="adjoin t^-1")
    r.add_argument("--verify-segre", action="store_true")
    r.set_defaults(func=cmd_rees)

    c = sub.add_parser("certify", parents=[common], help="certify a document or verify a certificate")
    c.add_argument("path")
    c.add_argument("--level", type=int, default=None)
    c.set_defaults(func=cmd_certify)

    n = sub.add_parser("normalize", parents=[common], help="normalization and seminormalization")
    n.add_argument("path")
    n.add_argument("--interior", action="store_true", help="also list interior generators")
    n.set_defaults(func=cmd_normalize)

    b = sub.add_parser("bound", parents=[common], help="Serre dimension bounds")
    b.add_argument("path")
    b.add_argument("--dim", type=int, default=None)
    b.set_defaults(func=cmd_bound)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.degree_bound is not None:
        os.environ["AFFMON_DEGREE_BOUND"] = str(args.degree_bound)
    try:
        return args.func(args)
    except (DocumentError, ValueError, OSError) as exc:
        sys.stderr.write(f"affmon: error: {exc}\n")
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
