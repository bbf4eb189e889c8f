"""Command line front end: polproj group | verify | parse."""

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass

from .forms import HERMITIAN, QUADRATIC, SYMPLECTIC, FormError, FormSpec, space_label
from .gf import FieldError, gf
from .permgrp import catalog_matches
from .polar import LOWER, UPPER, PolarError, build
from .proj import ProjError
from .verify import (DISCREPANCY, EXHAUSTIVE, FAIL, PASS, SAMPLED, Report, VerifyError,
                     check_conic_elation, check_maximal_subspace_groups, check_nonmax_lower,
                     check_normset, check_oddeven, check_reflection_theorems,
                     check_triangles_generation, check_upanddown_generation, gamma_suite,
                     projectivity_groups, standard_subspace)

EXIT = {PASS: 0, FAIL: 1, DISCREPANCY: 2}
EXIT_ERROR = 3

CHECKS = ("triangles", "upanddown", "gamma", "reflections", "oddeven", "normset",
          "maxsubspace", "nonmaxlower", "conic-elation")

# sizes above this many nodes default to sampled generation
SAMPLE_THRESHOLD = 150


class CliError(ValueError):
    pass


class ParseError(CliError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class SemanticError(CliError):
    pass


class UnknownCheck(CliError):
    pass


@dataclass(frozen=True)
class Selector:
    kind: str  # point, line, subspace, max
    d: int = None
    side: str = None

    def dim(self, rank):
        """Projective dimension of the selected subspace."""
        return {"point": 0, "line": 1, "max": rank - 1}.get(self.kind, self.d)


_TOKEN = re.compile(r"\s*(?:(Sp|O|U)\(|(n|q|corank)=(\d+)|(,)|(\))|"
                    r"(point|line|max|subspace\(d=(\d+)\))(?::(upper|lower))?)")


def parse_spec(text):
    """Parse `kind(kv,...) [residue]` into (FormSpec, Selector or None)."""
    pos = 0
    m = _TOKEN.match(text, pos)
    if not m or not m.group(1):
        raise ParseError("expected Sp(, O( or U(", _skip(text, pos))
    kind = m.group(1)
    pos = m.end()
    kv = {}
    while True:
        m = _TOKEN.match(text, pos)
        if not m or not m.group(2):
            raise ParseError("expected n=, q= or corank=", _skip(text, pos))
        key = m.group(2)
        if key in kv:
            raise ParseError(f"repeated key {key}", m.start(2))
        kv[key] = int(m.group(3))
        pos = m.end()
        m = _TOKEN.match(text, pos)
        if m and m.group(4):
            pos = m.end()
            continue
        if m and m.group(5):
            pos = m.end()
            break
        raise ParseError("expected ',' or ')'", _skip(text, pos))
    sel = None
    if text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if not m or not m.group(6):
            raise ParseError("expected a residue selector", _skip(text, pos))
        word = m.group(6)
        if word.startswith("subspace"):
            sel = Selector("subspace", int(m.group(7)), m.group(8))
        else:
            sel = Selector(word, None, m.group(8))
        pos = m.end()
        if text[pos:].strip():
            raise ParseError("trailing text", _skip(text, pos))
    return _semantic(kind, kv), _default_side(sel)


def _skip(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _default_side(sel):
    if sel is None or sel.side is not None:
        return sel
    return Selector(sel.kind, sel.d, LOWER if sel.kind == "max" else UPPER)


def _semantic(kind, kv):
    for need in ("n", "q"):
        if need not in kv:
            raise SemanticError(f"missing {need}=")
    n, q = kv["n"], kv["q"]
    try:
        if kind == "Sp":
            if "corank" in kv:
                raise SemanticError("symplectic spaces take no corank")
            return FormSpec(SYMPLECTIC, gf(q), n)
        if kind == "O":
            if "corank" not in kv:
                raise SemanticError("O(...) needs corank=1 or corank=2")
            if kv["corank"] == 0:
                raise SemanticError("corank 0 quadrics are top-thin (type D), out of scope")
            return FormSpec(QUADRATIC, gf(q), n, kv["corank"])
        return FormSpec(HERMITIAN, gf(q * q), n, kv.get("corank", 0))
    except (FormError, FieldError) as exc:
        raise SemanticError(str(exc)) from exc


def render_spec(S, sel=None):
    out = space_label(S)
    if sel is not None:
        word = f"subspace(d={sel.d})" if sel.kind == "subspace" else sel.kind
        out += f" {word}:{sel.side}"
    return out


@dataclass
class RunConfig:
    seed: int = 0
    cap_points: int = 5000
    mode: str = None
    out: str = None
    timings: bool = False


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("POLPROJ_SEED")
    return int(env) if env else 0


def _subspace_witness(U):
    return {"field": f"GF({U.field.q})", "rows": [list(r) for r in U.rows]}


def _candidates(S):
    q = S.field.q
    qs = sorted({q, S.field.sqrt_q} if S.kind == HERMITIAN else {q})
    cands = [("Sym", (k,)) for k in range(2, 13)] + [("Alt", (k,)) for k in range(4, 13)]
    for qq in qs:
        for k in range(2, 7):
            cands += [("PGL", (k, qq)), ("PSL", (k, qq))]
            cands += [("PSp", (2 * k, qq)), ("Sp", (2 * k, qq)), ("PGU", (k, qq)), ("PSU", (k, qq))]
            if qq % 2:
                cands += [("SO_odd", (2 * k + 1, qq)), ("Omega_odd", (2 * k + 1, qq))]
            cands.append(("GO_minus", (2 * k, qq)))
    if S.kind == HERMITIAN:
        for k in range(2, 7):
            cands.append(("PSL_sub", (k, q, S.field.sqrt_q)))
    return list(dict.fromkeys(cands))


def cmd_group(S, sel, cfg):
    sel = sel or Selector("point", None, UPPER)
    P = build(S, cfg.cap_points)
    F = standard_subspace(S, sel.dim(S.rank) + 1)
    nodes = len(P.singular_subspaces_vec(F.dim))
    mode = cfg.mode or (EXHAUSTIVE if nodes <= SAMPLE_THRESHOLD else SAMPLED)
    res = projectivity_groups(P, F, sel.side, mode, cfg.seed)
    cands = _candidates(S)
    catalog = [f"Pi={m}" for m in catalog_matches(res.order_pi, cands)]
    catalog += [f"Pi+={m}" for m in catalog_matches(res.order_pi_plus, cands)]
    return Report("group", render_spec(S, sel), mode, cfg.seed, PASS, order_pi=res.order_pi,
                  order_pi_plus=res.order_pi_plus, index=res.index, catalog=catalog,
                  witnesses={"base": _subspace_witness(F), "chambers": len(res.residue.chambers),
                             "nodes": nodes, "loops": res.loops,
                             "generators": len(res.group.plain.generators),
                             "odd_type_reversing": res.type_consistent})


def _run_check(check, S, sel, cfg):
    P = build(S, cfg.cap_points)
    seed = cfg.seed
    r = S.rank

    def sub(default_dim):
        d = sel.dim(r) if sel is not None else default_dim
        return standard_subspace(S, d + 1)

    if check == "triangles":
        return check_triangles_generation(P, sub(0), seed)
    if check == "upanddown":
        return check_upanddown_generation(P, sub(0), seed)
    if check == "gamma":
        if r == 2:
            return gamma_suite(P, [0], seed=seed, exhaustive=True)
        return gamma_suite(P, list(range(r)), pairs=50, seed=seed)
    if check == "reflections":
        return check_reflection_theorems(P, sub(0), seed)
    if check == "oddeven":
        d = sel.dim(r) if sel is not None else 1
        return check_oddeven(P, d, 100, seed)
    if check == "normset":
        return check_normset(P, seed=seed)
    if check == "maxsubspace":
        return check_maximal_subspace_groups(P, seed=seed)
    if check == "nonmaxlower":
        return check_nonmax_lower(P, sub(1), seed=seed)
    raise UnknownCheck(check)


def _conic(text):
    m = re.fullmatch(r"\s*q=(\d+)\s*", text)
    if not m:
        raise ParseError("expected q=<int>", 0)
    try:
        return gf(int(m.group(1)))
    except FieldError as exc:
        raise SemanticError(str(exc)) from exc


def cmd_verify(check, specs, cfg):
    if check != "all" and check not in CHECKS:
        raise UnknownCheck(f"unknown check {check!r}; known: {', '.join(CHECKS)}")
    reports = []
    for text in specs:
        if check == "conic-elation" or (check == "all" and text.strip().startswith("q=")):
            t0 = time.perf_counter()
            reports.append(_timed(check_conic_elation(_conic(text)), cfg, t0))
            continue
        S, sel = parse_spec(text)
        todo = [c for c in CHECKS if c != "conic-elation"] if check == "all" else [check]
        for c in todo:
            t0 = time.perf_counter()
            try:
                rep = _run_check(c, S, sel, cfg)
            except VerifyError:
                if check == "all":
                    continue
                raise
            rep.spec = render_spec(S, sel)
            reports.append(_timed(rep, cfg, t0))
    return reports


def _timed(rep, cfg, t0):
    rep.ms = int((time.perf_counter() - t0) * 1000) if cfg.timings else None
    return rep


def emit_report(reports, path=None):
    doc = {"version": 1, "runs": [r.to_dict() for r in reports]}
    text = json.dumps(doc, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def exit_status(reports):
    outs = {r.outcome for r in reports}
    if FAIL in outs:
        return EXIT[FAIL]
    if DISCREPANCY in outs:
        return EXIT[DISCREPANCY]
    return 0


def _summary(rep):
    parts = [rep.check, rep.spec, rep.outcome]
    if rep.order_pi is not None:
        parts.append(f"|Pi|={rep.order_pi} |Pi+|={rep.order_pi_plus} index={rep.index}")
    return "  ".join(parts)


def build_parser():
    ap = argparse.ArgumentParser(prog="polproj", description="Projectivity groups of finite polar spaces")
    sp = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--cap-points", type=int, default=5000)
        p.add_argument("--mode", choices=(EXHAUSTIVE, SAMPLED), default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--timings", action="store_true", help="record wall-clock ms in reports")

    g = sp.add_parser("group", help="orders of the projectivity groups of a residue")
    g.add_argument("spec")
    common(g)
    v = sp.add_parser("verify", help="run verification checks")
    v.add_argument("check")
    v.add_argument("specs", nargs="+")
    common(v)
    p = sp.add_parser("parse", help="echo the canonical form of a spec")
    p.add_argument("spec")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "parse":
            S, sel = parse_spec(args.spec)
            print(render_spec(S, sel))
            return 0
        cfg = RunConfig(_seed(args), args.cap_points, args.mode, args.out, args.timings)
        if args.cmd == "group":
            S, sel = parse_spec(args.spec)
            t0 = time.perf_counter()
            reports = [_timed(cmd_group(S, sel, cfg), cfg, t0)]
        else:
            reports = cmd_verify(args.check, args.specs, cfg)
        emit_report(reports, cfg.out)
        if cfg.out is not None:
            for rep in reports:
                print(_summary(rep))
        return exit_status(reports)
    except (CliError, FormError, FieldError, PolarError, ProjError, VerifyError, OSError) as exc:
        print(f"polproj: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
