"""Command-line front end.

    abext [--workspace FILE] [--json] COMMAND [key=value ...]

Exit status: 0 when every verdict holds, 1 when a verdict is false or the
input does not validate, 2 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .abelian import AbGroup, ValidationError, hom_group
from .ext import baer_sum, classify, ext_group
from .fibseq import fibre_sequence_check
from .linalg import DimensionError
from .pullpush import pullback, pushout
from .ses import SES
from .six_term import six_term
from .splice import les_check, trivialize_splice
from .workspace import Workspace, WorkspaceError, parse_workspace, ses_document

COMMANDS = (
    "validate",
    "invariants",
    "hom-group",
    "ext",
    "classify",
    "baer-sum",
    "pullback",
    "pushout",
    "six-term",
    "fibseq-check",
    "les-check",
    "trivialize",
)


class UsageError(Exception):
    pass


class Result:
    def __init__(self, lines: list[str], data: dict, ok: bool = True):
        self.lines, self.data, self.ok = lines, data, ok


def _params(items: list[str]) -> dict[str, str]:
    out = {}
    for it in items:
        if "=" not in it:
            raise UsageError(f"expected key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _need(params: dict[str, str], *keys: str) -> list[str]:
    missing = [k for k in keys if k not in params]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join(missing)}")
    return [params[k] for k in keys]


def _group_json(G: AbGroup) -> dict:
    return {"rank": G.free_rank, "torsion": [str(d) for d in G.torsion], "text": str(G)}


def _ses_text(S: SES) -> str:
    return f"{S.left} -> {S.middle} -> {S.right}"


def _class_json(c) -> list[str]:
    return [str(x) for x in c.canonical()]


def cmd_validate(ws: Workspace, p: dict) -> Result:
    lines = [f"group {n}: {G}" for n, G in ws.groups.items()]
    lines += [f"hom {n}: {h.src} -> {h.tgt}" for n, h in ws.homs.items()]
    lines += [f"ses {n}: {_ses_text(S)}" for n, S in ws.ses.items()]
    lines += [f"chain {n}: degree {C.degree}, {C.base} over {C.coeff}" for n, C in ws.chains.items()]
    lines.append("workspace valid")
    data = {
        "groups": {n: _group_json(G) for n, G in ws.groups.items()},
        "homs": sorted(ws.homs),
        "ses": sorted(ws.ses),
        "chains": sorted(ws.chains),
        "valid": True,
    }
    return Result(lines, data)


def cmd_invariants(ws: Workspace, p: dict) -> Result:
    (ref,) = _need(p, "G")
    G = ws.group(ref)
    return Result([f"{ref} ≅ {G}"], _group_json(G))


def cmd_hom_group(ws: Workspace, p: dict) -> Result:
    b, a = _need(p, "B", "A")
    B, A = ws.group(b), ws.group(a)
    H = hom_group(B, A).base
    return Result([f"Hom({B}, {A}) ≅ {H}"], {"hom": _group_json(H)})


def cmd_ext(ws: Workspace, p: dict) -> Result:
    b, a = _need(p, "B", "A")
    B, A = ws.group(b), ws.group(a)
    X = ext_group(B, A).group
    return Result([f"Ext^1({B}, {A}) ≅ {X}"], {"ext": _group_json(X)})


def _classify_lines(S: SES) -> tuple[list[str], dict]:
    X = ext_group(S.right, S.left)
    c = classify(S, X)
    lines = [
        f"extension {_ses_text(S)}",
        f"class in Ext^1({S.right}, {S.left}) ≅ {X.group}: {list(c.canonical())}",
        f"split: {'yes' if c.is_zero() else 'no'}",
    ]
    return lines, {"ext": _group_json(X.group), "class": _class_json(c), "split": c.is_zero()}


def cmd_classify(ws: Workspace, p: dict) -> Result:
    (s,) = _need(p, "S")
    lines, data = _classify_lines(ws.lookup("ses", s))
    return Result(lines, data)


def _with_document(S: SES, lines: list[str], data: dict) -> Result:
    more, cls = _classify_lines(S)
    data = dict(data, **cls, workspace=json.loads(ses_document(S)))
    return Result(lines + more, data)


def cmd_baer_sum(ws: Workspace, p: dict) -> Result:
    e, f = _need(p, "E", "F")
    S = baer_sum(ws.lookup("ses", e), ws.lookup("ses", f))
    return _with_document(S, [f"Baer sum of {e} and {f}"], {})


def cmd_pullback(ws: Workspace, p: dict) -> Result:
    g, s = _need(p, "g", "S")
    S = pullback(ws.lookup("homs", g), ws.lookup("ses", s))[0]
    return _with_document(S, [f"pullback of {s} along {g}"], {})


def cmd_pushout(ws: Workspace, p: dict) -> Result:
    f, s = _need(p, "f", "S")
    S = pushout(ws.lookup("homs", f), ws.lookup("ses", s))[0]
    return _with_document(S, [f"pushout of {s} along {f}"], {})


def cmd_six_term(ws: Workspace, p: dict) -> Result:
    s, g = _need(p, "S", "G")
    rep = six_term(ws.lookup("ses", s), ws.group(g))
    data = {
        "nodes": [_group_json(n) for n in rep.nodes],
        "exact": list(rep.exact_at),
        "ok": rep.ok,
    }
    return Result(rep.lines(), data, rep.ok)


def cmd_fibseq_check(ws: Workspace, p: dict) -> Result:
    s, g = _need(p, "S", "G")
    rep = fibre_sequence_check(ws.lookup("ses", s), ws.group(g))
    data = {
        "composite_split": rep.composite_split,
        "section_round_trip": rep.section_round_trip,
        "contraction": rep.contraction,
        "fibre_points": rep.fibre_points,
        "class_exact": rep.class_exact,
        "six_term_agrees": rep.six_term_agrees,
        "ok": rep.ok,
    }
    return Result(rep.lines(), data, rep.ok)


def cmd_les_check(ws: Workspace, p: dict) -> Result:
    s, g = _need(p, "S", "G")
    rep = les_check(ws.lookup("ses", s), ws.group(g), int(p.get("max_degree", "2")))
    data = {
        "six_term_exact": list(rep.six_term_exact),
        "trivialized": rep.trivialized,
        "swaps": rep.swaps,
        "ext1_tail_surjective": rep.ext1_tail_surjective,
        "ok": rep.ok,
    }
    return Result(rep.lines(), data, rep.ok)


def cmd_trivialize(ws: Workspace, p: dict) -> Result:
    if "C" in p:
        C = ws.lookup("chains", p["C"])
        if C.degree != 2:
            raise WorkspaceError(f"chain {p['C']!r} has degree {C.degree}; only degree 2 is supported")
        F, E = C.links
    else:
        f, e = _need(p, "F", "E")
        F, E = ws.lookup("ses", f), ws.lookup("ses", e)
    zz = trivialize_splice(F, E)
    ok = zz.verify()
    lines = [f"splice {F.left} ~> {F.right} ~> {E.right}"]
    for k, (d, z) in enumerate(zz.steps):
        arrow = "<-" if d < 0 else "->"
        lines.append(f"step {k + 1} {arrow} along {z.f.src} -> {z.f.tgt}")
    lines.append(f"zig-zag to the basepoint verified: {ok}")
    return Result(lines, {"steps": len(zz.steps), "verified": ok}, ok)


HANDLERS: dict[str, Callable[[Workspace, dict], Result]] = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "hom-group": cmd_hom_group,
    "ext": cmd_ext,
    "classify": cmd_classify,
    "baer-sum": cmd_baer_sum,
    "pullback": cmd_pullback,
    "pushout": cmd_pushout,
    "six-term": cmd_six_term,
    "fibseq-check": cmd_fibseq_check,
    "les-check": cmd_les_check,
    "trivialize": cmd_trivialize,
}


def run_command(cmd: str, ws: Workspace, params: dict[str, str]) -> tuple[Result, int]:
    if cmd not in HANDLERS:
        raise UsageError(f"unknown command {cmd!r}")
    res = HANDLERS[cmd](ws, params)
    return res, 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abext", description="Extensions of finitely generated abelian groups.")
    ap.add_argument("--workspace", metavar="FILE", help="workspace JSON document (default: stdin)")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("params", nargs="*", metavar="key=value")
    return ap


def _read_workspace(path: str | None) -> str:
    if path and path != "-":
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    if sys.stdin is None or sys.stdin.isatty():
        return ""
    return sys.stdin.read()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        params = _params(args.params)
        ws = parse_workspace(_read_workspace(args.workspace))
        res, code = run_command(args.command, ws, params)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (WorkspaceError, ValidationError, DimensionError, OSError) as e:
        if args.json:
            print(json.dumps({"command": args.command, "error": str(e), "ok": False}, indent=2, sort_keys=True))
        else:
            print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    if args.json:
        doc = {"command": args.command, "ok": res.ok, "result": res.data}
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(res.lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
