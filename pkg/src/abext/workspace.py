"""JSON workspace documents: named groups, homs, extensions and chains.

Example::

    {
      "groups": {"A": "Z/2", "E": {"factors": ["4"]}, "F": {"gens": 2, "rels": [["2"], ["0"]]}},
      "homs":   {"i": {"src": "A", "tgt": "E", "matrix": [["2"]]}},
      "ses":    {"S": {"left": "A", "middle": "E", "right": "A",
                       "inclusion": "i", "projection": {"matrix": [["1"]]}}},
      "chains": {"C": ["S", "S"]}
    }

Groups are written either in the shorthand ``Z^r + Z/d1 + Z/d2``, as
``{"rank": r, "factors": [...]}``, or by an explicit presentation whose
``rels`` matrix (generators x relations) lists relations as columns.
Integers may be JSON numbers or decimal strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .abelian import AbGroup, Hom, IllDefinedHom, ValidationError, from_invariants, make_group
from .linalg import DimensionError, IntMatrix
from .ses import SES
from .splice import ESChain

SECTIONS = ("groups", "homs", "ses", "chains")


class WorkspaceError(ValueError):
    """A diagnostic tied to a line of the source document."""

    def __init__(self, message: str, line: int | None = None, name: str | None = None):
        self.line = line
        self.name = name
        where = f"line {line}: " if line is not None else ""
        who = f"{name}: " if name else ""
        super().__init__(f"{where}{who}{message}")


_TERM = re.compile(r"^(?:Z(?:\^(\d+))?|Z/(\d+)|0)$")


def parse_group_shorthand(text: str) -> AbGroup:
    """``"Z^2 + Z/6"``, ``"Z"``, ``"0"``; torsion generators come first."""
    rank, factors = 0, []
    for term in text.replace(" ", "").split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot read group term {term!r}")
        if term == "0":
            continue
        if m.group(2) is not None:
            d = int(m.group(2))
            if d == 0:
                rank += 1
            else:
                factors.append(d)
        else:
            rank += int(m.group(1) or 1)
    return from_invariants(rank, factors)


def _int(x: Any) -> int:
    if isinstance(x, bool):
        raise ValueError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and re.fullmatch(r"\s*-?\d+\s*", x):
        return int(x)
    raise ValueError(f"expected an integer or decimal string, got {x!r}")


def _matrix(rows: Any, nrows: int, ncols: int) -> IntMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValueError(f"matrix must be {nrows} x {ncols}")
    return IntMatrix([[_int(x) for x in r] for r in rows], cols=ncols)


def _rows(m: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m.tolist()]


@dataclass
class Workspace:
    groups: dict[str, AbGroup] = field(default_factory=dict)
    homs: dict[str, Hom] = field(default_factory=dict)
    ses: dict[str, SES] = field(default_factory=dict)
    chains: dict[str, ESChain] = field(default_factory=dict)

    def group(self, ref: str) -> AbGroup:
        """A declared group name, or a shorthand expression."""
        if ref in self.groups:
            return self.groups[ref]
        try:
            return parse_group_shorthand(ref)
        except ValueError:
            raise WorkspaceError(f"unknown group {ref!r}") from None

    def lookup(self, section: str, ref: str):
        table = getattr(self, section)
        if ref not in table:
            raise WorkspaceError(f"unknown {section[:-1] if section != 'ses' else 'ses'} {ref!r}")
        return table[ref]


def _line_of(text: str, section: str, name: str | None) -> int | None:
    """Line of ``"name":`` inside ``section``; a best effort for diagnostics."""
    sec = re.search(r'"%s"\s*:' % re.escape(section), text)
    start = sec.end() if sec else 0
    if name is None:
        return text.count("\n", 0, sec.start()) + 1 if sec else None
    m = re.compile(r'"%s"\s*:' % re.escape(name)).search(text, start)
    if not m:
        return None
    return text.count("\n", 0, m.start()) + 1


def _build_group(decl: Any) -> AbGroup:
    if isinstance(decl, str):
        return parse_group_shorthand(decl)
    if not isinstance(decl, dict):
        raise ValueError("group must be a shorthand string or an object")
    if "gens" in decl:
        n = _int(decl["gens"])
        rels = decl.get("rels", [[] for _ in range(n)])
        k = len(rels[0]) if rels else 0
        return make_group(n, _matrix(rels, n, k))
    unknown = set(decl) - {"rank", "factors"}
    if unknown:
        raise ValueError(f"unexpected keys {sorted(unknown)}")
    factors = [_int(d) for d in decl.get("factors", [])]
    if any(d < 0 for d in factors):
        raise ValueError("invariant factors must be non-negative")
    rank = _int(decl.get("rank", 0)) + factors.count(0)
    return from_invariants(rank, [d for d in factors if d])


def _build_hom(ws: Workspace, decl: Any, src: AbGroup | None = None, tgt: AbGroup | None = None) -> Hom:
    if isinstance(decl, str):
        h = ws.lookup("homs", decl)
        if (src is not None and h.src != src) or (tgt is not None and h.tgt != tgt):
            raise ValueError(f"hom {decl!r} has the wrong source or target")
        return h
    if not isinstance(decl, dict) or "matrix" not in decl:
        raise ValueError("hom must be a name or an object with a matrix")
    src = ws.group(decl["src"]) if "src" in decl else src
    tgt = ws.group(decl["tgt"]) if "tgt" in decl else tgt
    if src is None or tgt is None:
        raise ValueError("hom needs src and tgt")
    mat = _matrix(decl["matrix"], tgt.gens, src.gens)
    try:
        return Hom(src, tgt, mat)
    except IllDefinedHom as e:
        raise ValueError(f"not well defined: relation column {e.column} of the source is not sent to zero") from None


def _build_ses(ws: Workspace, decl: Any) -> SES:
    if not isinstance(decl, dict):
        raise ValueError("ses must be an object")
    missing = [k for k in ("left", "middle", "right", "inclusion", "projection") if k not in decl]
    if missing:
        raise ValueError(f"missing keys {missing}")
    A, E, B = ws.group(decl["left"]), ws.group(decl["middle"]), ws.group(decl["right"])
    i = _build_hom(ws, decl["inclusion"], A, E)
    p = _build_hom(ws, decl["projection"], E, B)
    return SES(A, E, B, i, p)


def _build_chain(ws: Workspace, decl: Any) -> ESChain:
    if not isinstance(decl, list) or not decl:
        raise ValueError("chain must be a non-empty list of ses names")
    return ESChain(tuple(ws.lookup("ses", s) if isinstance(s, str) else _build_ses(ws, s) for s in decl))


_BUILDERS = {
    "groups": lambda ws, decl: _build_group(decl),
    "homs": _build_hom,
    "ses": _build_ses,
    "chains": _build_chain,
}


def parse_workspace(text: str) -> Workspace:
    """Parse and validate every declaration; the first failure raises :class:`WorkspaceError`."""
    ws = Workspace()
    if not text.strip():
        return ws
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"syntax error: {e.msg}", line=e.lineno) from None
    if not isinstance(doc, dict):
        raise WorkspaceError("workspace must be a JSON object", line=1)
    unknown = set(doc) - set(SECTIONS)
    if unknown:
        key = sorted(unknown)[0]
        raise WorkspaceError(f"unknown section {key!r}", line=_line_of(text, key, None))
    for section in SECTIONS:
        entries = doc.get(section, {})
        if not isinstance(entries, dict):
            raise WorkspaceError(f"section {section!r} must be an object", line=_line_of(text, section, None))
        table = getattr(ws, section)
        for name, decl in entries.items():
            try:
                table[name] = _BUILDERS[section](ws, decl)
            except (WorkspaceError, ValidationError, DimensionError, ValueError, KeyError, TypeError) as e:
                raise WorkspaceError(
                    f"{e} ({type(e).__name__})", line=_line_of(text, section, name), name=name
                ) from None
    return ws


# ---------------------------------------------------------------------------
# Serialization


def group_to_json(G: AbGroup) -> dict:
    return {"gens": G.gens, "rels": _rows(G.rels)}


def hom_to_json(h: Hom, src: str, tgt: str) -> dict:
    return {"src": src, "tgt": tgt, "matrix": _rows(h.mat)}


def dump_workspace(ws: Workspace) -> str:
    """Workspace syntax for ``ws``; groups are written as explicit presentations."""
    names: dict[AbGroup, str] = {}
    groups: dict[str, dict] = {}

    def gname(G: AbGroup) -> str:
        if G not in names:
            n = f"_g{len(names)}"
            while n in ws.groups:
                n = "_" + n
            names[G] = n
            groups[n] = group_to_json(G)
        return names[G]

    for name, G in ws.groups.items():
        names.setdefault(G, name)
        groups[name] = group_to_json(G)
    homs = {n: hom_to_json(h, gname(h.src), gname(h.tgt)) for n, h in ws.homs.items()}
    ses = {}
    for n, S in ws.ses.items():
        ses[n] = {
            "left": gname(S.left),
            "middle": gname(S.middle),
            "right": gname(S.right),
            "inclusion": {"matrix": _rows(S.inclusion.mat)},
            "projection": {"matrix": _rows(S.projection.mat)},
        }
    chains = {}
    for n, C in ws.chains.items():
        links = []
        for k, S in enumerate(C.links):
            key = f"{n}__{k}"
            ses[key] = {
                "left": gname(S.left),
                "middle": gname(S.middle),
                "right": gname(S.right),
                "inclusion": {"matrix": _rows(S.inclusion.mat)},
                "projection": {"matrix": _rows(S.projection.mat)},
            }
            links.append(key)
        chains[n] = links
    doc = {"groups": groups, "homs": homs, "ses": ses, "chains": chains}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def ses_document(S: SES, name: str = "S") -> str:
    return dump_workspace(Workspace(ses={name: S}))
