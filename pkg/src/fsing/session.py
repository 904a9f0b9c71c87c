"""Line-oriented session files.

    # comment
    ring: p=7 vars=[x,y,z]
    quotient: x^3+y^3+z^3
    ideal m: x, y, z
    poly f: x^3+y^3+z^3
    map phi: e=1 u=x*y
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .errors import BadPrime, ParseError
from .fieldpoly import Poly, PolyRing
from .ideal import RingCtx

_RING = re.compile(r"p\s*=\s*(\d+)\s+vars\s*=\s*\[([^\]]*)\]\s*$")
_NAMED = re.compile(r"(ideal|poly|map)\s+([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")
_MAP = re.compile(r"\s*e\s*=\s*(\d+)\s+u\s*=\s*(.+)$")
RESERVED = {"quotient"}


@dataclass
class SessionFile:
    p: int
    vars: Tuple[str, ...]
    quotient: List[Poly] = field(default_factory=list)
    ideals: Dict[str, List[Poly]] = field(default_factory=dict)
    polys: Dict[str, Poly] = field(default_factory=dict)
    maps: Dict[str, Tuple[int, Poly]] = field(default_factory=dict)

    @property
    def S(self) -> PolyRing:
        return PolyRing(self.p, self.vars)

    def ring(self) -> RingCtx:
        return RingCtx(self.p, self.vars, self.quotient or None)

    def names(self) -> List[str]:
        return list(self.ideals) + list(self.polys) + list(self.maps)

    def __eq__(self, other):
        if not isinstance(other, SessionFile):
            return NotImplemented
        return (self.p, self.vars, self.quotient, self.ideals, self.polys, self.maps) == \
            (other.p, other.vars, other.quotient, other.ideals, other.polys, other.maps)


def _split_polys(ring: PolyRing, text: str, line: int, col0: int) -> List[Poly]:
    out = []
    col = col0
    for chunk in text.split(","):
        stripped = chunk.strip()
        lead = len(chunk) - len(chunk.lstrip())
        if not stripped:
            raise ParseError("empty polynomial in list", line, col + 1)
        try:
            out.append(ring.parse(stripped))
        except ParseError as exc:
            raise ParseError(exc.msg, line, col + lead + (exc.col or 1)) from None
        col += len(chunk) + 1
    return out


def parse_session(source: Union[str, Path]) -> SessionFile:
    """Parse session text; a ``Path`` is read from disk first."""
    text = source.read_text(encoding="utf-8") if isinstance(source, Path) else source
    sess: Optional[SessionFile] = None
    ring: Optional[PolyRing] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if body.startswith("ring:"):
            if sess is not None:
                raise ParseError("duplicate ring header", lineno, indent + 1)
            m = _RING.match(body[5:].strip())
            if not m:
                raise ParseError("expected 'ring: p=<prime> vars=[a,b,...]'", lineno, indent + 1)
            names = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
            try:
                ring = PolyRing(int(m.group(1)), names)
            except BadPrime as exc:
                raise BadPrime(f"line {lineno}: {exc}") from None
            except ValueError as exc:
                raise ParseError(str(exc), lineno, indent + 1) from None
            sess = SessionFile(ring.p, ring.vars)
            continue
        if sess is None:
            raise ParseError("ring header must come first", lineno, indent + 1)
        if body.startswith("quotient:"):
            if sess.quotient:
                raise ParseError("duplicate quotient line", lineno, indent + 1)
            rest = body[len("quotient:"):]
            sess.quotient = _split_polys(ring, rest, lineno, indent + len("quotient:"))
            continue
        m = _NAMED.match(body)
        if not m:
            raise ParseError(f"cannot parse line {body!r}", lineno, indent + 1)
        kind, name, rest = m.groups()
        if name in sess.names() or name in RESERVED:
            raise ParseError(f"name {name!r} already defined", lineno, indent + 1)
        col0 = indent + m.start(3)
        if kind == "ideal":
            sess.ideals[name] = _split_polys(ring, rest, lineno, col0)
        elif kind == "poly":
            polys = _split_polys(ring, rest, lineno, col0)
            if len(polys) != 1:
                raise ParseError("poly takes exactly one polynomial", lineno, col0 + 1)
            sess.polys[name] = polys[0]
        else:
            mm = _MAP.match(rest)
            if not mm:
                raise ParseError("expected 'map <name>: e=<nat> u=<poly>'", lineno, col0 + 1)
            e = int(mm.group(1))
            if e < 1:
                raise ParseError("map level must be >= 1", lineno, col0 + 1)
            u = _split_polys(ring, mm.group(2), lineno, col0 + mm.start(2))[0]
            sess.maps[name] = (e, u)
    if sess is None:
        raise ParseError("missing ring header", 1, 1)
    return sess


def format_session(sess: SessionFile) -> str:
    """Canonical text; parse_session(format_session(s)) == s."""
    lines = [f"ring: p={sess.p} vars=[{','.join(sess.vars)}]"]
    if sess.quotient:
        lines.append("quotient: " + ", ".join(map(str, sess.quotient)))
    for name, gens in sess.ideals.items():
        lines.append(f"ideal {name}: " + ", ".join(map(str, gens)))
    for name, f in sess.polys.items():
        lines.append(f"poly {name}: {f}")
    for name, (e, u) in sess.maps.items():
        lines.append(f"map {name}: e={e} u={u}")
    return "\n".join(lines) + "\n"
