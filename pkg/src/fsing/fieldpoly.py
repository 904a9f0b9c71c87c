"""Prime fields and sparse multivariate polynomials over them.

Monomials are packed into a single Python int: variable ``i`` of an
``n``-variable ring occupies 32 bits starting at bit ``32*(n-1-i)``.  The
top bit of every field is a guard bit, so exponents must stay below 2**31.
Multiplying monomials is integer addition and divisibility is one
subtraction plus a mask test.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import BadPrime, DegreeOverflow, MixedRings, ParseError

FIELD_BITS = 32
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXP = 1 << (FIELD_BITS - 1)

Exps = Tuple[int, ...]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers every machine word)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``degrevlex``, ``lex`` or ``elim`` (block order).

    ``elim`` with ``split=k`` compares the first ``k`` variables by degrevlex
    first and breaks ties with degrevlex on the remaining ones, so any
    polynomial whose lead term avoids the first block lies entirely in the
    second block's subring.
    """

    kind: str = "degrevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.split < 1:
            raise ValueError("elimination order needs split >= 1")

    def blocks(self, n: int) -> List[Tuple[int, int]]:
        if self.kind == "elim":
            if self.split >= n:
                raise ValueError("elimination split must leave a second block")
            return [(0, self.split), (self.split, n)]
        return [(0, n)]

    def weight_rows(self, n: int) -> List[List[int]]:
        """Rows of a non-negative integer matrix whose lex comparison is the order.

        For a degrevlex block the rows are the block degree followed by the
        partial sums a_1+...+a_j for j = k-1 down to 1: comparing the
        partial sums lexicographically is the same as comparing
        -a_k, -a_{k-1}, ... which is reverse lex.  Lex needs no rows since
        the packed exponents already compare lexicographically.
        """
        if self.kind == "lex":
            return []
        rows = []
        for lo, hi in self.blocks(n):
            rows.append([1 if lo <= i < hi else 0 for i in range(n)])
            for j in range(hi - 1, lo, -1):
                rows.append([1 if lo <= i < j else 0 for i in range(n)])
        return rows

    def sort_key(self, exps: Sequence[int]):
        n = len(exps)
        return tuple(sum(r[i] * exps[i] for i in range(n)) for r in self.weight_rows(n)) + tuple(exps)


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class PolyRing:
    """The ambient ring F_p[x_1, ..., x_n]."""

    __slots__ = ("p", "vars", "n", "_shifts", "guard", "_index")

    def __init__(self, p: int, vars: Sequence[str]):
        p = int(p)
        if p >= 1 << 63 or not is_prime(p):
            raise BadPrime(f"{p} is not a machine-word prime")
        vars = tuple(vars)
        if not vars:
            raise ValueError("a ring needs at least one variable")
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        for v in vars:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.p = p
        self.vars = vars
        self.n = len(vars)
        self._shifts = tuple(FIELD_BITS * (self.n - 1 - i) for i in range(self.n))
        self.guard = sum(1 << (s + FIELD_BITS - 1) for s in self._shifts)
        self._index = {v: i for i, v in enumerate(vars)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.vars == other.vars

    def __hash__(self):
        return hash((self.p, self.vars))

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={list(self.vars)})"

    # -- monomial packing -------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        m = 0
        for a, s in zip(exps, self._shifts):
            if a < 0:
                raise ValueError("negative exponent")
            if a >= MAX_EXP:
                raise DegreeOverflow(f"exponent {a} exceeds 2^31")
            m |= a << s
        return m

    def unpack(self, m: int) -> Exps:
        return tuple((m >> s) & FIELD_MASK for s in self._shifts)

    def divides(self, a: int, b: int) -> bool:
        """Packed-monomial divisibility a | b."""
        g = self.guard
        return ((b | g) - a) & g == g

    def index(self, name: str) -> int:
        return self._index[name]

    # -- constructors -----------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, {0: c} if c else {})

    def gen(self, i) -> "Poly":
        if isinstance(i, str):
            i = self._index[i]
        return Poly(self, {1 << self._shifts[i]: 1})

    def gens(self) -> List["Poly"]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], c: int = 1) -> "Poly":
        c %= self.p
        return Poly(self, {self.pack(exps): c} if c else {})

    def from_dict(self, d: Mapping[Sequence[int], int]) -> "Poly":
        t: Dict[int, int] = {}
        for e, c in d.items():
            k = self.pack(e)
            t[k] = (t.get(k, 0) + c) % self.p
        return Poly(self, {k: c for k, c in t.items() if c})

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise MixedRings("polynomial belongs to a different ring")
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")


class Poly:
    """Immutable sparse polynomial; equal polynomials have equal term maps."""

    __slots__ = ("ring", "_t", "_deg")

    def __init__(self, ring: PolyRing, terms: Dict[int, int]):
        # terms must already be reduced mod p with no zero coefficients
        self.ring = ring
        self._t = terms
        self._deg = None

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            if not self._t:
                self._deg = -1
            else:
                un = self.ring.unpack
                self._deg = max(sum(un(m)) for m in self._t)
        return self._deg

    def packed_terms(self) -> Dict[int, int]:
        return self._t

    def terms(self, order: MonomialOrder = DEGREVLEX) -> List[Tuple[Exps, int]]:
        """Terms sorted from largest to smallest monomial in ``order``."""
        un = self.ring.unpack
        items = [(un(m), c) for m, c in self._t.items()]
        items.sort(key=lambda t: order.sort_key(t[0]), reverse=True)
        return items

    def lead(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Exps, int]:
        if not self._t:
            raise ValueError("zero polynomial has no lead term")
        un = self.ring.unpack
        m = max(self._t, key=lambda k: order.sort_key(un(k)))
        return un(m), self._t[m]

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._t.get(self.ring.pack(exps), 0)

    def variables_used(self) -> List[int]:
        mask = 0
        for m in self._t:
            mask |= m
        return [i for i, s in enumerate(self.ring._shifts) if (mask >> s) & FIELD_MASK]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        a, b = (self._t, other._t) if len(self._t) >= len(other._t) else (other._t, self._t)
        t = dict(a)
        for m, c in b.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: p - c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return self.ring.zero()
        if self.degree() + other.degree() >= MAX_EXP:
            raise DegreeOverflow("product degree exceeds 2^31")
        p = self.ring.p
        a, b = (self._t, other._t) if len(self._t) <= len(other._t) else (other._t, self._t)
        t: Dict[int, int] = {}
        get = t.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                k = ma + mb
                t[k] = get(k, 0) + ca * cb
        return Poly(self.ring, {m: c % p for m, c in t.items() if c % p})

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c % p for m, v in self._t.items()})

    def shift(self, exps: Sequence[int]) -> "Poly":
        """Multiply by the monomial x^exps."""
        s = self.ring.pack(exps)
        if self._t and self.degree() + sum(exps) >= MAX_EXP:
            raise DegreeOverflow("product degree exceeds 2^31")
        return Poly(self.ring, {m + s: c for m, c in self._t.items()})

    def frobenius(self, e: int = 1) -> "Poly":
        """f^(p^e), computed termwise since c^p = c in F_p."""
        q = self.ring.p ** e
        if self._t and self.degree() * q >= MAX_EXP:
            raise DegreeOverflow(f"degree {self.degree()} * {q} exceeds 2^31")
        return Poly(self.ring, {m * q: c for m, c in self._t.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        if n == 0:
            return self.ring.one()
        if not self._t:
            return self.ring.zero()
        if self.degree() * n >= MAX_EXP:
            raise DegreeOverflow(f"degree {self.degree()} * {n} exceeds 2^31")
        if len(self._t) == 1:
            (m, c), = self._t.items()
            return Poly(self.ring, {m * n: pow(c, n, self.ring.p)})
        # base-p digits: f^(d_i p^i) = (f^(p^i))^(d_i), each digit by binary powering
        p = self.ring.p
        result = self.ring.one()
        base = self
        while n:
            n, d = divmod(n, p)
            if d:
                result = result * _binpow(base, d)
            if n:
                base = base.frobenius(1)
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    def divexact(self, g: "Poly") -> "Poly":
        """Exact quotient self / g; raises ArithmeticError if g does not divide."""
        q, r = divmod_single(self, g)
        if r:
            raise ArithmeticError(f"{g} does not divide {self}")
        return q

    def derivative(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.ring.index(i)
        s = self.ring._shifts[i]
        one = 1 << s
        p = self.ring.p
        t = {}
        for m, c in self._t.items():
            a = (m >> s) & FIELD_MASK
            v = c * a % p
            if v:
                t[m - one] = v
        return Poly(self.ring, t)

    def substitute_zero(self, idx: Iterable[int]) -> "Poly":
        """Set the given variables to zero."""
        mask = 0
        for i in idx:
            mask |= FIELD_MASK << self.ring._shifts[i]
        return Poly(self.ring, {m: c for m, c in self._t.items() if not m & mask})


def _binpow(f: Poly, n: int) -> Poly:
    result = f.ring.one()
    while n:
        if n & 1:
            result = result * f
        n >>= 1
        if n:
            f = f * f
    return result


def divmod_single(f: Poly, g: Poly, order: MonomialOrder = DEGREVLEX) -> Tuple[Poly, Poly]:
    """Division of f by a single g; returns (quotient, remainder)."""
    if g.ring != f.ring:
        raise MixedRings("division across rings")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    p = ring.p
    gl_exps, glc = g.lead(order)
    gl = ring.pack(gl_exps)
    inv = pow(glc, p - 2, p)
    gtail = [(m, c) for m, c in g._t.items() if m != gl]
    key = lambda m: order.sort_key(ring.unpack(m))
    cur = dict(f._t)
    q: Dict[int, int] = {}
    r: Dict[int, int] = {}
    while cur:
        m = max(cur, key=key)
        c = cur.pop(m)
        if ring.divides(gl, m):
            s = m - gl
            k = c * inv % p
            q[s] = k
            for mt, ct in gtail:
                nm = mt + s
                v = (cur.get(nm, 0) - k * ct) % p
                if v:
                    cur[nm] = v
                else:
                    cur.pop(nm, None)
        else:
            r[m] = c
    return Poly(ring, q), Poly(ring, r)


def frobenius_decompose(f: Poly, e: int) -> Dict[Exps, Poly]:
    """Write f = sum_lambda g_lambda^(p^e) * x^lambda with 0 <= lambda_i < p^e.

    Returns {lambda: g_lambda}, omitting zero components.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    ring = f.ring
    q = ring.p ** e
    out: Dict[Exps, Dict[int, int]] = {}
    for m, c in f._t.items():
        exps = ring.unpack(m)
        lam = tuple(a % q for a in exps)
        root = ring.pack(tuple(a // q for a in exps))
        out.setdefault(lam, {})[root] = c
    return {lam: Poly(ring, t) for lam, t in out.items()}


# -- text syntax ----------------------------------------------------------


def format_monomial(ring: PolyRing, exps: Sequence[int]) -> str:
    parts = []
    for v, a in zip(ring.vars, exps):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    if not f._t:
        return "0"
    out = []
    for exps, c in f.terms():
        mono = format_monomial(f.ring, exps)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", col=pos + 1)
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("num", m.group(1), start))
            elif m.group(2):
                self.toks.append(("name", m.group(2), start))
            else:
                op = "^" if m.group(3) == "**" else m.group(3)
                self.toks.append(("op", op, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _error(self, msg):
        tok = self._peek()
        col = tok[2] + 1 if tok else len(self.text) + 1
        raise ParseError(msg, col=col)

    def parse(self) -> Poly:
        if not self.toks:
            self._error("empty polynomial")
        f = self._sum()
        if self._peek() is not None:
            self._error(f"unexpected token {self._peek()[1]!r}")
        return f

    def _sum(self) -> Poly:
        sign = 1
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.i += 1
        f = self._product()
        if sign < 0:
            f = -f
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                g = self._product()
                f = f + g if tok[1] == "+" else f - g
            else:
                return f

    def _product(self) -> Poly:
        f = self._power()
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.i += 1
                f = f * self._power()
            else:
                return f

    def _power(self) -> Poly:
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            tok = self._peek()
            if not tok or tok[0] != "num":
                self._error("exponent must be a non-negative integer")
            self.i += 1
            return base ** int(tok[1])
        return base

    def _atom(self) -> Poly:
        tok = self._peek()
        if tok is None:
            self._error("unexpected end of input")
        kind, val, _ = tok
        if kind == "num":
            self.i += 1
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring._index:
                self._error(f"unknown variable {val!r}")
            self.i += 1
            return self.ring.gen(val)
        if val == "(":
            self.i += 1
            f = self._sum()
            tok = self._peek()
            if not tok or tok[1] != ")":
                self._error("expected ')'")
            self.i += 1
            return f
        if val == "-":
            self.i += 1
            return -self._power()
        self._error(f"unexpected token {val!r}")
