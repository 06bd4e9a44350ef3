"""Declarative lattice families and the corpus manifest format.

A family spec is written either functionally, ``quotient(base=zmod(m=12),element=4Z)``,
or, on manifest lines and the command line, as ``kind key=value ...``.
Nested specs always use the functional form, lists use ``[a,b]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from pathlib import Path

import numpy as np

from .core import LatticeError, MultLattice

KINDS = ("zmod", "chain_power", "boolean", "frame", "b4", "product", "quotient",
         "localization", "file")

_PARAMS = {
    "zmod": {"m"},
    "chain_power": {"k"},
    "boolean": {"k"},
    "frame": {"poset", "points"},
    "b4": set(),
    "product": {"factors"},
    "quotient": {"base", "element"},
    "localization": {"base", "prime", "set"},
    "file": {"path"},
}


class SpecError(LatticeError, ValueError):
    """A family spec could not be parsed or has invalid parameters."""


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple = ()

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    def __str__(self):
        return format_spec(self)


def format_spec(spec: FamilySpec) -> str:
    def val(v):
        if isinstance(v, FamilySpec):
            return format_spec(v)
        if isinstance(v, tuple):
            return "[" + ",".join(val(x) for x in v) + "]"
        return str(v)
    args = ",".join(f"{k}={val(v)}" for k, v in spec.params)
    return f"{spec.kind}({args})"


def _make(kind, params: dict) -> FamilySpec:
    if kind not in KINDS:
        raise SpecError(f"unknown family kind {kind!r}")
    extra = set(params) - _PARAMS[kind]
    if extra:
        raise SpecError(f"{kind}: unknown parameter(s) {sorted(extra)}")
    for key in ("m", "k"):
        if key in params:
            try:
                params[key] = int(params[key])
            except (TypeError, ValueError):
                raise SpecError(f"{kind}: {key} must be an integer") from None
    if kind == "zmod" and params.get("m", 0) < 2:
        raise SpecError("zmod requires m >= 2")
    if kind in ("chain_power", "boolean"):
        if "k" not in params or params["k"] < 0:
            raise SpecError(f"{kind} requires k >= 0")
        if kind == "boolean" and params["k"] > 12:
            raise SpecError("boolean requires k <= 12")
    if kind == "product":
        fs = params.get("factors")
        if isinstance(fs, FamilySpec):
            fs = (fs,)
        if not fs or not all(isinstance(f, FamilySpec) for f in fs):
            raise SpecError("product requires factors=[spec,...]")
        params["factors"] = tuple(fs)
    if kind in ("quotient", "localization"):
        if not isinstance(params.get("base"), FamilySpec):
            raise SpecError(f"{kind} requires base=<spec>")
    if kind == "quotient" and "element" not in params:
        raise SpecError("quotient requires element=<id or name>")
    if kind == "localization" and ("prime" in params) == ("set" in params):
        raise SpecError("localization requires exactly one of prime= or set=")
    if kind == "file" and "path" not in params:
        raise SpecError("file requires path=<file>")
    if kind == "frame" and "poset" not in params and "points" not in params:
        raise SpecError("frame requires poset= and/or points=")
    return FamilySpec(kind, tuple(sorted(params.items())))


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*([()\[\],=]|[^\s()\[\],=]+)")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecError(f"cannot parse {text!r} at offset {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise SpecError(f"expected {expect or 'token'} in {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def spec(self):
        kind = self.take()
        params = {}
        if self.peek() == "(":
            self.take("(")
            if self.peek() != ")":
                while True:
                    key = self.take()
                    self.take("=")
                    params[key] = self.value()
                    if self.peek() == ",":
                        self.take(",")
                        continue
                    break
            self.take(")")
        return _make(kind, params)

    def value(self):
        tok = self.peek()
        if tok == "[":
            self.take("[")
            items = []
            if self.peek() != "]":
                items.append(self.spec())
                while self.peek() == ",":
                    self.take(",")
                    items.append(self.spec())
            self.take("]")
            return tuple(items)
        atom = self.take()
        if self.peek() == "(":
            self.i -= 1
            return self.spec()
        return atom


def parse_spec(text: str) -> FamilySpec:
    """Parse either the functional or the ``kind key=value ...`` form."""
    text = text.strip()
    if not text:
        raise SpecError("empty family spec")
    head = text.split(None, 1)
    if "(" not in head[0] and ("=" in text or len(head) == 1):
        # kind key=value key=value
        kind = head[0]
        params = {}
        for part in (head[1].split() if len(head) > 1 else []):
            if "=" not in part:
                raise SpecError(f"expected key=value, got {part!r}")
            key, raw = part.split("=", 1)
            p = _Parser(raw)
            params[key] = p.value()
            if p.peek() is not None:
                raise SpecError(f"trailing input in {part!r}")
        return _make(kind, params)
    p = _Parser(text)
    spec = p.spec()
    if p.peek() is not None:
        raise SpecError(f"trailing input in {text!r}")
    return spec


def parse_manifest(text: str) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_spec(line))
        except SpecError as exc:
            raise SpecError(f"manifest line {lineno}: {exc}") from None
    return out


def load_manifest(path) -> list:
    return parse_manifest(Path(path).read_text(encoding="utf-8"))


def default_manifest_path() -> Path:
    return Path(__file__).with_name("data") / "default.manifest"


def default_allowlist_path() -> Path:
    return Path(__file__).with_name("data") / "expected_discrepancies.txt"


# ---------------------------------------------------------------- generation

def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def zmod(m: int, name=None) -> MultLattice:
    """Ideal lattice of Z/mZ: ideal dZ for each divisor d, product gcd(de, m)."""
    divs = sorted(_divisors(m), reverse=True)       # bottom (d = m) first
    n = len(divs)
    pos = {d: i for i, d in enumerate(divs)}
    # leq[i, j]: divs[i]Z <= divs[j]Z  iff  divs[j] | divs[i]
    leq = np.array([[divs[i] % divs[j] == 0 for j in range(n)] for i in range(n)], dtype=bool)
    mul = np.array([[pos[gcd(divs[i] * divs[j], m)] for j in range(n)] for i in range(n)])

    def label(d):
        return "0" if d == m else "1" if d == 1 else f"{d}Z"
    return MultLattice.from_leq(leq, mul, [label(d) for d in divs], name or f"zmod(m={m})")


def chain_power(k: int, name=None) -> MultLattice:
    """Ideal lattice of Z/p^k: id j is p^(k-j), with p^i p^j = p^min(i+j, k)."""
    n = k + 1
    ids = np.arange(n)
    leq = ids[:, None] <= ids[None, :]
    exp = k - ids
    mul = k - np.minimum(exp[:, None] + exp[None, :], k)

    def label(e):
        return "0" if e == k else "1" if e == 0 else "p" if e == 1 else f"p^{e}"
    return MultLattice.from_leq(leq, mul, [label(int(e)) for e in exp], name or f"chain_power(k={k})")


def boolean(k: int, name=None) -> MultLattice:
    """Powerset of k points with multiplication equal to meet."""
    n = 1 << k
    ids = np.arange(n)
    leq = (ids[:, None] & ~ids[None, :]) == 0
    mul = ids[:, None] & ids[None, :]
    letters = "abcdefghijklmnopqrstuvwxyz"

    def label(s):
        if s == 0:
            return "0"
        if s == n - 1:
            return "1"
        return "".join(letters[i] for i in range(k) if (s >> i) & 1)
    return MultLattice.from_leq(leq, mul, [label(int(s)) for s in ids], name or f"boolean(k={k})")


def b4(name=None) -> MultLattice:
    leq = np.array([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]], dtype=bool)
    meet = np.array([[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]])
    return MultLattice.from_leq(leq, meet, ["0", "m", "n", "1"], name or "b4()")


def frame(poset: str = "", points: str = "", name=None) -> MultLattice:
    """Down-sets of a finite poset, ordered by inclusion, with mul = meet.

    ``poset`` lists relations ``x<y`` separated by ``;``; ``points`` lists
    extra isolated points separated by ``;``.
    """
    pts = [p for p in points.split(";") if p]
    rel = []
    for item in filter(None, poset.split(";")):
        if "<" not in item:
            raise SpecError(f"frame relation {item!r} must look like x<y")
        x, y = item.split("<", 1)
        rel.append((x, y))
        for p in (x, y):
            if p not in pts:
                pts.append(p)
    k = len(pts)
    if k > 12:
        raise SpecError("frame supports at most 12 points")
    index = {p: i for i, p in enumerate(pts)}
    below = np.eye(k, dtype=bool)
    for x, y in rel:
        below[index[x], index[y]] = True
    for m in range(k):
        below |= below[:, m:m + 1] & below[m:m + 1, :]
    if (below & below.T & ~np.eye(k, dtype=bool)).any():
        raise SpecError("frame relations contain a cycle")
    downsets = []
    for s in range(1 << k):
        members = [i for i in range(k) if (s >> i) & 1]
        if all((s >> j) & 1 for i in members for j in range(k) if below[j, i]):
            downsets.append(s)
    ds = np.array(downsets)
    leq = (ds[:, None] & ~ds[None, :]) == 0
    pos = {s: i for i, s in enumerate(downsets)}
    mul = np.array([[pos[a & b] for b in downsets] for a in downsets])
    full = (1 << k) - 1

    def label(s):
        if s == 0:
            return "0"
        if s == full:
            return "1"
        tops = [pts[i] for i in range(k) if (s >> i) & 1
                and not any((s >> j) & 1 and j != i and below[i, j] for j in range(k))]
        return "+".join(tops)
    return MultLattice.from_leq(leq, mul, [label(s) for s in downsets],
                                name or f"frame(poset={poset},points={points})")


def generate(spec) -> MultLattice:
    """Build the lattice described by ``spec`` (a FamilySpec or its text)."""
    from . import constructions, fileformat

    if isinstance(spec, str):
        spec = parse_spec(spec)
    label = format_spec(spec)
    kind, p = spec.kind, dict(spec.params)
    if kind == "zmod":
        return zmod(p["m"], label)
    if kind == "chain_power":
        return chain_power(p["k"], label)
    if kind == "boolean":
        return boolean(p["k"], label)
    if kind == "b4":
        return b4(label)
    if kind == "frame":
        return frame(p.get("poset", ""), p.get("points", ""), label)
    if kind == "product":
        return constructions.product(*[generate(f) for f in p["factors"]], name=label)
    if kind == "quotient":
        base = generate(p["base"])
        return constructions.quotient(base, base.resolve(p["element"]), name=label)[0]
    if kind == "localization":
        base = generate(p["base"])
        if "prime" in p:
            return constructions.localize_at_prime(base, base.resolve(p["prime"]), name=label)[0]
        S = [base.resolve(t) for t in str(p["set"]).split(";") if t]
        return constructions.localize(base, S, name=label)[0]
    if kind == "file":
        L = fileformat.load(p["path"])
        return L
    raise SpecError(f"unknown family kind {kind!r}")
