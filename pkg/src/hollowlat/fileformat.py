"""Line-based text format for multiplicative lattices.

::

    lattice <name>
    n <count>
    bottom <id>
    top <id>
    name <id> <label>     # optional; only written for non-default labels
    cover <i> <j>         # j covers i
    mul <i> <j> <k>       # i*j = k, required exactly once for every i <= j

``#`` starts a comment. :func:`dumps` emits the canonical form: covers and
mul entries sorted lexicographically, mul only for ``i <= j``.
"""
from __future__ import annotations

import numpy as np

from .core import LatticeError, MultLattice, NotALatticeError, StructureError, lattice_tables


class LoadError(LatticeError):
    """The text is not a well-formed lattice description."""

    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


def dumps(L: MultLattice) -> str:
    out = [f"lattice {L.name}", f"n {L.n}", f"bottom {L.bottom}", f"top {L.top}"]
    for i, label in enumerate(L.names):
        if label != str(i):
            out.append(f"name {i} {label}")
    out.extend(f"cover {i} {j}" for i, j in L.covers)
    n = L.n
    out.extend(f"mul {i} {j} {int(L.mul_table[i, j])}" for i in range(n) for j in range(i, n))
    return "\n".join(out) + "\n"


def dump(L: MultLattice, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(L))


def _ints(tokens, count, lineno, what):
    if len(tokens) != count:
        raise LoadError(f"'{what}' expects {count} arguments, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise LoadError(f"'{what}' arguments must be integers", lineno) from None


def loads(text: str) -> MultLattice:
    name = None
    n = bottom = top = None
    labels = {}
    covers = []
    muls = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "lattice":
            if len(rest) != 1:
                raise LoadError("'lattice' expects one name token", lineno)
            name = rest[0]
        elif key in ("n", "bottom", "top"):
            (v,) = _ints(rest, 1, lineno, key)
            if key == "n":
                if n is not None:
                    raise LoadError("duplicate 'n'", lineno)
                if v < 1:
                    raise LoadError("n must be positive", lineno)
                n = v
            elif key == "bottom":
                bottom = v
            else:
                top = v
        elif key == "name":
            if len(rest) != 2:
                raise LoadError("'name' expects an id and a label", lineno)
            (i,) = _ints(rest[:1], 1, lineno, key)
            if i in labels:
                raise LoadError(f"duplicate name for element {i}", lineno)
            labels[i] = rest[1]
        elif key == "cover":
            covers.append((*_ints(rest, 2, lineno, key), lineno))
        elif key == "mul":
            i, j, k = _ints(rest, 3, lineno, key)
            pair = (min(i, j), max(i, j))
            if pair in muls:
                raise LoadError(f"duplicate mul entry for {pair}", lineno)
            muls[pair] = (k, lineno)
        else:
            raise LoadError(f"unknown directive {key!r}", lineno)

    if name is None:
        raise LoadError("missing 'lattice' line")
    if n is None or bottom is None or top is None:
        raise LoadError("missing one of 'n', 'bottom', 'top'")

    def in_range(v, lineno):
        if not 0 <= v < n:
            raise LoadError(f"id {v} out of range [0, {n})", lineno)

    in_range(bottom, None)
    in_range(top, None)
    leq = np.eye(n, dtype=bool)
    for i, j, lineno in covers:
        in_range(i, lineno)
        in_range(j, lineno)
        if i == j:
            raise LoadError(f"cover {i} {i} is a cycle", lineno)
        leq[i, j] = True
    # reflexive-transitive closure (Warshall)
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise LoadError("cover relation contains a cycle")
    try:
        join_t, meet_t, bot, tp = lattice_tables(leq)
    except NotALatticeError as exc:
        raise LoadError(f"order is not a lattice: {exc}") from None
    if bot != bottom or tp != top:
        raise LoadError(f"declared bottom/top ({bottom}, {top}) do not match the order ({bot}, {tp})")

    mul = np.full((n, n), -1, dtype=np.int64)
    for (i, j), (k, lineno) in muls.items():
        in_range(i, lineno)
        in_range(k, lineno)
        mul[i, j] = mul[j, i] = k
    missing = np.argwhere(mul < 0)
    if len(missing):
        i, j = sorted(map(int, missing[0]))
        raise LoadError(f"missing mul entry for ({i}, {j})")
    names = tuple(labels.get(i, str(i)) for i in range(n))
    try:
        return MultLattice(leq, join_t, meet_t, bottom, top, names, name, mul)
    except StructureError as exc:
        raise LoadError(str(exc)) from None


def load(path) -> MultLattice:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
