"""Per-lattice cache of everything the checks look at.

Everything here is evaluated from definitions: hollowness comes from the
pair scan (and the subset oracle where it applies), never from the kappa
shortcut, so each check can test one claim in isolation.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from ..constructions import ConstructionError, localize, quotient
from ..core import MultLattice, join, meet
from ..elements import element_masks, lattice_profile
from ..hollow import csh_by_definition, strongly_hollow_mask


class Context:
    def __init__(self, L: MultLattice):
        self.L = L
        self.n = L.n
        self.leq = L.leq
        self.J = L.join_table
        self.M = L.meet_table
        self.mul = L.mul_table
        self.bot = L.bottom
        self.top = L.top
        self._quotients = {}
        self._localizations = {}

    # ----------------------------------------------------------- flags
    @cached_property
    def masks(self):
        return element_masks(self.L)

    @cached_property
    def prof(self):
        return lattice_profile(self.L)

    @property
    def flags(self):
        return self.prof.flags

    @cached_property
    def res(self):
        return self.L.residual_table

    @cached_property
    def sh(self):
        return strongly_hollow_mask(self.L)

    @cached_property
    def csh(self):
        return csh_by_definition(self.L)

    @cached_property
    def kappa(self):
        return np.array([join(self.L, np.flatnonzero(~self.leq[a])) for a in range(self.n)])

    @cached_property
    def l_a(self):
        return np.array([self.res[self.kappa[a], a] for a in range(self.n)])

    @cached_property
    def maximals(self):
        return sorted(self.prof.max_set)

    @cached_property
    def jac(self):
        return self.prof.jacobson

    @property
    def nontrivial(self):
        """Stands in for "1 is compact" and for the C-lattice hypotheses."""
        return self.n >= 2

    @property
    def weak_r(self):
        return self.nontrivial and self.flags["principally_generated"]

    def nonzero(self, a):
        return a != self.bot

    def flag(self, name, a):
        return bool(self.masks[name][a])

    def square(self, a):
        return int(self.mul[a, a])

    def below_strict(self, a):
        return [x for x in range(self.n) if x != a and self.leq[x, a]]

    def maximal_of(self, ids):
        ids = list(ids)
        return [x for x in ids if not any(y != x and self.leq[x, y] for y in ids)]

    def comparable_to_all(self, a):
        return bool((self.leq[a] | self.leq[:, a]).all())

    def greatest(self, ids):
        """The greatest element of ``ids`` if there is one, else None."""
        ids = list(ids)
        for g in ids:
            if all(self.leq[x, g] for x in ids):
                return g
        return None

    def meet_of(self, ids):
        return meet(self.L, ids)

    def join_of(self, ids):
        return join(self.L, ids)

    # --------------------------------------------------- derived lattices
    def quotient(self, i):
        if i not in self._quotients:
            Q, proj = quotient(self.L, i)
            self._quotients[i] = (Q, proj, np.flatnonzero(self.leq[i]))
        return self._quotients[i]

    def localization(self, S):
        """(Q_S, saturation map) or the ConstructionError raised building it."""
        key = frozenset(int(s) for s in S)
        if key not in self._localizations:
            try:
                self._localizations[key] = localize(self.L, sorted(key))
            except ConstructionError as exc:
                self._localizations[key] = exc
        return self._localizations[key]

    def complement_set(self, q):
        return [s for s in range(self.n) if not self.leq[s, q]]

    def is_closed(self, S):
        S = set(S)
        return self.top in S and all(int(self.mul[s, t]) in S for s in S for t in S)
