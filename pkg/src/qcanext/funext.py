"""Extending a functor ``G: C → D`` to filters, ideals and canonical extensions.

On the intermediate level::

    G_l(f) = f ∘ G                        filters of D → copresheaves on C
    G_r(i) = i ∘ G                        ideals of D  → presheaves on C
    G_π(i)(d) = ⊔_c D(d, Gc) · i(c)       presheaves on C → presheaves on D
    G_σ(f)(d) = ⊔_c f(c) · D(Gc, d)       copresheaves on C → copresheaves on D

and on concepts ``G^l, G^r: D^δ → C^δ`` and ``G^π, G^σ: C^δ → D^δ`` are the
weighted (co)limits of the transported closed and open elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .canext import CanExt
from .errors import ClassNotClosed, ShapeMismatch
from .limits import Verdict, colimit_instances, limit_instances
from .macneille import Concept, closure, coclosure, concept_colimit, concept_limit
from .relation import dot
from .space import SpaceMap, check_functor

__all__ = [
    "precompose",
    "gpi",
    "gsigma",
    "check_exchange",
    "ExtensionBundle",
    "glift",
    "gext",
    "check_adjunction",
    "check_virtual_adjoint",
    "check_functoriality",
    "commutation_report",
]


def precompose(G: SpaceMap, v) -> tuple:
    """``v ∘ G``; serves as both ``G_l`` (filters) and ``G_r`` (ideals)."""
    if len(v) != len(G.target):
        raise ShapeMismatch("vector must live on the target of G")
    return tuple(v[g] for g in G.assignment)


def gpi(G: SpaceMap, i) -> tuple:
    """``G_π(i) = colim_i D(-, G)``, pointwise ``d ↦ ⊔_c D(d, Gc) · i(c)``."""
    D = G.target
    q = D.quantale
    if len(i) != len(G.source):
        raise ShapeMismatch("presheaf must live on the source of G")
    return tuple(
        q._join([q._mul(D.hom[d][g], w) for g, w in zip(G.assignment, i)])
        for d in range(len(D))
    )


def gsigma(G: SpaceMap, f) -> tuple:
    """``G_σ(f) = lim_f D(G, -)``, pointwise ``d ↦ ⊔_c f(c) · D(Gc, d)``."""
    D = G.target
    q = D.quantale
    if len(f) != len(G.source):
        raise ShapeMismatch("copresheaf must live on the source of G")
    return tuple(
        q._join([q._mul(w, D.hom[g][d]) for g, w in zip(G.assignment, f)])
        for d in range(len(D))
    )


def check_exchange(G: SpaceMap, f, i, equation: str = "l/pi") -> Verdict:
    """One of the two exchange equalities for a single pair.

    ``"l/pi"``: ``G_l(f) • i = f • G_π(i)`` with f on D and i on C;
    ``"sigma/r"``: ``f • G_r(i) = G_σ(f) • i`` with f on C and i on D.
    """
    q = G.source.quantale
    if equation == "l/pi":
        ok = dot(q, precompose(G, f), i) == dot(q, f, gpi(G, i))
    elif equation == "sigma/r":
        ok = dot(q, f, precompose(G, i)) == dot(q, gsigma(G, f), i)
    else:
        raise ValueError(f"unknown equation {equation!r}")
    return Verdict(ok, None if ok else (equation, f, i))


@dataclass(frozen=True)
class ExtensionBundle:
    """A functor together with canonical extensions of its source and target."""

    G: SpaceMap
    EC: CanExt
    ED: CanExt

    def __post_init__(self):
        if self.G.source != self.EC.base or self.G.target != self.ED.base:
            raise ShapeMismatch("G must go from the base of EC to the base of ED")
        report = check_functor(self.G)
        if not report:
            raise ShapeMismatch(f"G is not a functor: fails at {report.witness}")

    def exchange_sweep(self) -> Verdict:
        """Both exchange equalities over every pair of class members."""
        for f in self.ED.filters:
            for i in self.EC.ideals:
                v = check_exchange(self.G, f, i, "l/pi")
                if not v:
                    return v
        for f in self.EC.filters:
            for i in self.ED.ideals:
                v = check_exchange(self.G, f, i, "sigma/r")
                if not v:
                    return v
        return Verdict(True)

    # class-level tables, one entry per filter or ideal

    @cached_property
    def gl_table(self) -> tuple:
        return tuple(precompose(self.G, f) for f in self.ED.filters)

    @cached_property
    def gr_table(self) -> tuple:
        return tuple(precompose(self.G, i) for i in self.ED.ideals)

    @cached_property
    def gpi_table(self) -> tuple:
        return tuple(gpi(self.G, i) for i in self.EC.ideals)

    @cached_property
    def gsigma_table(self) -> tuple:
        return tuple(gsigma(self.G, f) for f in self.EC.filters)

    def _first_outside(self, table, index):
        for k, v in enumerate(table):
            if v not in index:
                return k
        return None

    @cached_property
    def l_violator(self):
        return self._first_outside(self.gl_table, self.EC.filter_index)

    @cached_property
    def r_violator(self):
        return self._first_outside(self.gr_table, self.EC.ideal_index)

    @cached_property
    def pi_violator(self):
        return self._first_outside(self.gpi_table, self.ED.ideal_index)

    @cached_property
    def sigma_violator(self):
        return self._first_outside(self.gsigma_table, self.ED.filter_index)

    def preconditions(self) -> dict:
        """Which class-closure hypotheses hold."""
        return {
            "l": self.l_violator is None,
            "r": self.r_violator is None,
            "pi": self.pi_violator is None,
            "sigma": self.sigma_violator is None,
        }

    def require(self, side):
        k = self.l_violator if side == "l" else self.r_violator
        if k is not None:
            if side == "l":
                name, vec = self.ED.context.X.points[k], self.ED.filters[k]
            else:
                name, vec = self.ED.context.A.points[k], self.ED.ideals[k]
            raise ClassNotClosed(side, name, vec)

    # transported closed and open elements

    @cached_property
    def gl_closed(self) -> list:
        """``Ḡ_l(f)``: the closed element of ``G_l(f)`` in C^δ, for f in F_D."""
        self.require("l")
        E = self.EC
        return [E.delta.concepts[E.closed_indices[E.filter_index[v]]] for v in self.gl_table]

    @cached_property
    def gr_open(self) -> list:
        self.require("r")
        E = self.EC
        return [E.delta.concepts[E.open_indices[E.ideal_index[v]]] for v in self.gr_table]

    @cached_property
    def gpi_open(self) -> list:
        """``Ḡ_π(i)``: the open element of ``G_π(i)`` in D^δ.

        Outside the ideal class the element is the concept whose extent is the
        closure of ``f ↦ f • G_π(i)``; inside it this is the open element.
        """
        E = self.ED
        q = E.quantale
        out = []
        for j in self.gpi_table:
            raw = tuple(dot(q, f, j) for f in E.filters)
            ext = closure(E.context, raw)
            out.append(E.delta.concepts[E.delta.by_extent[ext]])
        return out

    @cached_property
    def gsigma_closed(self) -> list:
        E = self.ED
        q = E.quantale
        out = []
        for g in self.gsigma_table:
            raw = tuple(dot(q, g, i) for i in E.ideals)
            itt = coclosure(E.context, raw)
            out.append(E.delta.concepts[E.delta.by_intent[itt]])
        return out

    # concept-level tables

    @cached_property
    def lift_l(self) -> tuple:
        return tuple(self.EC.delta.find(glift(self, k, "l")) for k in self.ED.delta.concepts)

    @cached_property
    def lift_r(self) -> tuple:
        return tuple(self.EC.delta.find(glift(self, k, "r")) for k in self.ED.delta.concepts)

    @cached_property
    def ext_pi(self) -> tuple:
        return tuple(self.ED.delta.find(gext(self, k, "pi")) for k in self.EC.delta.concepts)

    @cached_property
    def ext_sigma(self) -> tuple:
        return tuple(self.ED.delta.find(gext(self, k, "sigma")) for k in self.EC.delta.concepts)


def glift(bundle: ExtensionBundle, kappa: Concept, side: str) -> Concept:
    """``G^l(κ) = colim_{⟦κ⟧} Ḡ_l`` or ``G^r(κ) = lim_{⦃κ⦄} Ḡ_r`` in C^δ.

    Raises :class:`ClassNotClosed` when precomposition leaves the class.
    """
    ctx = bundle.EC.context
    if side == "l":
        return concept_colimit(ctx, bundle.gl_closed, kappa.extent)
    if side == "r":
        return concept_limit(ctx, bundle.gr_open, kappa.intent)
    raise ValueError(f"side must be 'l' or 'r', got {side!r}")


def gext(bundle: ExtensionBundle, kappa: Concept, side: str) -> Concept:
    """``G^π(κ) = lim_{⦃κ⦄} Ḡ_π`` or ``G^σ(κ) = colim_{⟦κ⟧} Ḡ_σ`` in D^δ."""
    ctx = bundle.ED.context
    if side == "pi":
        return concept_limit(ctx, bundle.gpi_open, kappa.intent)
    if side == "sigma":
        return concept_colimit(ctx, bundle.gsigma_closed, kappa.extent)
    raise ValueError(f"side must be 'pi' or 'sigma', got {side!r}")


def check_adjunction(bundle: ExtensionBundle, which: str = "l-pi") -> Verdict:
    """Hom equality over all concept pairs.

    ``"l-pi"``: ``C^δ(G^l κ, κ') = D^δ(κ, G^π κ')``;
    ``"sigma-r"``: ``D^δ(G^σ κ, κ') = C^δ(κ, G^r κ')``.
    """
    HC, HD = bundle.EC.delta.hom, bundle.ED.delta.hom
    if which == "l-pi":
        left, right = bundle.lift_l, bundle.ext_pi
        for k in range(len(HD)):
            for k2 in range(len(HC)):
                if HC[left[k]][k2] != HD[k][right[k2]]:
                    return Verdict(False, (bundle.ED.delta.points[k], bundle.EC.delta.points[k2]))
        return Verdict(True)
    if which == "sigma-r":
        left, right = bundle.ext_sigma, bundle.lift_r
        for k in range(len(HC)):
            for k2 in range(len(HD)):
                if HD[left[k]][k2] != HC[k][right[k2]]:
                    return Verdict(False, (bundle.EC.delta.points[k], bundle.ED.delta.points[k2]))
        return Verdict(True)
    raise ValueError(f"unknown adjunction {which!r}")


def check_virtual_adjoint(bundle: ExtensionBundle, side: str = "l") -> Verdict:
    """``e ⊑ C^δ(G^l[Gc], [c])`` (side l) or ``e ⊑ C^δ([c], G^r[Gc])`` (side r)."""
    q = bundle.EC.quantale
    H = bundle.EC.delta.hom
    table = bundle.lift_l if side == "l" else bundle.lift_r
    for c, g in enumerate(bundle.G.assignment):
        lifted = table[bundle.ED.embedding[g]]
        here = bundle.EC.embedding[c]
        v = H[lifted][here] if side == "l" else H[here][lifted]
        if not q._leq(q.unit, v):
            return Verdict(False, bundle.EC.base.points[c])
    return Verdict(True)


def check_functoriality(bundle: ExtensionBundle, which: str) -> Verdict:
    """``src(κ, κ') ⊑ dst(Fκ, Fκ')`` for the extension ``which`` in l, r, pi, sigma."""
    table = {
        "l": bundle.lift_l, "r": bundle.lift_r, "pi": bundle.ext_pi, "sigma": bundle.ext_sigma,
    }[which]
    src, dst = (bundle.ED, bundle.EC) if which in ("l", "r") else (bundle.EC, bundle.ED)
    q = src.quantale
    S, T = src.delta.hom, dst.delta.hom
    for a in range(len(S)):
        for b in range(len(S)):
            if not q._leq(S[a][b], T[table[a]][table[b]]):
                return Verdict(False, (src.delta.points[a], src.delta.points[b]))
    return Verdict(True)


def commutation_report(bundle: ExtensionBundle, side: str = "pi") -> list:
    """Where weighted colimits of D fail to commute with ``G_π`` (or limits with ``G_σ``).

    For ``"pi"`` and every ideal i of C and every battery colimit
    ``colim_φ X`` existing in D, compares::

        (φ ▸ D(X, G)) • i    with    φ ▸ (D(X, G) • i)

    computed literally.  For ``"sigma"`` and every filter f of C, compares
    ``f • (D(G, X) ◂ ψ)`` with ``(f • D(G, X)) ◂ ψ`` over battery limits.
    An empty list means every transported member stays in the finite-(co)limit
    class of D.  Returns ``(member index, battery label)`` pairs.
    """
    G, D = bundle.G, bundle.G.target
    q = D.quantale
    H, gs = D.hom, G.assignment
    out = []
    if side == "pi":
        items = [b for b in colimit_instances(D) if b.exists]
        for k, i in enumerate(bundle.EC.ideals):
            for item in items:
                inner = [
                    q._meet([q._rres(w, H[x][g]) for x, w in zip(item.points, item.weight)])
                    for g in gs
                ]
                lhs = dot(q, inner, i)
                rhs = q._meet([q._rres(w, dot(q, [H[x][g] for g in gs], i))
                               for x, w in zip(item.points, item.weight)])
                if lhs != rhs:
                    out.append((k, item.label(D)))
    elif side == "sigma":
        items = [b for b in limit_instances(D) if b.exists]
        for k, f in enumerate(bundle.EC.filters):
            for item in items:
                inner = [
                    q._meet([q._lres(H[g][x], w) for x, w in zip(item.points, item.weight)])
                    for g in gs
                ]
                lhs = dot(q, f, inner)
                rhs = q._meet([q._lres(dot(q, f, [H[g][x] for g in gs]), w)
                               for x, w in zip(item.points, item.weight)])
                if lhs != rhs:
                    out.append((k, item.label(D)))
    else:
        raise ValueError(f"side must be 'pi' or 'sigma', got {side!r}")
    return out
