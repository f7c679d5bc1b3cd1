"""Builders for the multiplicative, residue, quadratic and arithmetic-progression
hypergraph families over F_p."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .ffield import check_prime, inv_mod, residue_values
from .hypergraph import TripartiteHypergraph


class SpecError(ValueError):
    pass


_INTERVAL = re.compile(r"^interval:(-?\d+)\.\.(-?\d+)$")


@dataclass(frozen=True)
class SetSpec:
    """A subset of F_p described independently of p.

    kind is one of nonzero, all, qr, qnr, interval, list. Grammar (``parse``):
    ``nonzero | all | qr | qnr | interval:LO..HI | list:v1,v2,...``.
    """

    kind: str
    lo: int = 0
    hi: int = 0
    values: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> SetSpec:
        text = text.strip()
        if text in ("nonzero", "all", "qr", "qnr"):
            return cls(text)
        m = _INTERVAL.match(text)
        if m:
            return cls("interval", int(m.group(1)), int(m.group(2)))
        if text.startswith("list:"):
            body = text[5:]
            try:
                vals = tuple(int(v) for v in body.split(",") if v.strip())
            except ValueError:
                raise SpecError(f"bad list spec {text!r}") from None
            return cls("list", values=vals)
        raise SpecError(f"cannot parse set spec {text!r}")

    @classmethod
    def coerce(cls, spec) -> SetSpec:
        if isinstance(spec, SetSpec):
            return spec
        if isinstance(spec, str):
            return cls.parse(spec)
        return cls("list", values=tuple(int(v) for v in spec))

    def __str__(self):
        if self.kind == "interval":
            return f"interval:{self.lo}..{self.hi}"
        if self.kind == "list":
            return "list:" + ",".join(str(v) for v in self.values)
        return self.kind

    def resolve(self, p: int) -> tuple[int, ...]:
        """Sorted distinct values of the set in F_p."""
        if self.kind == "nonzero":
            return tuple(range(1, p))
        if self.kind == "all":
            return tuple(range(p))
        if self.kind in ("qr", "qnr"):
            qr, qnr = residue_values(p)
            return tuple(sorted(qr if self.kind == "qr" else qnr))
        if self.kind == "interval":
            if not 1 <= self.lo <= self.hi < p:
                raise SpecError(f"interval {self.lo}..{self.hi} needs 1 <= lo <= hi < {p}")
            return tuple(range(self.lo, self.hi + 1))
        if self.kind == "list":
            return tuple(sorted({v % p for v in self.values}))
        raise SpecError(f"unknown set kind {self.kind!r}")


def _resolve_nonempty(spec, p, label):
    spec = SetSpec.coerce(spec)
    vals = spec.resolve(p)
    if not vals:
        raise SpecError(f"set {label} = {spec} is empty for p={p}")
    return spec, vals


def _build(name, p, Xspec, Aspec, rule, **extra):
    check_prime(p)
    Xspec, X = _resolve_nonempty(Xspec, p, "X")
    Aspec, A = _resolve_nonempty(Aspec, p, "A")
    edges = [rule(x, a) for x in X for a in A]
    prov = {"construction": name, "p": p, "x_set": str(Xspec), "a_set": str(Aspec)}
    prov.update(extra)
    return TripartiteHypergraph.from_edges(edges, p=p, provenance=prov,
                                           parts=(X, {e[1] for e in edges}, {e[2] for e in edges}))


def build_multiplicative(p: int, Xspec="nonzero", Aspec="nonzero") -> TripartiteHypergraph:
    """Edge (x, x + a, x * a) for every x in X, a in A."""
    H = _build("mult", p, Xspec, Aspec, lambda x, a: (x, (x + a) % p, x * a % p))
    if 0 in H.X or 0 in SetSpec.coerce(Aspec).resolve(p):
        warnings.warn("0 in X or A collapses Z-side values to 0; vertex counts "
                      "will not follow the nonzero-set formulas", stacklevel=2)
    return H


def build_qr(p: int) -> TripartiteHypergraph:
    """Multiplicative construction with X = quadratic residues, A = non-residues."""
    check_prime(p)
    if p < 5:
        raise SpecError("build_qr needs p >= 5")
    return _build("qr", p, "qr", "qnr", lambda x, a: (x, (x + a) % p, x * a % p))


def build_quadratic(p: int, Xspec, Aspec) -> TripartiteHypergraph:
    """Edge (x, x + a, x + a^2) for every x in X, a in A."""
    return _build("quadratic", p, Xspec, Aspec, lambda x, a: (x, (x + a) % p, (x + a * a) % p))


def build_ap(p: int, Xspec="all", Aspec="all") -> TripartiteHypergraph:
    """Edge (x, x + a, x + 2a); with full sets these are all (x, y, z) with y = (x + z)/2."""
    return _build("ap", p, Xspec, Aspec, lambda x, a: (x, (x + a) % p, (x + 2 * a) % p))


def ap_relation_holds(p: int, edge) -> bool:
    x, y, z = edge
    return y % p == (x + z) * inv_mod(2, p) % p


BUILDERS = {
    "mult": build_multiplicative,
    "quadratic": build_quadratic,
    "ap": build_ap,
}
