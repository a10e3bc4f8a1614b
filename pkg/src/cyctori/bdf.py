"""Assembly of split Bagnera-de Franchis families in low dimension.

A candidate of dimension n is a pair (B1, B2) with dim B1 = b1 >= 1 carrying
the translation, plus a finite translation group T identified with a subgroup
acting on both factors.  The admissible group orders satisfy phi(m) <= 2(n-1);
B2 ranges over the dimension-(n-b1) torus families whose automorphism has
order exactly m.

The translation group conditions are implemented literally:

* T must be (isomorphic to) a subgroup of Fix(alpha'|B2): the group acts on
  B2 through points fixed by the linear part;
* T x Z/m must embed in the torsion (Q/Z)^(2*b1) of B1: for every prime q,
  q-rank(T) + q-rank(Z/m) <= 2*b1 (the generator's translation part has order
  m and must meet T trivially).

Families are grouped by (m, b1, component labels); the same label row can be
realized by several eigenvalue-order patterns (e.g. an elliptic factor with
the order-3 or the order-6 action), and the reported translation options are
the union over those variants, matching how the published tables collapse
them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .intlattice import FiniteAbelianGroup
from .families import TorusFamily, component_products, primary_families, _modules_of_rank
from .torus import admissible_orders, lcm


def composite_b2(d2: int, m: int) -> list[TorusFamily]:
    """All dimension-d2 families whose automorphism order is exactly m,
    expanded into component products (the B2 candidates)."""
    if d2 < 1 or m < 2:
        raise ValueError("composite_b2 expects d2 >= 1 and m >= 2")
    fams = set()
    for mod in _modules_of_rank(2 * d2):
        order = 1
        for k, _ in mod:
            order = lcm(order, k)
        if order != m:
            continue
        per = [component_products(k, r) for k, r in mod]
        for combo in itertools.product(*per):
            comps = tuple(sorted(c for group in combo for c in group))
            fams.add(TorusFamily(m=m, components=comps))
    return sorted(fams, key=lambda f: (f.labels(), f.types))


def translation_options(b2: TorusFamily, b1_dim: int, m: int) -> list[FiniteAbelianGroup]:
    """Isomorphism classes of admissible translation groups for one variant."""
    if b1_dim < 1:
        raise ValueError("B1 must have positive dimension")
    fix = b2.fix()
    out = []
    for T in fix.subgroup_classes():
        qs = set(T.primary_partitions()) | set(FiniteAbelianGroup.from_cyclic_orders([m]).primary_partitions())
        if all(T.rank_at(q) + (1 if m % q == 0 else 0) <= 2 * b1_dim for q in qs):
            out.append(T)
    return sorted(out)


@dataclass(frozen=True)
class BdFFamily:
    """One row of the classification: all order-m, dimension-n candidates with
    a fixed B1 dimension and B2 component label multiset."""

    n: int
    m: int
    b1_dim: int
    b2_labels: tuple[str, ...]
    variants: tuple[TorusFamily, ...] = field(compare=False)
    tr_options: tuple[FiniteAbelianGroup, ...] = field(compare=False)

    @property
    def b2_dim(self) -> int:
        return self.n - self.b1_dim

    @property
    def moduli(self) -> int:
        """B1 contributes its Siegel dimension; B2 the maximum over variants
        (all variants of a label row have equal counts in the tables)."""
        return self.b1_dim * (self.b1_dim + 1) // 2 + max(v.moduli for v in self.variants)

    @property
    def family_count(self) -> int:
        """Families counted as (m, B2, T) triples."""
        return len(self.tr_options)

    def b1_label(self) -> str:
        return {1: "E", 2: "S", 3: "T", 4: "T4"}[self.b1_dim]

    def b2_display(self) -> str:
        return " x ".join(self.b2_labels)


def classify(n: int) -> list[BdFFamily]:
    """All split candidates of dimension n, one entry per label row, sorted by
    (m, b1_dim, labels).  Dimension 1 is empty: a translation factor and a
    linear factor cannot fit in one dimension."""
    if n < 1:
        raise ValueError("classify expects n >= 1")
    rows: dict[tuple, dict] = {}
    for m in admissible_orders(n):
        for d2 in range(1, n):
            b1 = n - d2
            for fam in composite_b2(d2, m):
                key = (m, b1, fam.labels())
                entry = rows.setdefault(key, {"variants": [], "opts": set()})
                entry["variants"].append(fam)
                entry["opts"].update(translation_options(fam, b1, m))
    out = []
    for (m, b1, labels), entry in sorted(rows.items()):
        out.append(BdFFamily(n=n, m=m, b1_dim=b1, b2_labels=labels,
                             variants=tuple(entry["variants"]),
                             tr_options=tuple(sorted(entry["opts"]))))
    return out


__all__ = ["BdFFamily", "classify", "composite_b2", "primary_families",
            "translation_options"]
