"""Concrete finite groups: Cayley tables, generators, relator words.

Groups are carried by explicit multiplication tables; elements are the
indices 0..order-1 and the word problem is solved by table lookup.  The
presentation (generators + relators) rides along as data and is validated
against the table, never trusted on its own.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    CatalogMissError,
    GroupSpecError,
    GroupValidationError,
    InvalidInvariantError,
)

# A word over the generator alphabet: (generator position, exponent +-1).
Letter = tuple[int, int]
Word = tuple[Letter, ...]


def _as_word(letters: Iterable[Sequence[int]]) -> Word:
    out = []
    for pos, exp in letters:
        if exp not in (1, -1):
            raise GroupValidationError(f"word exponent must be +-1, got {exp}")
        out.append((int(pos), int(exp)))
    return tuple(out)


def power_word(pos: int, n: int) -> Word:
    return tuple((pos, 1) for _ in range(n))


def commutator_word(i: int, j: int) -> Word:
    return ((i, 1), (j, 1), (i, -1), (j, -1))


@dataclass
class FiniteGroup:
    """A finite group on elements 0..order-1 with full multiplication table.

    cayley[g][h] is the index of g*h.  ``generators`` is an ordered list of
    (name, element index); ``relators`` are words over the generator
    alphabet that evaluate to the identity.
    """

    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    generators: list[tuple[str, int]]
    relators: list[Word]
    name: str = "group"
    _element_words: list[Word] | None = field(default=None, repr=False)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def generator_elements(self) -> list[int]:
        return [g for _, g in self.generators]

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        x = self.identity
        for _ in range(n):
            x = self.mul(x, a)
        return x

    def is_abelian(self) -> bool:
        c = self.cayley
        return all(
            c[a][b] == c[b][a] for a in self.elements() for b in self.elements()
        )

    def evaluate_word(self, w: Word) -> int:
        """Product of the word's letters; the empty word gives the identity."""
        x = self.identity
        for pos, exp in w:
            g = self.generators[pos][1]
            x = self.mul(x, g if exp == 1 else self.inv(g))
        return x

    def element_words(self) -> list[Word]:
        """A word in the generators for every element, found by BFS.

        Deterministic: elements are visited in index order, generators in
        listed order, so the same group always yields the same words.
        """
        if self._element_words is None:
            words: list[Word | None] = [None] * self.order
            words[self.identity] = ()
            frontier = [self.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for pos, g in enumerate(self.generator_elements()):
                        y = self.mul(x, g)
                        if words[y] is None:
                            words[y] = words[x] + ((pos, 1),)
                            nxt.append(y)
                frontier = nxt
            if any(w is None for w in words):
                raise GroupValidationError(
                    f"{self.name}: generators do not generate the group"
                )
            self._element_words = [w for w in words if w is not None]
        return self._element_words

    def validate(self) -> None:
        """Check the group axioms, reachability and the relators.

        Full enumeration; intended for order <= 32.
        """
        n = self.order
        c = self.cayley
        if len(c) != n or any(len(row) != n for row in c):
            raise GroupValidationError(f"{self.name}: bad table shape")
        e = self.identity
        for a in range(n):
            if c[e][a] != a or c[a][e] != a:
                raise GroupValidationError(f"{self.name}: identity fails at {a}")
            if c[a][self.inverse[a]] != e or c[self.inverse[a]][a] != e:
                raise GroupValidationError(f"{self.name}: inverse fails at {a}")
        for a in range(n):
            for b in range(n):
                for d in range(n):
                    if c[c[a][b]][d] != c[a][c[b][d]]:
                        raise GroupValidationError(
                            f"{self.name}: associativity fails at {(a, b, d)}"
                        )
        self.element_words()  # reachability
        for w in self.relators:
            if self.evaluate_word(w) != e:
                raise GroupValidationError(
                    f"{self.name}: relator {w} does not evaluate to the identity"
                )

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "cayley": [list(row) for row in self.cayley],
            "generators": [{"name": n, "element": g} for n, g in self.generators],
            "relators": [
                [[self.generators[pos][0], exp] for pos, exp in w]
                for w in self.relators
            ],
            "name": self.name,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteGroup":
        try:
            order = int(data["order"])
            cayley = tuple(tuple(int(x) for x in row) for row in data["cayley"])
            generators = [(d["name"], int(d["element"])) for d in data["generators"]]
            by_name = {n: i for i, (n, _) in enumerate(generators)}
            relators = [
                _as_word((by_name[name], exp) for name, exp in w)
                for w in data["relators"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise GroupSpecError(f"malformed group file: {exc}") from exc
        identity = _find_identity(cayley, order)
        inverse = _find_inverses(cayley, order, identity)
        g = cls(
            order=order,
            cayley=cayley,
            identity=identity,
            inverse=inverse,
            generators=generators,
            relators=relators,
            name=str(data.get("name", "group")),
        )
        g.validate()
        return g


def _find_identity(cayley, order: int) -> int:
    for e in range(order):
        if all(cayley[e][a] == a and cayley[a][e] == a for a in range(order)):
            return e
    raise GroupValidationError("table has no two-sided identity")


def _find_inverses(cayley, order: int, identity: int) -> tuple[int, ...]:
    inv = []
    for a in range(order):
        found = [b for b in range(order) if cayley[a][b] == identity]
        if len(found) != 1 or cayley[found[0]][a] != identity:
            raise GroupValidationError(f"element {a} lacks a two-sided inverse")
        inv.append(found[0])
    return tuple(inv)


def load_group_file(path: str) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return FiniteGroup.from_json_dict(json.load(fh))


# -- constructors ------------------------------------------------------


def make_abelian(invariant_factors: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Direct product of cyclic groups C_{k_1} x ... x C_{k_r}.

    One generator per factor; relators are the k_i-th powers and all
    commutators.  Element indices are mixed-radix tuples, last factor
    fastest.
    """
    factors = list(invariant_factors)
    if not factors:
        raise InvalidInvariantError("invariant factor list is empty")
    for k in factors:
        if k < 2:
            raise InvalidInvariantError(f"invariant factor {k} < 2")
    order = 1
    for k in factors:
        order *= k

    def encode(tup):
        idx = 0
        for x, k in zip(tup, factors):
            idx = idx * k + x
        return idx

    tuples = list(itertools.product(*(range(k) for k in factors)))
    cayley = tuple(
        tuple(
            encode(tuple((x + y) % k for x, y, k in zip(t, u, factors)))
            for u in tuples
        )
        for t in tuples
    )
    r = len(factors)
    gen_names = _generator_names(r)
    generators = []
    for i in range(r):
        t = [0] * r
        t[i] = 1
        generators.append((gen_names[i], encode(tuple(t))))
    relators: list[Word] = [power_word(i, factors[i]) for i in range(r)]
    relators += [commutator_word(i, j) for i in range(r) for j in range(i + 1, r)]
    identity = 0
    inverse = tuple(
        encode(tuple((-x) % k for x, k in zip(t, factors))) for t in tuples
    )
    g = FiniteGroup(
        order=order,
        cayley=cayley,
        identity=identity,
        inverse=inverse,
        generators=generators,
        relators=relators,
        name=name or "x".join(f"C{k}" for k in factors),
    )
    return g


def _generator_names(r: int) -> list[str]:
    base = ["a", "b", "c", "d", "e", "f"]
    if r <= len(base):
        return base[:r]
    return [f"g{i}" for i in range(r)]


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Direct product; generators of G first, then of H, plus cross-commutators."""
    n, m = G.order, H.order

    def enc(a: int, b: int) -> int:
        return a * m + b

    cayley = tuple(
        tuple(enc(G.mul(a, c), H.mul(b, d)) for c in range(n) for d in range(m))
        for a in range(n)
        for b in range(m)
    )
    identity = enc(G.identity, H.identity)
    inverse = tuple(
        enc(G.inv(a), H.inv(b)) for a in range(n) for b in range(m)
    )
    gnames = {nm for nm, _ in G.generators}
    generators = [(nm, enc(g, H.identity)) for nm, g in G.generators]
    for nm, h in H.generators:
        nm2 = nm
        while nm2 in gnames:
            nm2 += "'"
        gnames.add(nm2)
        generators.append((nm2, enc(H.identity, h)))
    k = len(G.generators)
    relators: list[Word] = list(G.relators)
    relators += [
        tuple((pos + k, exp) for pos, exp in w) for w in H.relators
    ]
    relators += [
        commutator_word(i, k + j)
        for i in range(k)
        for j in range(len(H.generators))
    ]
    return FiniteGroup(
        order=n * m,
        cayley=cayley,
        identity=identity,
        inverse=inverse,
        generators=generators,
        relators=relators,
        name=name or f"{G.name}x{H.name}",
    )


def trivial_group() -> FiniteGroup:
    return FiniteGroup(
        order=1,
        cayley=((0,),),
        identity=0,
        inverse=(0,),
        generators=[],
        relators=[],
        name="C1",
    )


def _closure_from_rules(seeds, mul, names) -> tuple[list, dict]:
    """Enumerate a group by closing seed elements under a multiplication rule.

    Returns the element list (seed order first, then discovery order) and an
    index map.  ``mul`` works on the opaque element labels.
    """
    elems = list(seeds)
    index = {x: i for i, x in enumerate(elems)}
    frontier = list(seeds)
    while frontier:
        nxt = []
        for x in frontier:
            for s in seeds:
                y = mul(x, s)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return elems, index


def dihedral_8() -> FiniteGroup:
    """Dihedral group of order 8 with presentation <r, s | r^4, s^2, (sr)^2>."""

    def mul(x, y):
        # elements are (i, j) meaning r^i s^j, with s r^k = r^-k s
        (i, j), (k, l) = x, y
        return ((i + (k if j == 0 else -k)) % 4, (j + l) % 2)

    ident = (0, 0)
    elems, index = _closure_from_rules([ident, (1, 0), (0, 1)], mul, None)
    order = len(elems)
    assert order == 8
    cayley = tuple(
        tuple(index[mul(x, y)] for y in elems) for x in elems
    )
    inverse = tuple(
        next(index[y] for y in elems if mul(x, y) == ident) for x in elems
    )
    generators = [("r", index[(1, 0)]), ("s", index[(0, 1)])]
    relators: list[Word] = [
        power_word(0, 4),
        power_word(1, 2),
        ((1, 1), (0, 1), (1, 1), (0, 1)),  # (s r)^2
    ]
    return FiniteGroup(8, cayley, index[ident], inverse, generators, relators, "D8")


def quaternion_8() -> FiniteGroup:
    """Quaternion group with presentation <i, j | i^4, i^2 j^-2, j^-1 i j i>."""
    # elements (sign, unit) with unit in 0:1, 1:i, 2:j, 3:k
    table = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (2, 0): (0, 2), (3, 0): (0, 3),
        (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
        (1, 2): (0, 3), (2, 1): (1, 3),
        (2, 3): (0, 1), (3, 2): (1, 1),
        (3, 1): (0, 2), (1, 3): (1, 2),
    }

    def mul(x, y):
        (s1, u1), (s2, u2) = x, y
        s3, u3 = table[(u1, u2)]
        return ((s1 + s2 + s3) % 2, u3)

    ident = (0, 0)
    elems, index = _closure_from_rules([ident, (0, 1), (0, 2)], mul, None)
    order = len(elems)
    assert order == 8
    cayley = tuple(tuple(index[mul(x, y)] for y in elems) for x in elems)
    inverse = tuple(
        next(index[y] for y in elems if mul(x, y) == ident) for x in elems
    )
    generators = [("i", index[(0, 1)]), ("j", index[(0, 2)])]
    relators: list[Word] = [
        power_word(0, 4),
        ((0, 1), (0, 1), (1, -1), (1, -1)),  # i^2 j^-2
        ((1, -1), (0, 1), (1, 1), (0, 1)),  # j^-1 i j i
    ]
    return FiniteGroup(8, cayley, index[ident], inverse, generators, relators, "Q8")


# -- catalog -----------------------------------------------------------


def _invariant_factor_chains(order: int) -> list[list[int]]:
    """All descending chains [d1, d2, ...] with d_{i+1} | d_i and product = order."""
    if order == 1:
        return [[]]
    chains = []

    def rec(remaining: int, prev: int, acc: list[int]):
        if remaining == 1:
            chains.append(list(acc))
            return
        for d in range(2, min(prev, remaining) + 1):
            if remaining % d == 0 and prev % d == 0:
                acc.append(d)
                rec(remaining // d, d, acc)
                acc.pop()

    rec(order, order, [])
    return chains


def catalog_names(max_order: int = 16) -> list[str]:
    """Canonical catalog: abelian groups by invariant factors, plus D8, Q8
    and their products with C2.  Ordered by (order, name)."""
    entries: list[tuple[int, str]] = [(1, "C1")]
    for order in range(2, max_order + 1):
        for chain in _invariant_factor_chains(order):
            entries.append((order, "x".join(f"C{k}" for k in chain)))
    if max_order >= 8:
        entries += [(8, "D8"), (8, "Q8")]
    if max_order >= 16:
        entries += [(16, "D8xC2"), (16, "Q8xC2")]
    entries.sort()
    return [name for _, name in entries]


def catalog(name: str) -> FiniteGroup:
    """Look up a catalog group by canonical name; the table is validated."""
    available = catalog_names(16)
    if name not in available:
        raise CatalogMissError(name, available)
    if name == "C1":
        g = trivial_group()
    elif name == "D8":
        g = dihedral_8()
    elif name == "Q8":
        g = quaternion_8()
    elif name == "D8xC2":
        g = direct_product(dihedral_8(), make_abelian([2]))
    elif name == "Q8xC2":
        g = direct_product(quaternion_8(), make_abelian([2]))
    else:
        g = make_abelian([int(part[1:]) for part in name.split("x")])
    g.validate()
    return g


def parse_group_spec(spec: str) -> FiniteGroup:
    """Build a group from a spec string.

    Atoms ``C<n>``, ``D8`` and ``Q8`` joined by ``x`` form direct products;
    a bare catalog name is also accepted (e.g. ``"C4xC2xC2"``, ``"Q8xC2"``,
    ``"C2xD8"``).
    """
    spec = spec.strip()
    if not spec:
        raise GroupSpecError("empty group spec")
    atoms = spec.split("x")
    parts: list[FiniteGroup] = []
    for atom in atoms:
        atom = atom.strip()
        if atom == "D8":
            parts.append(dihedral_8())
        elif atom == "Q8":
            parts.append(quaternion_8())
        elif atom.startswith("C"):
            try:
                k = int(atom[1:])
            except ValueError as exc:
                raise GroupSpecError(f"bad atom {atom!r} in spec {spec!r}") from exc
            if k < 1:
                raise GroupSpecError(f"bad cyclic order {k} in spec {spec!r}")
            if k > 1:
                parts.append(make_abelian([k]))
        else:
            raise GroupSpecError(f"bad atom {atom!r} in spec {spec!r}")
    if not parts:
        return trivial_group()
    g = parts[0]
    for h in parts[1:]:
        g = direct_product(g, h)
    g.name = spec
    return g


# -- subgroups ---------------------------------------------------------


def subgroup_closure(G: FiniteGroup, seeds: Iterable[int]) -> list[int]:
    """Elements of the subgroup generated by ``seeds``, sorted by index."""
    seen = {G.identity}
    frontier = [G.identity]
    seeds = list(seeds)
    while frontier:
        nxt = []
        for x in frontier:
            for s in seeds:
                y = G.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def sylow_subgroup(G: FiniteGroup, p: int) -> list[int]:
    """Element set of one Sylow p-subgroup, by closure over p-power-order
    elements.  Brute force; requires order <= 32."""
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise ValueError(f"{p} is not prime")
    if G.order > 32:
        raise OverflowError("sylow search is limited to order <= 32")
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    candidates = [
        g for g in G.elements() if _is_p_power(G.element_order(g), p)
    ]

    def extend(current: frozenset[int]) -> list[int] | None:
        if len(current) == target:
            return sorted(current)
        for c in candidates:
            if c in current:
                continue
            closed = frozenset(subgroup_closure(G, list(current) + [c]))
            if len(closed) <= target and target % len(closed) == 0:
                found = extend(closed)
                if found is not None:
                    return found
        return None

    result = extend(frozenset({G.identity}))
    if result is None:  # cannot happen for a valid group; defensive
        raise GroupValidationError(f"no Sylow {p}-subgroup found in {G.name}")
    return result


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass
class Subgroup:
    """A subgroup reindexed as its own FiniteGroup.

    ``embedding[i]`` is the parent-group index of subgroup element i.
    """

    group: FiniteGroup
    embedding: list[int]


def as_subgroup(G: FiniteGroup, elements: Sequence[int], name: str | None = None) -> Subgroup:
    """Reindex a closed element set as a standalone group.

    Generators are a minimal generating subset (searched in index order);
    relators come from the Cayley graph: for each element word w(g) and
    generator s, the word w(g) s w(g s)^-1 closes a loop.
    """
    elements = sorted(set(elements))
    pos = {g: i for i, g in enumerate(elements)}
    if G.identity not in pos:
        raise GroupValidationError("subgroup must contain the identity")
    for a in elements:
        for b in elements:
            if G.mul(a, b) not in pos:
                raise GroupValidationError("element set is not closed")
    order = len(elements)
    cayley = tuple(
        tuple(pos[G.mul(a, b)] for b in elements) for a in elements
    )
    inverse = tuple(pos[G.inv(a)] for a in elements)
    gens = _minimal_generators(G, elements)
    sub = FiniteGroup(
        order=order,
        cayley=cayley,
        identity=pos[G.identity],
        inverse=inverse,
        generators=[(f"s{i}", pos[g]) for i, g in enumerate(gens)],
        relators=[],
        name=name or f"{G.name}|sub{order}",
    )
    sub.relators = _cayley_graph_relators(sub)
    sub.validate()
    return Subgroup(group=sub, embedding=elements)


def _minimal_generators(G: FiniteGroup, elements: list[int]) -> list[int]:
    non_identity = [g for g in elements if g != G.identity]
    if not non_identity:
        return []
    for size in range(1, len(non_identity) + 1):
        for combo in itertools.combinations(non_identity, size):
            if len(subgroup_closure(G, combo)) == len(elements):
                return list(combo)
    raise GroupValidationError("unreachable: element set generates itself")


def _cayley_graph_relators(G: FiniteGroup) -> list[Word]:
    """Relators w(g) s w(g s)^-1 for every element g and generator s.

    These present the group (2-cells of the Cayley complex), so the
    presentation complex built from them is exact at degree one.
    """
    words = G.element_words()
    relators: list[Word] = []
    for g in G.elements():
        for pos, s in enumerate(G.generator_elements()):
            target = G.mul(g, s)
            w = words[g] + ((pos, 1),) + tuple(
                (p, -e) for p, e in reversed(words[target])
            )
            if w:
                relators.append(w)
    return relators


def with_redundant_relator(G: FiniteGroup) -> FiniteGroup:
    """Copy of G with one redundant relator appended (first relator squared)."""
    if not G.relators:
        raise GroupValidationError(f"{G.name} has no relators to duplicate")
    extra = G.relators[0] + G.relators[0]
    return FiniteGroup(
        order=G.order,
        cayley=G.cayley,
        identity=G.identity,
        inverse=G.inverse,
        generators=list(G.generators),
        relators=list(G.relators) + [extra],
        name=f"{G.name}+redundant",
    )


def two_generator_presentation(n: int, m: int) -> FiniteGroup:
    """C_n x C_m presented with exactly two generators a, b of orders n, m.

    Degenerate n = 1 or m = 1 is allowed: the generator is the identity and
    its power relator is trivial but kept, so downstream code always sees a
    two-generator, three-relator shape.
    """
    if n < 1 or m < 1:
        raise InvalidInvariantError(f"orders must be >= 1, got {(n, m)}")
    order = n * m

    def enc(x, y):
        return x * m + y

    cayley = tuple(
        tuple(enc((x + u) % n, (y + v) % m) for u in range(n) for v in range(m))
        for x in range(n)
        for y in range(m)
    )
    inverse = tuple(enc((-x) % n, (-y) % m) for x in range(n) for y in range(m))
    generators = [("a", enc(1 % n, 0)), ("b", enc(0, 1 % m))]
    relators: list[Word] = [power_word(0, n), power_word(1, m), commutator_word(0, 1)]
    g = FiniteGroup(
        order=order,
        cayley=cayley,
        identity=0,
        inverse=inverse,
        generators=generators,
        relators=relators,
        name=f"C{n}xC{m}",
    )
    return g
