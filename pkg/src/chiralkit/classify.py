"""Direct/indirect labels, the composition rule table, product combinators and
finite square-closure oracles.

A group is described by a :class:`ClassifiedGroup`: a bundle of callables over
some element type. Product combinators build new bundles from old ones and
lift the factor classifications.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Sequence

from .errors import NotClosed, UnclassifiableElement, WitnessUnavailable


class Classification(Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"

    def __str__(self):
        return self.value


class Expectation(Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"
    EITHER = "either"

    def admits(self, c: Classification) -> bool:
        return self is Expectation.EITHER or self.value == c.value


DIRECT = Classification.DIRECT
INDIRECT = Classification.INDIRECT


def expected_class(c1: Classification, c2: Classification, euclidean_mode: bool = False) -> Expectation:
    """What the composition rules predict for a product of a ``c1`` and a ``c2`` element."""
    if c1 is DIRECT and c2 is DIRECT:
        return Expectation.DIRECT
    if c1 is DIRECT or c2 is DIRECT:
        return Expectation.INDIRECT
    return Expectation.DIRECT if euclidean_mode else Expectation.EITHER


@dataclass
class ClassifiedGroup:
    """Callables describing a group whose elements carry a classification.

    ``witness(g)`` (optional) returns elements whose squares, composed in list
    order, give ``g``. ``invariant(g)`` (optional) returns a tuple in (Z/2)^k
    that is a homomorphism killing squares.
    """

    name: str
    compose: Callable[[Any, Any], Any]
    inverse: Callable[[Any], Any]
    identity: Callable[[], Any]
    equal: Callable[[Any, Any, float], bool]
    classify: Callable[[Any], Classification]
    witness: Optional[Callable[[Any], list]] = None
    invariant: Optional[Callable[[Any], tuple]] = None
    euclidean_mode: bool = False

    def square(self, g):
        return self.compose(g, g)

    def product(self, elements):
        out = self.identity()
        for g in elements:
            out = self.compose(out, g)
        return out

    def check_witness(self, g, witnesses, tol) -> bool:
        return self.equal(self.product([self.square(w) for w in witnesses]), g, tol)


@dataclass(frozen=True)
class SemidirectElement:
    n: Any
    h: Any


@dataclass
class ProductGroup(ClassifiedGroup):
    normal: ClassifiedGroup = None
    complement: ClassifiedGroup = None
    phi: Callable[[Any, Any], Any] = None
    is_direct: bool = False
    tolerance: float = 0.0
    extra: dict = field(default_factory=dict)

    def embed_normal(self, n):
        return SemidirectElement(n, self.complement.identity())

    def embed_complement(self, h):
        return SemidirectElement(self.normal.identity(), h)


def semidirect_product(N: ClassifiedGroup, H: ClassifiedGroup, phi, *, name=None,
                       direct=False) -> ProductGroup:
    """Outer semidirect product ``N x| H``.

    ``phi(h, n)`` is the conjugate of ``n`` by ``h``. Elements are
    :class:`SemidirectElement` with ``(n1,h1)(n2,h2) = (n1 . phi(h1, n2), h1 h2)``.

    Classification lifts both classes of ``H`` and the direct class of ``N``;
    a general ``(n, h)`` with ``n`` direct gets the class of ``h``. An indirect
    ``n`` is only resolved for direct products (``direct=True``) with ``h``
    direct; every other case raises :class:`UnclassifiableElement`.
    """
    e_n = N.identity
    e_h = H.identity

    def compose(a, b):
        return SemidirectElement(N.compose(a.n, phi(a.h, b.n)), H.compose(a.h, b.h))

    def inverse(a):
        h_inv = H.inverse(a.h)
        return SemidirectElement(phi(h_inv, N.inverse(a.n)), h_inv)

    def identity():
        return SemidirectElement(e_n(), e_h())

    def equal(a, b, tol):
        return N.equal(a.n, b.n, tol) and H.equal(a.h, b.h, tol)

    def classify(a):
        cn = N.classify(a.n)
        ch = H.classify(a.h)
        if cn is DIRECT:
            return ch
        if direct and ch is DIRECT:
            return INDIRECT
        raise UnclassifiableElement(
            f"{'direct' if direct else 'semidirect'} product {name or ''}: normal factor is "
            f"indirect and the complement is {ch.value}; no lifting rule applies")

    def witness(a):
        if classify(a) is not DIRECT:
            raise WitnessUnavailable("element is indirect")
        if N.witness is None or H.witness is None:
            raise WitnessUnavailable("factor groups provide no witnesses")
        # (n, h) = (n, e)(e, h); both embeddings are homomorphisms
        return ([SemidirectElement(w, e_h()) for w in N.witness(a.n)]
                + [SemidirectElement(e_n(), w) for w in H.witness(a.h)])

    def summed_invariant(a):
        x, y = N.invariant(a.n), H.invariant(a.h)
        return tuple((i + j) % 2 for i, j in zip(x, y))

    invariant = summed_invariant if N.invariant is not None and H.invariant is not None else None

    sym = "x" if direct else "x|"
    return ProductGroup(
        name=name or f"{N.name} {sym} {H.name}",
        compose=compose, inverse=inverse, identity=identity, equal=equal,
        classify=classify, witness=witness, invariant=invariant,
        normal=N, complement=H, phi=phi, is_direct=direct,
    )


def direct_product(N: ClassifiedGroup, H: ClassifiedGroup, *, name=None) -> ProductGroup:
    """Direct product; indirect elements of either factor stay indirect."""
    return semidirect_product(N, H, lambda h, n: n, name=name, direct=True)


def _index_of(x, elements, equal):
    for i, e in enumerate(elements):
        if equal(x, e):
            return i
    return None


def cayley_table(elements: Sequence, compose, equal) -> list[list[int]]:
    """Index table of ``compose`` on ``elements``; raises NotClosed if a product escapes."""
    table = []
    for a in elements:
        row = []
        for b in elements:
            k = _index_of(compose(a, b), elements, equal)
            if k is None:
                raise NotClosed("element list is not closed under composition")
            row.append(k)
        table.append(row)
    return table


def square_closure(elements: Sequence, compose, equal) -> list:
    """Subgroup generated by the squares of a finite group.

    ``equal`` is a two-argument predicate. Returned elements are taken from
    ``elements`` and keep their input order.
    """
    elements = list(elements)
    table = cayley_table(elements, compose, equal)
    members = {table[i][i] for i in range(len(elements))}
    frontier = set(members)
    while frontier:
        new = set()
        for i in frontier:
            for j in list(members):
                for k in (table[i][j], table[j][i]):
                    if k not in members:
                        new.add(k)
        members |= new
        frontier = new
    return [elements[i] for i in sorted(members)]


def finite_group(name, elements: Sequence, compose, equal, tolerance=0.0) -> ClassifiedGroup:
    """Self-contained finite group classified by its own square closure.

    Direct here means direct *within this finite group*; that implies direct in
    any ambient group containing it, not conversely.
    """
    elements = list(elements)
    eq2 = lambda a, b: equal(a, b, tolerance)  # noqa: E731
    table = cayley_table(elements, compose, eq2)
    e_idx = next(i for i in range(len(elements))
                 if all(table[i][j] == j for j in range(len(elements))))
    closure = square_closure(elements, compose, eq2)
    closure_idx = {_index_of(c, elements, eq2) for c in closure}

    def classify(g):
        i = _index_of(g, elements, eq2)
        if i is None:
            raise ValueError("element is not in the finite group")
        return DIRECT if i in closure_idx else INDIRECT

    def inverse(g):
        i = _index_of(g, elements, eq2)
        j = next(j for j in range(len(elements)) if table[i][j] == e_idx)
        return elements[j]

    def witness(g):
        if classify(g) is not DIRECT:
            raise WitnessUnavailable("element is outside the square closure")
        # breadth-first search over words in squares
        squares = {table[i][i]: i for i in range(len(elements))}
        target = _index_of(g, elements, eq2)
        paths = {e_idx: []}
        frontier = [e_idx]
        while target not in paths:
            nxt = []
            for k in frontier:
                for s, root in squares.items():
                    m = table[k][s]
                    if m not in paths:
                        paths[m] = paths[k] + [root]
                        nxt.append(m)
            frontier = nxt
        return [elements[i] for i in paths[target]]

    return ClassifiedGroup(name=name, compose=compose, inverse=inverse,
                           identity=lambda: elements[e_idx], equal=equal,
                           classify=classify, witness=witness)


@dataclass
class ParityReport:
    pairs_checked: int
    squares_checked: int
    violations: list

    @property
    def ok(self):
        return not self.violations


def parity_invariant_check(G: ClassifiedGroup, samples: Sequence, pairs=None) -> ParityReport:
    """Audit ``G.invariant`` as a homomorphism to (Z/2)^k killing squares.

    Checks every ordered pair of ``samples`` unless ``pairs`` (index pairs) is given.
    """
    chi = G.invariant
    samples = list(samples)
    if pairs is None:
        pairs = [(i, j) for i in range(len(samples)) for j in range(len(samples))]
    violations = []
    values = [chi(g) for g in samples]
    for i, j in pairs:
        got = chi(G.compose(samples[i], samples[j]))
        want = tuple((a + b) % 2 for a, b in zip(values[i], values[j]))
        if tuple(got) != want:
            violations.append(("product", i, j, tuple(got), want))
    for i, g in enumerate(samples):
        if any(chi(G.square(g))):
            violations.append(("square", i, tuple(chi(G.square(g)))))
    return ParityReport(len(pairs), len(samples), violations)
