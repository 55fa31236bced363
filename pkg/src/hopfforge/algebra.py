"""Normal-form arithmetic for algebras with ordered weighted generators.

A presentation lists generators x_0 < x_1 < ... with positive integer
weights and a commutator table giving [x_j, x_i] = x_j*x_i - x_i*x_j for
j > i.  Words are rewritten toward ascending index,

    x_j * x_i  ->  x_i * x_j + [x_j, x_i]      (j > i),

so the ordered monomials x_0^a0 * x_1^a1 * ... form the working basis.
Rewriting terminates whenever every table entry has weight strictly below
the weight of the pair it replaces (checked by check_termination_weights);
ordered monomials form an actual basis iff the overlaps x_k*x_j*x_i
resolve (checked by check_confluence).

All values are immutable after construction and every operation is pure;
the only internal state is a product cache that behaves as pure
memoization.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .report import Report

Monomial = tuple  # exponent vector over the presentation's generators

ZERO = Fraction(0)
ONE = Fraction(1)


class PresentationMismatchError(ValueError):
    """Raised when elements of different presentations are combined."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Presentation:
    """Ordered generators with weights plus the commutator rewrite table."""

    def __init__(self, generators: Sequence[tuple[str, int]],
                 commutators: Mapping | None = None):
        names = [str(n) for n, _ in generators]
        weights = [int(w) for _, w in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        if any(w <= 0 for w in weights):
            raise ValueError("generator weights must be positive")
        self.names: tuple[str, ...] = tuple(names)
        self.weights: tuple[int, ...] = tuple(weights)
        self._index = {n: i for i, n in enumerate(names)}
        # table[(j, i)] = {monomial: coeff} meaning [x_j, x_i], stored for j > i
        table: dict[tuple[int, int], dict[Monomial, Fraction]] = {}
        for key, value in (commutators or {}).items():
            j, i = (self._resolve(key[0]), self._resolve(key[1]))
            if j <= i:
                raise ValueError(
                    f"commutator [{self.names[j]},{self.names[i]}] must list the "
                    "later generator first")
            table[(j, i)] = self._clean_terms(value)
        self.table = table
        self._prod_cache: dict[tuple[Monomial, Monomial], dict] = {}
        self._monomial_cache: dict[int, tuple[Monomial, ...]] = {}

    # -- basic queries -------------------------------------------------

    def _resolve(self, g) -> int:
        if isinstance(g, int):
            if not 0 <= g < len(self.names):
                raise ValueError(f"generator index {g} out of range")
            return g
        try:
            return self._index[g]
        except KeyError:
            raise ValueError(f"unknown generator {g!r}") from None

    def _clean_terms(self, value) -> dict[Monomial, Fraction]:
        if isinstance(value, Element):
            if value.algebra is not self:
                raise PresentationMismatchError("table entry from another presentation")
            return dict(value.terms)
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in dict(value).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(self.names) or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono}")
            c = as_fraction(coeff)
            if c:
                out[mono] = out.get(mono, ZERO) + c
        return {m: c for m, c in out.items() if c}

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._resolve(name)

    def commutator_entry(self, j, i) -> "Element":
        """The table entry [x_j, x_i] as an element (zero if the pair commutes)."""
        j, i = self._resolve(j), self._resolve(i)
        if j == i:
            return self.zero()
        sign = 1
        if j < i:
            j, i, sign = i, j, -1
        terms = self.table.get((j, i), {})
        elt = Element(self, dict(terms))
        return elt if sign == 1 else -elt

    def monomial_weight(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def identity_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def monomial_key(self, mono: Monomial) -> tuple:
        """Canonical (weight, lex) sort key."""
        return (self.monomial_weight(mono), mono)

    def monomials_of_weight(self, w: int) -> tuple[Monomial, ...]:
        """All monomials of exact weight w, canonically ordered."""
        if w not in self._monomial_cache:
            found = []
            def rec(pos, remaining, acc):
                if pos == self.ngens:
                    if remaining == 0:
                        found.append(tuple(acc))
                    return
                wt = self.weights[pos]
                for e in range(remaining // wt + 1):
                    rec(pos + 1, remaining - e * wt, acc + [e])
            rec(0, w, [])
            self._monomial_cache[w] = tuple(sorted(found, key=self.monomial_key))
        return self._monomial_cache[w]

    def monomials_up_to(self, max_weight: int, include_identity: bool = True) -> list[Monomial]:
        start = 0 if include_identity else 1
        out: list[Monomial] = []
        for w in range(start, max_weight + 1):
            out.extend(self.monomials_of_weight(w))
        return out

    # -- element factories ----------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.identity_monomial(): ONE})

    def scalar(self, c) -> "Element":
        c = as_fraction(c)
        return Element(self, {self.identity_monomial(): c} if c else {})

    def gen(self, g) -> "Element":
        i = self._resolve(g)
        mono = tuple(1 if k == i else 0 for k in range(self.ngens))
        return Element(self, {mono: ONE})

    def monomial(self, mono: Monomial) -> "Element":
        mono = tuple(int(e) for e in mono)
        if len(mono) != self.ngens or any(e < 0 for e in mono):
            raise ValueError(f"bad monomial {mono}")
        return Element(self, {mono: ONE})

    def element(self, terms: Mapping) -> "Element":
        return Element(self, self._clean_terms(terms))

    # -- rewriting -------------------------------------------------------

    def word_of(self, mono: Monomial) -> tuple[int, ...]:
        word = []
        for i, e in enumerate(mono):
            word.extend([i] * e)
        return tuple(word)

    def _mono_of_sorted_word(self, word) -> Monomial:
        mono = [0] * self.ngens
        for i in word:
            mono[i] += 1
        return tuple(mono)

    def reduce_word(self, word: Iterable[int], coeff=1, rng=None) -> dict[Monomial, Fraction]:
        """Normal form of coeff * x_{w0} x_{w1} ... as a terms dict.

        With rng given, the rewrite position among the misordered adjacent
        pairs is chosen at random at every step (used by the confluence
        oracle); the result must not depend on that choice once the
        presentation is confluent.
        """
        result: dict[Monomial, Fraction] = {}
        stack: list[tuple[tuple[int, ...], Fraction]] = [(tuple(word), as_fraction(coeff))]
        while stack:
            w, c = stack.pop()
            if not c:
                continue
            positions = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
            if not positions:
                mono = self._mono_of_sorted_word(w)
                acc = result.get(mono, ZERO) + c
                if acc:
                    result[mono] = acc
                else:
                    result.pop(mono, None)
                continue
            p = positions[0] if rng is None else rng.choice(positions)
            j, i = w[p], w[p + 1]
            stack.append((w[:p] + (i, j) + w[p + 2:], c))
            for mono, pc in self.table.get((j, i), {}).items():
                stack.append((w[:p] + self.word_of(mono) + w[p + 2:], c * pc))
        return result

    def product_terms(self, m1: Monomial, m2: Monomial) -> dict[Monomial, Fraction]:
        """Normal form of the monomial product m1 * m2 (memoized)."""
        key = (m1, m2)
        cached = self._prod_cache.get(key)
        if cached is None:
            cached = self.reduce_word(self.word_of(m1) + self.word_of(m2))
            self._prod_cache[key] = cached
        return cached

    def __repr__(self):
        gens = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"Presentation({gens})"


class Element:
    """Exact-rational combination of ordered monomials of one presentation.

    Instances are immutable in intent: no method mutates ``terms`` after
    construction, and no stored coefficient is zero.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Presentation, terms: dict[Monomial, Fraction]):
        self.algebra = algebra
        self.terms = terms

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise PresentationMismatchError(
                    "elements belong to different presentations")
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m, ZERO) + c
            if acc:
                terms[m] = acc
            else:
                terms.pop(m, None)
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = as_fraction(other)
            if not c:
                return self.algebra.zero()
            return Element(self.algebra, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, pc in self.algebra.product_terms(m1, m2).items():
                    acc = out.get(m, ZERO) + c * pc
                    if acc:
                        out[m] = acc
                    else:
                        out.pop(m, None)
        return Element(self.algebra, out)

    def __rmul__(self, other):
        # scalars commute; Element * Element never reaches here
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # -- structure ---------------------------------------------------------

    @property
    def weight(self):
        """Max monomial weight; None for the zero element."""
        if not self.terms:
            return None
        return max(self.algebra.monomial_weight(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.algebra.identity_monomial(), ZERO)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), ZERO)

    def iter_terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in canonical (weight, lex) ascending order."""
        for m in sorted(self.terms, key=self.algebra.monomial_key):
            yield m, self.terms[m]

    def weight_part(self, w: int) -> "Element":
        return Element(self.algebra, {
            m: c for m, c in self.terms.items()
            if self.algebra.monomial_weight(m) == w})

    def __repr__(self):
        return f"<{self}>"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        # leading (heaviest) term first for readability
        for mono, coeff in reversed(list(self.iter_terms())):
            mono_str = format_monomial(self.algebra, mono)
            if mono_str == "1":
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono_str
            else:
                body = f"{abs(coeff)}*{mono_str}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)


def format_monomial(algebra: Presentation, mono: Monomial) -> str:
    factors = []
    for name, e in zip(algebra.names, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def multiply(a: Element, b: Element) -> Element:
    return a * b


def commutator(a: Element, b: Element) -> Element:
    """[a, b] = a*b - b*a."""
    return a * b - b * a


def check_termination_weights(pres: Presentation) -> Report:
    """Verify weight([x_j, x_i]) < w_i + w_j for every table entry."""
    report = Report("termination-weights")
    for (j, i), terms in sorted(pres.table.items()):
        bound = pres.weights[i] + pres.weights[j]
        w = max((pres.monomial_weight(m) for m in terms), default=None)
        ok = w is None or w < bound
        report.add(
            f"[{pres.names[j]},{pres.names[i]}]", ok,
            "zero entry" if w is None else
            f"weight {w} {'<' if ok else '>='} {bound}")
    if not pres.table:
        report.add("no relations", True, "free commutative table")
    return report


def check_confluence(pres: Presentation) -> Report:
    """Resolve every overlap word x_k x_j x_i (k>j>i) both ways and compare.

    A failing triple means the ordered monomials do not form a basis and
    every downstream computation over this presentation is unsound.
    """
    term = check_termination_weights(pres)
    if not term.passed:
        raise ValueError("termination check must pass before confluence: "
                         + "; ".join(c.name for c in term.failures()))
    report = Report("confluence")
    n = pres.ngens
    for k, j, i in itertools.combinations(range(n - 1, -1, -1), 3):
        # first step rewrites (k,j) at position 0, or (j,i) at position 1
        via_left: dict[Monomial, Fraction] = {}
        _accumulate(via_left, pres.reduce_word((j, k, i)))
        for mono, c in pres.table.get((k, j), {}).items():
            _accumulate(via_left, pres.reduce_word(pres.word_of(mono) + (i,), c))
        via_right: dict[Monomial, Fraction] = {}
        _accumulate(via_right, pres.reduce_word((k, i, j)))
        for mono, c in pres.table.get((j, i), {}).items():
            _accumulate(via_right, pres.reduce_word((k,) + pres.word_of(mono), c))
        ok = via_left == via_right
        diff = ""
        if not ok:
            delta = dict(via_left)
            for m, c in via_right.items():
                acc = delta.get(m, ZERO) - c
                if acc:
                    delta[m] = acc
                else:
                    delta.pop(m, None)
            diff = f"normal forms differ by {Element(pres, delta)}"
        report.add(
            f"overlap ({pres.names[k]},{pres.names[j]},{pres.names[i]})", ok, diff)
    if pres.ngens < 3:
        report.add("no overlaps", True, "fewer than three generators")
    return report


def _accumulate(target: dict, terms: Mapping) -> None:
    for m, c in terms.items():
        acc = target.get(m, ZERO) + c
        if acc:
            target[m] = acc
        else:
            target.pop(m, None)
