"""Exact arithmetic in tensor powers of a presented algebra.

Tensor legs always store basis monomials, never nested elements: every
map application immediately re-expands into the sparse basis form, so
equality stays structural.  Arity is plain data, which keeps iterated
coproducts of unbounded depth uniform.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .algebra import Element, Monomial, Presentation, PresentationMismatchError, ZERO, as_fraction

TensorKey = tuple  # tuple of Monomials, length = arity


class TensorElement:
    """Sparse exact-rational combination of monomial tuples of fixed arity."""

    __slots__ = ("algebra", "arity", "terms")

    def __init__(self, algebra: Presentation, arity: int,
                 terms: dict[TensorKey, Fraction]):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.algebra = algebra
        self.arity = arity
        self.terms = terms

    @classmethod
    def zero(cls, algebra: Presentation, arity: int) -> "TensorElement":
        return cls(algebra, arity, {})

    @classmethod
    def unit(cls, algebra: Presentation, arity: int) -> "TensorElement":
        one = algebra.identity_monomial()
        return cls(algebra, arity, {(one,) * arity: Fraction(1)})

    @classmethod
    def from_terms(cls, algebra: Presentation, arity: int, terms: Mapping) -> "TensorElement":
        out: dict[TensorKey, Fraction] = {}
        for key, coeff in dict(terms).items():
            key = tuple(tuple(int(e) for e in mono) for mono in key)
            if len(key) != arity:
                raise ValueError(f"key {key} does not have arity {arity}")
            c = as_fraction(coeff)
            if c:
                out[key] = out.get(key, ZERO) + c
        return cls(algebra, arity, {k: c for k, c in out.items() if c})

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "TensorElement") -> None:
        if other.algebra is not self.algebra:
            raise PresentationMismatchError("tensors over different presentations")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k, ZERO) + c
            if acc:
                terms[k] = acc
            else:
                terms.pop(k, None)
        return TensorElement(self.algebra, self.arity, terms)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.algebra, self.arity,
                             {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = as_fraction(c)
        if not c:
            return TensorElement.zero(self.algebra, self.arity)
        return TensorElement(self.algebra, self.arity,
                             {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.algebra is other.algebra and self.arity == other.arity
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- structural maps -----------------------------------------------------

    def apply_to_leg(self, leg: int, f: Callable[[Element], object]) -> "TensorElement":
        """Linear extension of f applied at position ``leg`` (1-based).

        f maps Element -> Element or Element -> TensorElement; in the
        tensor-valued case the result arity grows accordingly.  All other
        legs are untouched.
        """
        if not 1 <= leg <= self.arity:
            raise ValueError(f"leg {leg} out of range for arity {self.arity}")
        pos = leg - 1
        out: dict[TensorKey, Fraction] = {}
        out_arity = None
        for key, coeff in self.terms.items():
            image = f(self.algebra.monomial(key[pos]))
            if isinstance(image, Element):
                pieces = {(m,): c for m, c in image.terms.items()}
                grown = 0
            elif isinstance(image, TensorElement):
                pieces = image.terms
                grown = image.arity - 1
            else:
                raise TypeError("leg map must return Element or TensorElement")
            if out_arity is None:
                out_arity = self.arity + grown
            elif out_arity != self.arity + grown:
                raise ValueError("leg map returned inconsistent arities")
            for mid, c in pieces.items():
                new_key = key[:pos] + mid + key[pos + 1:]
                acc = out.get(new_key, ZERO) + coeff * c
                if acc:
                    out[new_key] = acc
                else:
                    out.pop(new_key, None)
        if out_arity is None:
            # zero tensor: probe f on zero to learn the target arity
            probe = f(self.algebra.zero())
            grown = probe.arity - 1 if isinstance(probe, TensorElement) else 0
            out_arity = self.arity + grown
        return TensorElement(self.algebra, out_arity, out)

    def leg_cofactors(self, leg: int) -> list[tuple[Monomial, Element]]:
        """Group terms by the monomial in position ``leg`` (1-based).

        Only meaningful for arity 2: returns pairs (monomial, cofactor on
        the other leg), canonically ordered.
        """
        if self.arity != 2:
            raise ValueError("leg_cofactors needs arity 2")
        if leg not in (1, 2):
            raise ValueError("leg must be 1 or 2")
        grouped: dict[Monomial, dict[Monomial, Fraction]] = {}
        for (m1, m2), c in self.terms.items():
            anchor, other = (m1, m2) if leg == 1 else (m2, m1)
            grouped.setdefault(anchor, {})[other] = c
        key = self.algebra.monomial_key
        return [(m, Element(self.algebra, grouped[m]))
                for m in sorted(grouped, key=key)]

    def max_total_weight(self):
        """Largest sum of leg weights; None for the zero tensor."""
        if not self.terms:
            return None
        mw = self.algebra.monomial_weight
        return max(sum(mw(m) for m in key) for key in self.terms)

    def __repr__(self):
        return f"<tensor {self}>"

    def __str__(self):
        if not self.terms:
            return "0"
        from .algebra import format_monomial
        mw = self.algebra.monomial_key
        parts = []
        for key in sorted(self.terms, key=lambda k: tuple(mw(m) for m in k)):
            coeff = self.terms[key]
            body = "@".join(format_monomial(self.algebra, m) for m in key)
            if abs(coeff) != 1:
                body = f"{abs(coeff)}*{body}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)


def tensor_product(*factors: Element) -> TensorElement:
    """The pure tensor e_1 (x) e_2 (x) ... expanded into basis form."""
    if not factors:
        raise ValueError("need at least one factor")
    algebra = factors[0].algebra
    terms: dict[TensorKey, Fraction] = {(): Fraction(1)}
    for e in factors:
        if e.algebra is not algebra:
            raise PresentationMismatchError("factors over different presentations")
        new: dict[TensorKey, Fraction] = {}
        for key, c in terms.items():
            for m, cm in e.terms.items():
                new[key + (m,)] = new.get(key + (m,), ZERO) + c * cm
        terms = {k: c for k, c in new.items() if c}
    return TensorElement(algebra, len(factors), terms)


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """Componentwise product: (a1@...@ak) * (b1@...@bk) = a1*b1 @ ... @ ak*bk."""
    s._check(t)
    algebra = s.algebra
    out: dict[TensorKey, Fraction] = {}
    for key1, c1 in s.terms.items():
        for key2, c2 in t.terms.items():
            # expand the componentwise products leg by leg
            partial: dict[TensorKey, Fraction] = {(): c1 * c2}
            for m1, m2 in zip(key1, key2):
                prod = algebra.product_terms(m1, m2)
                grown: dict[TensorKey, Fraction] = {}
                for key, c in partial.items():
                    for m, pc in prod.items():
                        grown[key + (m,)] = grown.get(key + (m,), ZERO) + c * pc
                partial = grown
                if not partial:
                    break
            for key, c in partial.items():
                acc = out.get(key, ZERO) + c
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
    return TensorElement(algebra, s.arity, out)


def contract(t: TensorElement) -> Element:
    """Multiply the two legs of an arity-2 tensor into a single element."""
    if t.arity != 2:
        raise ValueError("contract needs arity 2")
    out: dict[Monomial, Fraction] = {}
    for (m1, m2), c in t.terms.items():
        for m, pc in t.algebra.product_terms(m1, m2).items():
            acc = out.get(m, ZERO) + c * pc
            if acc:
                out[m] = acc
            else:
                out.pop(m, None)
    return Element(t.algebra, out)
