"""Subalgebras of a host Hopf algebra: registration, coideal certificates,
antipode images, coinvariants and containment.

A subalgebra is always supplied *with* its own presentation (generators,
weights, commutator table) and an embedding into the host; the tool
verifies the data rather than discovering presentations.  Membership
tests are truncated at the maximum relevant weight, which is exact, not
an approximation, because second legs of a coproduct never outweigh the
element itself once the host filtration is certified.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .algebra import (Element, Monomial, Presentation, ZERO, ONE,
                      check_confluence, check_termination_weights, commutator)
from .grading import Signature
from .hopf import (CertificateMissingError, HopfAlgebraError,
                   PresentedHopfAlgebra)
from .report import Report


class RegistrationError(HopfAlgebraError):
    """The supplied subalgebra data failed a registration certificate."""


class _EmbeddedSpan:
    """Images of the ordered monomials on given generators, with solvers."""

    def __init__(self, host: PresentedHopfAlgebra, presentation: Presentation,
                 images: dict[int, Element], cutoff: int):
        self.host = host
        self.presentation = presentation
        self.images = images
        self.cutoff = cutoff
        self._mono_image: dict[Monomial, Element] = {}
        self._solvers: dict[int, tuple[linalg.LinearSolver, list[Monomial]]] = {}

    def monomial_image(self, mono: Monomial) -> Element:
        cached = self._mono_image.get(mono)
        if cached is None:
            if not any(mono):
                cached = self.host.one()
            else:
                last = max(k for k, e in enumerate(mono) if e)
                rest = tuple(e - 1 if k == last else e
                             for k, e in enumerate(mono))
                cached = self.monomial_image(rest) * self.images[last]
            self._mono_image[mono] = cached
        return cached

    def image(self, x: Element) -> Element:
        out = self.host.zero()
        for mono, c in x.terms.items():
            out = out + self.monomial_image(mono) * c
        return out

    def solver(self, max_weight: int):
        w = min(max_weight, self.cutoff)
        if w not in self._solvers:
            monomials = self.presentation.monomials_up_to(w)
            solver = linalg.LinearSolver(
                [dict(self.monomial_image(m).terms) for m in monomials])
            self._solvers[w] = (solver, monomials)
        return self._solvers[w]

    def independent_to(self, max_weight: int) -> bool:
        solver, monomials = self.solver(max_weight)
        return solver.rank == len(monomials)

    def contains(self, h: Element, max_weight: int | None = None) -> bool:
        if not h:
            return True
        w = h.weight if max_weight is None else max_weight
        if w > self.cutoff:
            raise CertificateMissingError(
                f"membership at weight {w} exceeds certified cutoff {self.cutoff}")
        solver, _ = self.solver(w)
        return solver.contains(dict(h.terms))

    def represent(self, h: Element, max_weight: int | None = None) -> Element | None:
        w = (h.weight or 0) if max_weight is None else max_weight
        if w > self.cutoff:
            raise CertificateMissingError(
                f"membership at weight {w} exceeds certified cutoff {self.cutoff}")
        solver, monomials = self.solver(w)
        coeffs = solver.solve(dict(h.terms))
        if coeffs is None:
            return None
        return Element(self.presentation,
                       {m: c for m, c in zip(monomials, coeffs) if c})


class SubalgebraSpec:
    """A presented subalgebra embedded in a host, with its certificates."""

    def __init__(self, host: PresentedHopfAlgebra, name: str,
                 presentation: Presentation, embedding: dict,
                 side: str):
        if side not in ("left", "right", "hopf"):
            raise ValueError("side must be left, right or hopf")
        self.host = host
        self.name = name
        self.presentation = presentation
        self.side = side
        self.embedding: dict[int, Element] = {}
        for g, img in embedding.items():
            i = presentation.index(g) if not isinstance(g, int) else g
            img = img if isinstance(img, Element) else host.presentation.element(img)
            if img.algebra is not host.presentation:
                raise ValueError("embedding images must live in the host")
            self.embedding[i] = img
        for i in range(presentation.ngens):
            if i not in self.embedding:
                raise ValueError(
                    f"missing embedding for generator {presentation.names[i]}")
        self.span: _EmbeddedSpan | None = None
        self.presentation_report: Report | None = None
        self.morphism_report: Report | None = None
        self.coideal_report: Report | None = None
        self.cutoff: int | None = None

    # -- helpers -------------------------------------------------------------

    def _require_registered(self) -> None:
        if self.span is None or not (self.morphism_report and
                                     self.morphism_report.passed):
            raise CertificateMissingError(
                f"{self.name}: subalgebra is not registered; "
                "run register_subalgebra first")

    def embed_generator(self, g) -> Element:
        i = self.presentation.index(g) if not isinstance(g, int) else g
        return self.embedding[i]

    def embed(self, x: Element) -> Element:
        """Image in the host of an element of the subalgebra presentation."""
        self._require_registered()
        return self.span.image(x)

    def contains(self, h: Element, max_weight: int | None = None) -> bool:
        self._require_registered()
        return self.span.contains(h, max_weight)

    def represent(self, h: Element, max_weight: int | None = None) -> Element | None:
        self._require_registered()
        return self.span.represent(h, max_weight)

    def signature(self) -> Signature:
        self._require_registered()
        return Signature.from_weights(self.presentation.weights)

    def gk_dimension(self) -> int:
        self._require_registered()
        return self.presentation.ngens

    def __repr__(self):
        return f"SubalgebraSpec({self.name} in {self.host.name}, {self.side})"


def register_subalgebra(host: PresentedHopfAlgebra, name: str,
                        generators, commutators, embedding,
                        side: str, cutoff: int | None = None,
                        check_coideal: bool = True) -> SubalgebraSpec:
    """Certify and return an embedded subalgebra.

    Verifies, in order: the subalgebra presentation terminates and is
    confluent; every relation maps to zero in the host; each generator's
    declared weight is the coradical degree of its image; the images of
    the ordered monomials up to the cutoff are linearly independent.
    With check_coideal, the declared side is certified as well.
    """
    host._require_filtration()
    if cutoff is None:
        cutoff = host.filtration.truncation
    pres = Presentation(generators, commutators)
    spec = SubalgebraSpec(host, name, pres, embedding, side)

    spec.presentation_report = Report(f"{name}: presentation")
    spec.presentation_report.extend(check_termination_weights(pres))
    if spec.presentation_report.passed:
        spec.presentation_report.extend(check_confluence(pres))
    if not spec.presentation_report.passed:
        raise RegistrationError(
            f"{name}: subalgebra presentation is not confluent/terminating: "
            + "; ".join(c.name for c in spec.presentation_report.failures()))

    for i, g in enumerate(pres.names):
        w = pres.weights[i]
        img = spec.embedding[i]
        if not img:
            raise RegistrationError(f"{name}: generator {g} embeds to zero")
        deg = host.coradical_degree(img)
        if deg != w:
            raise RegistrationError(
                f"{name}: reweight {g} to {deg}: declared weight {w} is not "
                "the coradical degree of its image")
        if img.weight > cutoff:
            raise RegistrationError(
                f"{name}: image of {g} exceeds the certification cutoff")

    span = _EmbeddedSpan(host, pres, spec.embedding, cutoff)
    report = Report(f"{name}: morphism")
    for (j, i) in sorted(pres.table):
        rel = f"[{pres.names[j]},{pres.names[i]}]"
        lhs = commutator(spec.embedding[j], spec.embedding[i])
        rhs = span.image(pres.commutator_entry(j, i))
        report.add(f"{rel} maps to zero", lhs == rhs,
                   "" if lhs == rhs else f"defect {lhs - rhs}")
    if pres.table == {}:
        report.add("no relations", True)
    if not report.passed:
        spec.morphism_report = report
        raise RegistrationError(
            f"{name}: embedding does not respect the relations: "
            + "; ".join(c.name for c in report.failures()))
    if not span.independent_to(cutoff):
        raise RegistrationError(
            f"{name}: images of the ordered monomials up to weight {cutoff} "
            "are linearly dependent; not an embedded ordered basis")
    report.add(f"monomial images independent to weight {cutoff}", True)
    spec.morphism_report = report
    spec.span = span
    spec.cutoff = cutoff
    if check_coideal:
        rep = coideal_check(spec)
        if not rep.passed:
            raise RegistrationError(
                f"{name}: declared side '{side}' fails: "
                + "; ".join(f"{c.name} ({c.details})" for c in rep.failures()))
    return spec


def coideal_check(spec: SubalgebraSpec, side: str | None = None) -> Report:
    """Certify the coideal side by membership of coproduct legs.

    For each generator image u: every second-leg cofactor of the host
    coproduct of u must lie in the embedded span (left side), or every
    first-leg cofactor (right side).  'hopf' checks both.  Membership is
    solved at weight <= weight(u), which is exact under the host
    filtration certificate.
    """
    spec._require_registered()
    side = side or spec.side
    sides = ("left", "right") if side == "hopf" else (side,)
    report = Report(f"{spec.name}: coideal ({side})")
    for s in sides:
        anchor_leg = 1 if s == "left" else 2
        for i, g in enumerate(spec.presentation.names):
            u = spec.embedding[i]
            w = u.weight
            t = spec.host.coproduct(u)
            bad = []
            for mono, cofactor in t.leg_cofactors(anchor_leg):
                if not spec.span.contains(cofactor, w):
                    from .algebra import format_monomial
                    mono_str = format_monomial(spec.host.presentation, mono)
                    pair = (f"{mono_str}@({cofactor})" if s == "left"
                            else f"({cofactor})@{mono_str}")
                    bad.append(f"offending term {pair}")
            report.add(f"{s} legs of coproduct({g}) lie in the span",
                       not bad, "; ".join(bad))
    spec.coideal_report = report
    return report


def antipode_image(spec: SubalgebraSpec) -> SubalgebraSpec:
    """The embedded image of the subalgebra under the host antipode.

    Generators map to the antipode images, the declared side flips, and
    the commutator table is recomputed inside the host and re-expressed
    on the new generators; all certificates are re-established from
    scratch by register_subalgebra.
    """
    spec._require_registered()
    host = spec.host
    host._require_antipode()
    pres = spec.presentation
    images = {i: host.antipode(spec.embedding[i]) for i in range(pres.ngens)}
    new_side = {"left": "right", "right": "left", "hopf": "hopf"}[spec.side]
    probe = _EmbeddedSpan(host, Presentation(list(zip(pres.names, pres.weights))),
                          images, spec.cutoff)
    table: dict[tuple[str, str], Element] = {}
    for j in range(pres.ngens):
        for i in range(j):
            c = commutator(images[j], images[i])
            if not c:
                continue
            bound = pres.weights[i] + pres.weights[j] - 1
            rep = probe.represent(c, bound)
            if rep is None:
                raise RegistrationError(
                    f"S({spec.name}): commutator [{pres.names[j]},"
                    f"{pres.names[i]}] is not expressible below the "
                    "termination bound")
            table[(pres.names[j], pres.names[i])] = rep.terms
    return register_subalgebra(
        host, f"S({spec.name})", list(zip(pres.names, pres.weights)), table,
        {pres.names[i]: images[i] for i in range(pres.ngens)},
        new_side, spec.cutoff)


def is_hopf_subalgebra(spec: SubalgebraSpec) -> bool:
    """True iff the antipode maps every generator image back into the span."""
    spec._require_registered()
    spec.host._require_antipode()
    for i in range(spec.presentation.ngens):
        img = spec.embedding[i]
        if not spec.span.contains(spec.host.antipode(img), img.weight):
            return False
    return True


def coideal_signature(spec: SubalgebraSpec) -> Signature:
    return spec.signature()


def gk_dimension(spec: SubalgebraSpec) -> int:
    return spec.gk_dimension()


def spans_equal(a: SubalgebraSpec, b: SubalgebraSpec) -> bool:
    """Mutual membership of generator images, at the generators' weights."""
    a._require_registered()
    b._require_registered()
    return (all(b.contains(a.embedding[i], a.embedding[i].weight)
                for i in range(a.presentation.ngens))
            and all(a.contains(b.embedding[i], b.embedding[i].weight)
                    for i in range(b.presentation.ngens)))


def containment_check(inner: SubalgebraSpec, outer: SubalgebraSpec) -> Report:
    """Check inner <= outer and the strictness dichotomy on generator counts.

    For certified subalgebras a proper containment must come with a
    strictly smaller generator count, and equal counts force equal spans.
    """
    inner._require_registered()
    outer._require_registered()
    if inner.host is not outer.host:
        raise ValueError("containment needs a common host")
    report = Report(f"containment {inner.name} in {outer.name}")
    missing = []
    for i, g in enumerate(inner.presentation.names):
        img = inner.embedding[i]
        if not outer.contains(img, img.weight):
            missing.append(g)
    contained = not missing
    report.add(f"{inner.name} contained in {outer.name}", contained,
               "" if contained else f"generators outside: {', '.join(missing)}")
    if not contained:
        return report
    equal = spans_equal(inner, outer)
    gk_in, gk_out = inner.gk_dimension(), outer.gk_dimension()
    if equal:
        report.add("equality", True, f"spans equal, gk {gk_in} = {gk_out}")
        report.add("gk dichotomy", gk_in == gk_out,
                   f"equal spans need equal counts: {gk_in} vs {gk_out}")
    else:
        report.add("proper containment", True, f"gk {gk_in} < {gk_out}")
        report.add("gk dichotomy", gk_in < gk_out,
                   f"proper containment needs strictly smaller count: "
                   f"{gk_in} vs {gk_out}")
    return report


def full_subalgebra(H: PresentedHopfAlgebra, cutoff: int | None = None
                    ) -> SubalgebraSpec:
    """The host registered as a subalgebra of itself (identity embedding)."""
    pres = H.presentation
    table = {(pres.names[j], pres.names[i]): dict(terms)
             for (j, i), terms in pres.table.items()}
    return register_subalgebra(
        H, H.name, list(zip(pres.names, pres.weights)), table,
        {g: pres.gen(g) for g in pres.names}, "hopf", cutoff)


def coinvariants(H: PresentedHopfAlgebra, spec: SubalgebraSpec,
                 weight_cutoff: int) -> list[Element]:
    """Basis of the coinvariants of the quotient by the right ideal of the
    subalgebra's augmentation part, up to the weight cutoff.

    With pi the projection of H onto H modulo (T+ * H), solves
    sum h_1 (x) pi(h_2) = h (x) pi(1) by exact linear algebra.  For a
    certified left coideal subalgebra the solution space is the
    subalgebra itself (the quotient correspondence round-trips).
    """
    spec._require_registered()
    H._require_filtration(weight_cutoff)
    pres = H.presentation
    monomials = pres.monomials_up_to(weight_cutoff)
    # span of T+ H up to the cutoff: generator images times all monomials
    products = []
    for i in range(spec.presentation.ngens):
        img = spec.embedding[i]
        w = img.weight
        for m in pres.monomials_up_to(weight_cutoff - w):
            products.append(dict((img * pres.monomial(m)).terms))
    ideal = linalg.LinearSolver(products)
    pi = {m: ideal.residual({m: ONE}) for m in monomials}
    # unknown h = sum x_m m; one equation per (first-leg monomial, quotient coord)
    rows: dict = {}
    for col, m in enumerate(monomials):
        coprod = H.coproduct(pres.monomial(m))
        for mono, cofactor in coprod.leg_cofactors(1):
            acc: dict = {}
            for v_mono, c in cofactor.terms.items():
                linalg.vec_add_scaled(acc, pi[v_mono], c)
            for q, c in acc.items():
                row = rows.setdefault((mono, q), {})
                row[col] = row.get(col, ZERO) + c
        for q, c in pi[pres.identity_monomial()].items():
            key = (m, q)
            prev = rows.setdefault(key, {}).get(col, ZERO)
            acc = prev - c
            if acc:
                rows[key][col] = acc
            else:
                rows[key].pop(col, None)
    rows = {k: r for k, r in rows.items() if r}
    basis = linalg.kernel_basis(list(rows.values()), len(monomials))
    out = []
    for vec in basis:
        vec = linalg.clear_denominators(vec)
        out.append(Element(pres, {monomials[j]: c for j, c in vec.items()}))
    return out


def primitive_of_coideal(spec: SubalgebraSpec) -> Element | None:
    """A nonzero primitive inside the embedded span, or None.

    A nontrivial coideal subalgebra of a connected host always meets the
    primitive space nontrivially, so None here signals a certificate bug.
    """
    spec._require_registered()
    host = spec.host
    t_monomials = spec.presentation.monomials_up_to(
        spec.cutoff, include_identity=False)
    if not t_monomials:
        return None
    rows: dict = {}
    for col, tm in enumerate(t_monomials):
        img = spec.span.monomial_image(tm)
        for key, c in host.reduced_coproduct(img).terms.items():
            rows.setdefault(key, {})[col] = c
    basis = linalg.kernel_basis(list(rows.values()), len(t_monomials))
    if not basis:
        return None
    vec = linalg.clear_denominators(basis[0])
    out = host.zero()
    for j, c in vec.items():
        out = out + spec.span.monomial_image(t_monomials[j]) * c
    return out
