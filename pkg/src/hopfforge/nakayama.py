"""Characters, winding automorphisms and Nakayama automorphisms.

Characters are inputs here: for an embedded subalgebra the character of
its integral is supplied by the caller (or derived from the adjoint
trace for enveloping-type presentations), never computed homologically.
Winding maps apply the character to one coproduct leg; their stability
on a subalgebra span is verified at runtime instead of being assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, Presentation, ZERO, as_fraction, commutator
from .coideal import SubalgebraSpec
from .hopf import HopfAlgebraError
from .report import Report


def _presentation_of(target) -> Presentation:
    return target.presentation


def _target_name(target) -> str:
    return getattr(target, "name", "target")


@dataclass
class Character:
    """Algebra map to the base field, given by its generator values."""

    target: object
    values: dict[int, Fraction]
    report: Report | None = field(default=None, compare=False)

    def value(self, g) -> Fraction:
        pres = _presentation_of(self.target)
        i = pres.index(g) if not isinstance(g, int) else g
        return self.values.get(i, ZERO)

    def __call__(self, x: Element) -> Fraction:
        if x.algebra is not _presentation_of(self.target):
            raise ValueError("character applied outside its target presentation")
        total = ZERO
        for mono, c in x.terms.items():
            term = c
            for i, e in enumerate(mono):
                if e:
                    term *= self.values.get(i, ZERO) ** e
            total += term
        return total

    def is_counit(self) -> bool:
        return not any(self.values.values())

    def _require_verified(self) -> None:
        if self.report is None or not self.report.passed:
            raise HopfAlgebraError(
                "character is not verified on the target's relations")


def character(target, values) -> Character:
    """Build and verify a character from {generator: value}."""
    pres = _presentation_of(target)
    table = {pres.index(g): as_fraction(v) for g, v in values.items()}
    chi = Character(target, table)
    chi.report = verify_character(chi)
    return chi


def counit_character(target) -> Character:
    return character(target, {})


def verify_character(chi: Character) -> Report:
    """A character extends to an algebra map iff it kills every relation."""
    pres = _presentation_of(chi.target)
    report = Report(f"character on {_target_name(chi.target)}")
    for (j, i) in sorted(pres.table):
        value = chi(pres.commutator_entry(j, i))
        report.add(f"kills [{pres.names[j]},{pres.names[i]}]", value == 0,
                   "" if value == 0 else f"value {value}")
    if not pres.table:
        report.add("no relations", True)
    chi.report = report
    return report


def compose_with_antipode(chi: Character) -> Character:
    """The convolution inverse of a character: its composition with S."""
    chi._require_verified()
    target = chi.target
    pres = _presentation_of(target)
    values = {}
    if isinstance(target, SubalgebraSpec):
        host = target.host
        for i, g in enumerate(pres.names):
            img = host.antipode(target.embed_generator(i))
            rep = target.represent(img, target.embed_generator(i).weight)
            if rep is None:
                raise HopfAlgebraError(
                    f"antipode image of {g} leaves the subalgebra span")
            values[g] = chi(rep)
    else:
        for g in pres.names:
            values[g] = chi(target.antipode(pres.gen(g)))
    return character(target, values)


def winding(chi: Character, x: Element, side: str) -> Element:
    """Winding endomorphism: the character applied to one coproduct leg.

    side 'left' evaluates the character on first legs, side 'right' on
    second legs.  For a subalgebra target the evaluated cofactors, and
    the final image, must lie in the embedded span; both memberships are
    verified and a violation raises.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    chi._require_verified()
    target = chi.target
    pres = _presentation_of(target)
    if x.algebra is not pres:
        raise ValueError("winding input must live in the target presentation")
    if isinstance(target, SubalgebraSpec):
        host = target.host
        hx = target.embed(x)
        if not hx:
            return pres.zero()
        w = hx.weight
        anchor_leg = 2 if side == "left" else 1
        out = host.zero()
        for mono, cofactor in host.coproduct(hx).leg_cofactors(anchor_leg):
            rep = target.represent(cofactor, w)
            if rep is None:
                raise HopfAlgebraError(
                    f"winding cofactor {cofactor} is outside the subalgebra "
                    "span; the declared coideal side does not support this "
                    "winding")
            out = out + host.presentation.monomial(mono) * chi(rep)
        result = target.represent(out, w)
        if result is None:
            raise HopfAlgebraError(
                "winding image escapes the subalgebra span; stability "
                "verification failed")
        return result
    H = target
    out = H.zero()
    for (m1, m2), c in H.coproduct(x).terms.items():
        anchor, evaluated = (m2, m1) if side == "left" else (m1, m2)
        scale = c
        for i, e in enumerate(evaluated):
            if e:
                scale *= chi.values.get(i, ZERO) ** e
        if scale:
            out = out + pres.monomial(anchor) * scale
    return out


@dataclass
class GeneratorAutomorphism:
    """Algebra endomorphism of the target given by its generator images."""

    target: object
    images: dict[int, Element]
    inverse_images: dict[int, Element] | None = None

    def __post_init__(self):
        pres = _presentation_of(self.target)
        self.images = {
            (pres.index(g) if not isinstance(g, int) else g):
            (img if isinstance(img, Element) else pres.element(img))
            for g, img in self.images.items()}
        for i in range(pres.ngens):
            if i not in self.images:
                raise ValueError(f"missing image for generator {pres.names[i]}")

    def apply(self, x: Element) -> Element:
        pres = _presentation_of(self.target)
        if x.algebra is not pres:
            raise ValueError("automorphism applied outside its presentation")
        out = pres.zero()
        for mono, c in x.terms.items():
            term = pres.one()
            for i, e in enumerate(mono):
                for _ in range(e):
                    term = term * self.images[i]
            out = out + term * c
        return out

    def respects_relations(self) -> Report:
        pres = _presentation_of(self.target)
        report = Report("automorphism respects relations")
        for (j, i) in sorted(pres.table):
            lhs = commutator(self.images[j], self.images[i])
            rhs = self.apply(pres.commutator_entry(j, i))
            report.add(f"[{pres.names[j]},{pres.names[i]}]", lhs == rhs)
        return report

    def describe(self) -> str:
        pres = _presentation_of(self.target)
        return ", ".join(
            f"{g} -> {self.images[i]}" for i, g in enumerate(pres.names))


def _s2_on_target(target, x: Element, inverse: bool = False) -> Element:
    """Squared (or inverse-squared) antipode through the host, back in target."""
    if isinstance(target, SubalgebraSpec):
        host = target.host
        hx = target.embed(x)
        if not hx:
            return _presentation_of(target).zero()
        w = hx.weight
        if inverse:
            hy = host.antipode_inverse(host.antipode_inverse(hx))
        else:
            hy = host.s_squared(hx)
        rep = target.represent(hy, w)
        if rep is None:
            raise HopfAlgebraError(
                "squared antipode leaves the subalgebra span; certificate "
                "violated")
        return rep
    H = target
    if inverse:
        return H.antipode_inverse(H.antipode_inverse(x))
    return H.s_squared(x)


def nakayama_automorphism(target, chi: Character) -> GeneratorAutomorphism:
    """Nakayama automorphism from the declared coideal side.

    Right coideal: compose the left winding of the integral character
    with the squared antipode.  Left coideal: the right winding with the
    inverse-squared antipode.  A two-sided (hopf) target evaluates both
    formulas and insists they agree exactly (the hosts here have no
    nontrivial inner automorphisms).  The result is verified to respect
    the target's relations.
    """
    chi._require_verified()
    if chi.target is not target:
        raise ValueError("character was built for a different target")
    pres = _presentation_of(target)
    side = getattr(target, "side", "hopf")
    images_right = images_left = None
    if side in ("right", "hopf"):
        images_right = {
            i: _s2_on_target(target, winding(chi, pres.gen(i), "left"))
            for i in range(pres.ngens)}
    if side in ("left", "hopf"):
        images_left = {
            i: _s2_on_target(target, winding(chi, pres.gen(i), "right"),
                             inverse=True)
            for i in range(pres.ngens)}
    if side == "hopf" and images_right != images_left:
        raise HopfAlgebraError(
            "the two Nakayama formulas disagree on a two-sided target; "
            "certificates are inconsistent")
    nu = GeneratorAutomorphism(target, images_right or images_left)
    rep = nu.respects_relations()
    if not rep.passed:
        raise HopfAlgebraError(
            "Nakayama images do not respect the target relations: "
            + "; ".join(c.name for c in rep.failures()))
    return nu


def s4_identity_check(spec: SubalgebraSpec, chi: Character) -> Report:
    """Fourth antipode power against the two windings, on a Hopf subalgebra.

    Compares S^4 with the composition of the right winding by the
    character and the left winding by its convolution inverse, generator
    by generator, exactly.
    """
    from .coideal import is_hopf_subalgebra
    chi._require_verified()
    if chi.target is not spec:
        raise ValueError("character was built for a different target")
    report = Report(f"{spec.name}: fourth-power identity")
    if not is_hopf_subalgebra(spec):
        report.add("target is a Hopf subalgebra", False,
                   "the identity only applies to Hopf subalgebras")
        return report
    host = spec.host
    minus_chi = compose_with_antipode(chi)
    pres = spec.presentation
    for i, g in enumerate(pres.names):
        lhs = host.s_squared(host.s_squared(spec.embed_generator(i)))
        rhs = spec.embed(winding(minus_chi, winding(chi, pres.gen(i), "right"),
                                 "left"))
        report.add(f"S^4({g}) matches the winding composite", lhs == rhs,
                   "" if lhs == rhs else f"{lhs} vs {rhs}")
    return report


def normal_element_check(b: Element, tau: GeneratorAutomorphism, target=None) -> bool:
    """True iff tau(t)*b = b*t for every generator t of the target."""
    target = target if target is not None else tau.target
    pres = _presentation_of(target)
    if b.algebra is not pres:
        raise ValueError("normal-element candidate must live in the target")
    for i in range(pres.ngens):
        if tau.images[i] * b != b * pres.gen(i):
            return False
    return True


def enveloping_integral_character(target) -> Character:
    """Adjoint-trace character for an enveloping-type presentation.

    Requires every generator weight to be one and every commutator to be
    linear in the generators (with confluence, i.e. the Jacobi identity,
    already certified); the character sends each generator to the trace
    of its adjoint action.
    """
    pres = _presentation_of(target)
    if any(w != 1 for w in pres.weights):
        raise HopfAlgebraError(
            "adjoint-trace character needs all generators in weight one")
    gen_monos = [tuple(1 if k == i else 0 for k in range(pres.ngens))
                 for i in range(pres.ngens)]
    for (j, i), terms in pres.table.items():
        if any(m not in gen_monos for m in terms):
            raise HopfAlgebraError(
                "adjoint-trace character needs linear commutators")
    from .algebra import check_confluence
    conf = check_confluence(pres)
    if not conf.passed:
        raise HopfAlgebraError(
            "presentation fails the overlap (Jacobi) check: "
            + "; ".join(c.name for c in conf.failures()))
    values = {}
    for a, g in enumerate(pres.names):
        trace = ZERO
        for b in range(pres.ngens):
            bracket = pres.commutator_entry(a, b)
            trace += bracket.coefficient(gen_monos[b])
        values[g] = trace
    return character(target, values)
