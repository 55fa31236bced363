"""Graded Lie algebra extracted from the leading coproduct terms.

Each generator symbol contributes one basis vector, placed in degree
equal to the generator weight.  The bracket comes from pairing dual
basis vectors against the leading coproducts: only generator@generator
terms survive the pairing, so

    c_{ab}^e = coeff of g_a@g_b  -  coeff of g_b@g_a

in the leading coproduct of g_e.  No dual algebra object is ever
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import ZERO
from .grading import Signature, graded_coproduct_leading
from .hopf import HopfAlgebraError, PresentedHopfAlgebra
from .report import Report


@dataclass
class GradedLieAlgebra:
    """Graded basis with structure constants; antisymmetry is built in.

    brackets[(a, b)] for a < b maps basis index e to the coefficient of
    basis vector e in [u_a, u_b]; pairs with zero bracket are absent.
    """

    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    brackets: dict[tuple[int, int], dict[int, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        self.brackets = {
            pair: {e: c for e, c in table.items() if c}
            for pair, table in self.brackets.items()
            if any(table.values())}
        for (a, b) in self.brackets:
            if not 0 <= a < b < len(self.labels):
                raise ValueError("brackets must be stored for a < b")

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        if a == b:
            return {}
        if a < b:
            return dict(self.brackets.get((a, b), {}))
        return {e: -c for e, c in self.brackets.get((b, a), {}).items()}

    def degree_indices(self, d: int) -> list[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def dimension_of_degree(self, d: int) -> int:
        return len(self.degree_indices(d))

    def is_abelian(self) -> bool:
        return not self.brackets

    def signature(self) -> Signature:
        return Signature.from_weights(self.degrees)

    def __str__(self):
        rels = []
        for (a, b), table in sorted(self.brackets.items()):
            rhs = " + ".join(
                (f"{c}*" if c != 1 else "") + f"u_{self.labels[e]}"
                for e, c in sorted(table.items()))
            rels.append(f"[u_{self.labels[a]},u_{self.labels[b]}] = {rhs}")
        body = "; ".join(rels) if rels else "abelian"
        gens = ", ".join(f"u_{l}({d})" for l, d in zip(self.labels, self.degrees))
        return f"<{gens} | {body}>"


def lantern(H: PresentedHopfAlgebra) -> GradedLieAlgebra:
    """Structure constants of the dual graded Lie algebra of H.

    Requires the filtration certificate.  A Jacobi failure here is an
    internal inconsistency (the construction always yields a Lie algebra
    for certified input), so it raises instead of reporting.
    """
    H._require_filtration()
    pres = H.presentation
    n = pres.ngens
    gen_mono = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for e in range(n):
        leading = graded_coproduct_leading(H, e).terms
        for a in range(n):
            for b in range(a + 1, n):
                c = leading.get((gen_mono[a], gen_mono[b]), ZERO) \
                    - leading.get((gen_mono[b], gen_mono[a]), ZERO)
                if c:
                    brackets.setdefault((a, b), {})[e] = c
    L = GradedLieAlgebra(tuple(pres.names), tuple(pres.weights), brackets)
    check = verify_lie(L)
    if not check.passed:
        raise HopfAlgebraError(
            "extracted bracket table is not a graded Lie algebra; "
            "certification is inconsistent: "
            + "; ".join(c.name for c in check.failures()))
    return L


def verify_lie(L: GradedLieAlgebra) -> Report:
    """Jacobi on all basis triples plus grading additivity."""
    report = Report("graded lie axioms")
    graded_ok = True
    for (a, b), table in sorted(L.brackets.items()):
        for e in table:
            if L.degrees[e] != L.degrees[a] + L.degrees[b]:
                graded_ok = False
                report.add(
                    f"grading of [u_{L.labels[a]},u_{L.labels[b]}]", False,
                    f"hits degree {L.degrees[e]} != "
                    f"{L.degrees[a]}+{L.degrees[b]}")
    if graded_ok:
        report.add("grading additivity", True)
    n = L.dimension
    jacobi_ok = True
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                acc: dict[int, Fraction] = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    # [u_x, [u_y, u_z]]
                    for e, coeff in L.bracket(y, z).items():
                        for f, coeff2 in L.bracket(x, e).items():
                            v = acc.get(f, ZERO) + coeff * coeff2
                            if v:
                                acc[f] = v
                            else:
                                acc.pop(f, None)
                if acc:
                    jacobi_ok = False
                    report.add(
                        f"jacobi ({L.labels[a]},{L.labels[b]},{L.labels[c]})",
                        False, "cyclic sum nonzero")
    if jacobi_ok:
        report.add("jacobi identity", True)
    return report


def mobius(n: int) -> int:
    """Moebius function; mu(1)=1, mu(2)=mu(3)=-1, mu(4)=0, ..."""
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    count = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        else:
            p += 1
    if m > 1:
        count += 1
    return 1 if count % 2 == 0 else -1


def _witt_bound(i: int, m1: int) -> Fraction:
    total = 0
    for d in range(1, i + 1):
        if i % d == 0:
            total += mobius(d) * m1 ** (i // d)
    return Fraction(total, i)


def numerology_report(sig: Signature, L: GradedLieAlgebra | None = None) -> Report:
    """Numerical constraints satisfied by the signature of a full Hopf object.

    Verdicts: generated-in-degree-one (only when a Lie algebra is given),
    no gaps in the degree set, Witt bounds on the multiplicities, and the
    two-primitive bound when the total exceeds one.  Signatures of proper
    coideals may legitimately fail these checks.
    """
    report = Report(f"numerology {sig}")
    degrees = sig.degrees()
    t = max(degrees) if degrees else 0
    no_gaps = degrees == list(range(1, t + 1))
    report.add("no gaps", no_gaps,
               f"degrees {{{', '.join(map(str, degrees))}}} vs expected "
               f"{{1..{t}}}")
    m1 = sig.multiplicity(1)
    for i in range(2, t + 1):
        bound = _witt_bound(i, m1)
        mi = sig.multiplicity(i)
        report.add(f"witt bound at degree {i}", Fraction(mi) <= bound,
                   f"m_{i} = {mi} <= {bound}")
    if sig.total > 1:
        report.add("at least two primitives", m1 >= 2, f"m_1 = {m1}")
    if L is not None:
        report.extend(_carnot_check(L))
    return report


def _carnot_check(L: GradedLieAlgebra) -> Report:
    """Each degree layer above one must be spanned by brackets against degree 1."""
    report = Report("carnot")
    max_deg = max(L.degrees, default=0)
    ones = L.degree_indices(1)
    for d in range(2, max_deg + 1):
        layer = L.degree_indices(d)
        if not layer:
            continue
        col_of = {e: i for i, e in enumerate(layer)}
        rows = []
        for x in ones:
            for y in L.degree_indices(d - 1):
                vec = {col_of[e]: c for e, c in L.bracket(x, y).items()
                       if e in col_of}
                if vec:
                    rows.append(vec)
        got = linalg.rank(rows, len(layer))
        report.add(f"degree {d} generated from degree 1",
                   got == len(layer), f"rank {got} of {len(layer)}")
    if max_deg <= 1:
        report.add("generated in degree 1", True, "no higher layers")
    return report


def cocommutativity_test(H: PresentedHopfAlgebra) -> tuple[bool, Report]:
    """True iff all generator weights are one, with cross-checked evidence.

    When true, every generator must be primitive and the extracted Lie
    algebra must be abelian (the leading coproducts of weight-one
    generators carry no generator@generator terms).
    """
    H._require_filtration()
    pres = H.presentation
    verdict = all(w == 1 for w in pres.weights)
    evidence = Report(f"{H.name}: cocommutativity evidence")
    evidence.add("all generator weights are 1", verdict,
                 f"weights {list(pres.weights)}")
    if verdict:
        for g in pres.names:
            prim = not H.reduced_coproduct(pres.gen(g))
            evidence.add(f"{g} primitive", prim)
        evidence.add("dual lie algebra abelian", lantern(H).is_abelian())
    return verdict, evidence
