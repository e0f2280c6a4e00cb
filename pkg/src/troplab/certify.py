"""Exact decision procedures for approximation factors and degrees.

The primitive is a dominance query: does the target vector u lie below
(u <= c) or above (u >= c) some convex combination c of a finite
generator set?  Everything else reduces to it:

* a (max,+) circuit r-approximates the maximization problem on A iff
  every produced vector lies below conv(A) and (1/r)A lies below
  conv(B);
* a (min,+) circuit r-approximates the minimization problem on A iff
  every produced vector lies above conv(A) and rA lies above conv(B);
  for 0-1 antichains A this tightens to pointwise domination plus
  support-matching combinations;
* the semantic degree of a monotone boolean circuit is the least r
  with rA tightly above conv(B), computed minterm by minterm.

Queries are preprocessed with exactness-preserving reductions before
the rational simplex runs: support filtering (mandatory for "above" and
tight queries), coordinate restriction to supp(u), projection dedup,
and a single-generator dominance fast path.  Every returned witness is
re-verified by direct arithmetic; with cross-checking enabled, every
feasibility verdict on at most 12 generators is replayed through the
independent Fourier-Motzkin oracle.

Circuits with constant inputs are certified through their constant-free
core (strip_constants is applied up front): eliminating constants
preserves any approximation factor the original circuit achieves, so
the core is the right object to certify, and a circuit whose constants
shift its values never approximates a problem whose feasible set
excludes the all-zero solution in the first place.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from .circuits import (
    ARITHMETIC,
    BOOLEAN,
    MAXPLUS,
    MINPLUS,
    Circuit,
    VectorSet,
    convert,
    produced_set,
    strip_constants,
    support,
)
from . import guards
from .errors import InternalCheck, UsageError
from .families import SetFamily, boolean_function_of, is_antichain, similar
from .simplex import OPTIMAL, fm_feasible, solve_lp

FM_GENERATOR_LIMIT = 12

cross_check_stats = {"checked": 0}
_cross_check_enabled = False


@contextmanager
def fm_cross_check():
    """Replay small lp_feasible decisions through Fourier-Motzkin."""
    global _cross_check_enabled
    old = _cross_check_enabled
    _cross_check_enabled = True
    try:
        yield cross_check_stats
    finally:
        _cross_check_enabled = old


@dataclass(frozen=True)
class DominanceQuery:
    """Does u lie below/above some convex combination of the generators?

    direction "below" asks for u <= c, "above" for u >= c.  With
    tight=True only generators whose support equals supp(u) are used.
    """

    target: tuple
    generators: tuple
    direction: str
    tight: bool = False

    def __post_init__(self):
        if self.direction not in ("below", "above"):
            raise UsageError(f"direction must be below/above, got {self.direction!r}")
        if not self.generators:
            raise UsageError("empty generator set")
        n = len(self.target)
        for v in self.generators:
            if len(v) != n:
                raise UsageError("generator arity mismatch")


@dataclass(frozen=True)
class Certificate:
    """Verdict plus a re-verifiable witness.

    For feasible verdicts `coefficients` lists (generator, multiplier)
    pairs summing to 1 whose combination dominates/is dominated by the
    target.  For infeasible verdicts the target itself is the witness
    (no multipliers exist for it).
    """

    feasible: bool
    target: tuple
    direction: str
    coefficients: tuple | None = None
    note: str = ""

    def combination(self):
        if self.coefficients is None:
            return None
        n = len(self.target)
        acc = [Fraction(0)] * n
        for vec, lam in self.coefficients:
            for i, c in enumerate(vec):
                acc[i] += lam * c
        return tuple(acc)


def verify_certificate(cert: Certificate, query: DominanceQuery) -> bool:
    """Re-verify a feasible certificate by direct rational arithmetic."""
    if not cert.feasible:
        return True
    if cert.coefficients is None:
        return False
    total = Fraction(0)
    usupp = support(query.target)
    gen_set = set(query.generators)
    for vec, lam in cert.coefficients:
        if lam < 0 or vec not in gen_set:
            return False
        if query.tight and support(vec) != usupp:
            return False
        total += lam
    if total != 1:
        return False
    comb = cert.combination()
    if query.direction == "below":
        return all(Fraction(u) <= c for u, c in zip(query.target, comb))
    return all(Fraction(u) >= c for u, c in zip(query.target, comb))


def _project(vec, coords):
    return tuple(vec[i] for i in coords)


def lp_feasible(query: DominanceQuery) -> Certificate:
    """Decide a dominance query exactly; witnesses are re-verified."""
    u = tuple(Fraction(c) for c in query.target)
    usupp = support(u)
    gens = sorted(set(tuple(v) for v in query.generators))

    if query.tight:
        gens = [v for v in gens if support(v) == usupp]
        if not gens:
            return Certificate(False, query.target, query.direction,
                               note="empty support filter")
    elif query.direction == "above":
        gens = [v for v in gens if support(v) <= usupp]
        if not gens:
            return Certificate(False, query.target, query.direction,
                               note="no generators inside the target support")

    cert = _decide(u, usupp, gens, query)
    if not verify_certificate(cert, query):
        raise InternalCheck("certificate failed re-verification")
    return cert


def _decide(u, usupp, gens, query) -> Certificate:
    below = query.direction == "below"

    for v in gens:
        if all(ui <= vi for ui, vi in zip(u, v)) if below else all(
            ui >= vi for ui, vi in zip(u, v)
        ):
            cert = Certificate(True, query.target, query.direction,
                               ((v, Fraction(1)),), note="pointwise")
            _maybe_cross_check(u, usupp, gens, below, True, query)
            return cert

    coords = sorted(usupp)
    reps = {}
    for v in gens:
        key = _project(v, coords)
        reps.setdefault(key, v)
    keys = sorted(reps)

    rel = ">=" if below else "<="
    constraints = [
        ([Fraction(key[ci]) for key in keys], rel, u[coords[ci]])
        for ci in range(len(coords))
    ]
    constraints.append(([Fraction(1)] * len(keys), "==", Fraction(1)))
    result = solve_lp([Fraction(0)] * len(keys), constraints)

    feasible = result.status == OPTIMAL
    _maybe_cross_check(u, usupp, gens, below, feasible, query)
    if not feasible:
        return Certificate(False, query.target, query.direction)
    coeffs = tuple(
        (reps[key], lam)
        for key, lam in zip(keys, result.solution)
        if lam != 0
    )
    return Certificate(True, query.target, query.direction, coeffs)


def _maybe_cross_check(u, usupp, gens, below, verdict, query):
    if not _cross_check_enabled:
        return
    if len(query.generators) > FM_GENERATOR_LIMIT and len(gens) > FM_GENERATOR_LIMIT:
        return
    coords = sorted(usupp)
    m = len(gens)
    rows = []
    for ci, coord in enumerate(coords):
        coeffs = [Fraction(v[coord]) for v in gens]
        if below:
            rows.append((coeffs, u[coord]))
        else:
            rows.append(([-c for c in coeffs], -u[coord]))
    ones = [Fraction(1)] * m
    rows.append((ones, Fraction(1)))
    rows.append(([-c for c in ones], Fraction(-1)))
    for i in range(m):
        e = [Fraction(0)] * m
        e[i] = Fraction(1)
        rows.append((e, Fraction(0)))
    oracle = fm_feasible(rows, m)
    cross_check_stats["checked"] += 1
    if oracle != verdict:
        raise InternalCheck(
            f"Fourier-Motzkin oracle disagrees with simplex on {query}"
        )


# ---------------------------------------------------------------------------
# Certification bundles


@dataclass
class CertificateBundle:
    verdict: bool
    sense: str
    factor: Fraction
    produced: VectorSet
    produced_side: tuple  # (vector, Certificate) for B against conv(A)
    feasible_side: tuple  # (vector, Certificate) for scaled A against conv(B)

    def failures(self):
        return [
            (v, c)
            for v, c in list(self.produced_side) + list(self.feasible_side)
            if not c.feasible
        ]


def _require_problem_set(a: VectorSet):
    if len(a) == 0:
        raise UsageError("empty feasible-solution set")
    zero = (0,) * a.n
    if zero in a:
        raise UsageError("the all-zero vector is not a feasible solution")


def _core(circuit: Circuit, expected: str) -> tuple[Circuit, VectorSet]:
    if circuit.semiring != expected:
        raise UsageError(f"expected a {expected} circuit, got {circuit.semiring}")
    core = strip_constants(circuit)
    return core, produced_set(core)


def _scale(vec, factor: Fraction):
    return tuple(Fraction(c) * factor for c in vec)


def is_zero_one_antichain(a: VectorSet) -> bool:
    if not a.is_zero_one():
        return False
    sups = list(a.supports())
    return not any(
        s != t and s <= t for s in sups for t in sups
    )


def certify_max(circuit: Circuit, a: VectorSet, r: Fraction) -> CertificateBundle:
    """Does the circuit's core approximate max-on-A within factor r?

    True iff every produced vector lies below conv(A) and (1/r)A lies
    below conv(B); both sides carry per-vector certificates.
    """
    r = Fraction(r)
    if r < 1:
        raise UsageError("approximation factors are >= 1")
    _require_problem_set(a)
    _, b = _core(circuit, MAXPLUS)
    gens_a = tuple(a.sorted_vectors())
    gens_b = tuple(b.sorted_vectors())
    produced_side = tuple(
        (v, lp_feasible(DominanceQuery(v, gens_a, "below"))) for v in gens_b
    )
    feasible_side = tuple(
        (v, lp_feasible(DominanceQuery(_scale(v, 1 / r), gens_b, "below")))
        for v in gens_a
    )
    verdict = all(c.feasible for _, c in produced_side) and all(
        c.feasible for _, c in feasible_side
    )
    return CertificateBundle(verdict, "max", r, b, produced_side, feasible_side)


def certify_min(circuit: Circuit, a: VectorSet, r: Fraction) -> CertificateBundle:
    """Does the circuit's core approximate min-on-A within factor r?

    General sets use the convex-hull conditions both ways; 0-1
    antichains use the cheaper equivalent: pointwise domination of A by
    B plus support-matching (tight) combinations below rA.
    """
    r = Fraction(r)
    if r < 1:
        raise UsageError("approximation factors are >= 1")
    _require_problem_set(a)
    _, b = _core(circuit, MINPLUS)
    gens_a = tuple(a.sorted_vectors())
    gens_b = tuple(b.sorted_vectors())

    tight = is_zero_one_antichain(a)
    produced_side = tuple(
        (v, lp_feasible(DominanceQuery(v, gens_a, "above"))) for v in gens_b
    )
    feasible_side = tuple(
        (
            v,
            lp_feasible(
                DominanceQuery(_scale(v, r), gens_b, "above", tight=tight)
            ),
        )
        for v in gens_a
    )
    verdict = all(c.feasible for _, c in produced_side) and all(
        c.feasible for _, c in feasible_side
    )
    return CertificateBundle(verdict, "min", r, b, produced_side, feasible_side)


# ---------------------------------------------------------------------------
# Optimal factors


@dataclass(frozen=True)
class FactorResult:
    status: str  # "rational" | "infinite" | "invalid"
    value: Fraction | None = None
    witness: tuple | None = None  # vector attaining/blocking the factor

    @property
    def is_finite(self) -> bool:
        return self.status == "rational"


def _extreme_scale(a_vec, gens, sense):
    """LP for one feasible vector a against the produced set.

    sense "max": largest t with t*a below conv(gens) (factor 1/t).
    sense "min": least r with some tight/filtered combination <= r*a.
    Only the supp(a) coordinates matter; generator projections are
    deduplicated first.
    """
    coords = sorted(support(a_vec))
    keys = sorted({_project(v, coords) for v in gens})
    g = len(keys)
    constraints = []
    for ci, coord in enumerate(coords):
        row = [Fraction(key[ci]) for key in keys]
        ai = Fraction(a_vec[coord])
        if sense == "max":
            constraints.append((row + [-ai], ">=", Fraction(0)))
        else:
            constraints.append((row + [-ai], "<=", Fraction(0)))
    constraints.append(([Fraction(1)] * g + [Fraction(0)], "==", Fraction(1)))
    objective = [Fraction(0)] * g + [Fraction(1)]
    result = solve_lp(objective, constraints, maximize=(sense == "max"))
    if result.status != OPTIMAL:
        raise InternalCheck(f"scale LP unexpectedly {result.status}")
    return result.objective


def exact_factor(circuit: Circuit, a: VectorSet, sense: str) -> FactorResult:
    """Least certified approximation factor of the circuit's core on A.

    "invalid" when the one-sided validity condition fails (the circuit
    is no approximator at any factor); "infinite" when some feasible
    vector is unreachable by any admissible combination (below the
    boolean bound, no finite factor exists).
    """
    if sense not in ("min", "max"):
        raise UsageError("sense must be 'min' or 'max'")
    _require_problem_set(a)
    _, b = _core(circuit, MAXPLUS if sense == "max" else MINPLUS)
    gens_a = tuple(a.sorted_vectors())
    gens_b = tuple(b.sorted_vectors())

    if sense == "max":
        for v in gens_b:
            if not lp_feasible(DominanceQuery(v, gens_a, "below")).feasible:
                return FactorResult("invalid", witness=v)
        best = None
        witness = None
        for av in gens_a:
            t = _extreme_scale(av, gens_b, "max")
            if t == 0:
                return FactorResult("infinite", witness=av)
            if best is None or 1 / t > best:
                best, witness = 1 / t, av
        if best < 1:
            raise InternalCheck("maximization factor below 1 despite validity")
        return FactorResult("rational", best, witness)

    antichain = is_zero_one_antichain(a)
    for v in gens_b:
        if antichain:
            ok = any(
                all(vi >= ai for vi, ai in zip(v, av)) for av in gens_a
            )
        else:
            ok = lp_feasible(DominanceQuery(v, gens_a, "above")).feasible
        if not ok:
            return FactorResult("invalid", witness=v)
    best = None
    witness = None
    for av in gens_a:
        asupp = support(av)
        if antichain:
            gens = [v for v in gens_b if support(v) == asupp]
        else:
            gens = [v for v in gens_b if support(v) <= asupp]
        if not gens:
            return FactorResult("infinite", witness=av)
        r = _extreme_scale(av, gens, "min")
        if best is None or r > best:
            best, witness = r, av
    if best < 1:
        raise InternalCheck("minimization factor below 1 despite validity")
    return FactorResult("rational", best, witness)


# ---------------------------------------------------------------------------
# Semantic degree and friends


def _minterm_set_ok(a: VectorSet) -> bool:
    if len(a) == 0 or not a.is_zero_one():
        return False
    if (0,) * a.n in a:
        return False
    return is_zero_one_antichain(a)


def boolean_versions_agree(b: VectorSet, a: VectorSet) -> bool:
    """Same boolean function: tables when arity permits, similarity beyond."""
    if a.n != b.n:
        raise UsageError("arity mismatch")
    if a.n <= guards.TABLE_VARIABLES:
        return boolean_function_of(b) == boolean_function_of(a)
    return similar(a, b)


def semantic_degree(circuit: Circuit, a: VectorSet) -> Fraction:
    """Least r with rA tightly above conv(B), maximized over minterms.

    The circuit must compute the monotone function whose minterm set is
    A; then every minterm admits support-matching produced vectors and
    the per-minterm LP optimum is attained and rational.
    """
    if circuit.semiring != BOOLEAN:
        raise UsageError("semantic degree applies to boolean circuits")
    if not _minterm_set_ok(a):
        raise UsageError("A must be a nonempty 0-1 antichain of minterms")
    b = produced_set(circuit)
    if not boolean_versions_agree(b, a):
        raise UsageError("circuit does not compute the boolean function of A")
    degree = Fraction(1)
    for av in a.sorted_vectors():
        asupp = support(av)
        gens = [v for v in b.sorted_vectors() if support(v) == asupp]
        if not gens:
            raise InternalCheck("similarity guarantees a support-matching vector")
        if tuple(av) in b:
            continue  # that minterm is produced as-is: its contribution is 1
        r = _extreme_scale(av, gens, "min")
        degree = max(degree, r)
    return degree


@dataclass(frozen=True)
class BoundedCopyReport:
    r: Fraction
    sufficient_all: bool          # every minterm has an r-bounded copy
    best_copy_heights: tuple      # (minterm, least max-entry of a copy or None)
    necessary_bound: tuple        # (minterm, r|a|-|a|+r)
    necessary_violations: tuple   # minterms whose best copy exceeds the bound


def bounded_copy_checks(a: VectorSet, b: VectorSet, r: Fraction) -> BoundedCopyReport:
    """Copy-based degree bounds: sufficiency at r, necessity at r|a|-|a|+r."""
    r = Fraction(r)
    if not _minterm_set_ok(a):
        raise UsageError("A must be a nonempty 0-1 antichain of minterms")
    heights = []
    bounds = []
    violations = []
    sufficient = True
    for av in a.sorted_vectors():
        asupp = support(av)
        copies = [max(v) for v in b.sorted_vectors() if support(v) == asupp]
        best = min(copies) if copies else None
        heights.append((av, best))
        size = sum(av)
        limit = r * size - size + r
        bounds.append((av, limit))
        if best is None or best > r:
            sufficient = False
        if best is None or best > limit:
            violations.append(av)
    return BoundedCopyReport(
        r, sufficient, tuple(heights), tuple(bounds), tuple(violations)
    )


def boolean_bound_check(circuit: Circuit, a: VectorSet) -> bool:
    """Boolean version of a certified (min,+) circuit must define f_A."""
    if circuit.semiring != MINPLUS:
        raise UsageError("boolean_bound_check applies to minplus circuits")
    core = strip_constants(circuit)
    return boolean_versions_agree(produced_set(core), a)


def arithmetic_witness_check(circuit: Circuit, family: SetFamily, r: Fraction) -> bool:
    """Monomial support-cover plus r-bounded same-support monomials.

    When both hold, the (min,+) conversion provably certifies at r;
    that implication is asserted on the spot.
    """
    r = Fraction(r)
    if circuit.semiring != ARITHMETIC:
        raise UsageError("expected an arithmetic circuit")
    if not is_antichain(family):
        raise UsageError("the family must be an antichain")
    b = produced_set(circuit)
    members = [frozenset(e - 1 for e in s) for s in family.members()]

    covers = all(
        any(m <= support(v) for m in members) for v in b.sorted_vectors()
    )
    has_copies = all(
        any(support(v) == m and max(v) <= r for v in b.sorted_vectors())
        for m in members
    )
    ok = covers and has_copies
    if ok:
        bundle = certify_min(convert(circuit, MINPLUS), family.characteristic_vectors(), r)
        if not bundle.verdict:
            raise InternalCheck(
                "arithmetic witness held but the minplus conversion failed to certify"
            )
    return ok
