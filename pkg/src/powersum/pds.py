"""Perfect difference sets: verification, Singer construction, canonical
forms, exhaustive search, and order-feasibility tests.

A perfect difference set of order q is a set of q+1 residues modulo
m = q^2 + q + 1 whose q^2 + q ordered pairwise differences hit every nonzero
residue exactly once (equivalently: a cyclic projective plane of order q).
``verify`` checks that property directly; ``singer_construct`` realizes it
for prime-power q from the cyclic structure of GF(q^3); ``exhaustive_search``
and ``enumerate_all`` explore all candidates at small orders with a
difference-coverage backtracker; ``feasibility`` combines the classical
nonexistence tests with the search.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt
from typing import NamedTuple, Optional

from . import _search
from .gf import factorize, make_field, primitive_element

DEFAULT_SEARCH_BUDGET = 10**8
MAX_SINGER_ORDER = 32
MAX_SEARCH_ORDER = 3000


class NotPrimePowerError(ValueError):
    """The requested order is not a prime power."""


class OrderTooLargeError(ValueError):
    """The requested order is beyond the desk-scale cap."""


class InvalidPdsError(ValueError):
    """An operation required a verified perfect difference set."""


def modulus_for_order(q: int) -> int:
    return q * q + q + 1


@dataclass(frozen=True)
class PerfectDifferenceSet:
    """Order q, modulus m = q^2+q+1, sorted residue tuple of size q+1."""

    q: int
    m: int
    residues: tuple[int, ...]

    def to_record(self) -> dict:
        """JSON-ready record; the wire format used by the CLI and fixtures."""
        return {"q": self.q, "m": self.m, "residues": list(self.residues)}

    @staticmethod
    def from_residues(residues, q: int) -> "PerfectDifferenceSet":
        m = modulus_for_order(q)
        return PerfectDifferenceSet(q=q, m=m,
                                    residues=tuple(sorted(r % m for r in residues)))


@dataclass(frozen=True)
class CanonicalForm:
    """Lex-least class representative under translation and unit scaling."""

    q: int
    m: int
    residues: tuple[int, ...]


class Verification(NamedTuple):
    """Verdict plus a witness residue when the check fails."""

    valid: bool
    reason: Optional[str]
    witness: Optional[int]


def verify(candidate, q: int) -> Verification:
    """Check the defining property: q+1 distinct residues mod q^2+q+1 whose
    differences cover each nonzero residue exactly once.

    On failure the witness pins the problem down: a repeated residue, or the
    first difference that is covered twice (scanning pairs in sorted order,
    positive difference before its negative).
    """
    m = modulus_for_order(q)
    res = sorted(x % m for x in candidate)
    for i in range(1, len(res)):
        if res[i] == res[i - 1]:
            return Verification(False, "duplicate-residue", res[i])
    if len(res) != q + 1:
        return Verification(False, "wrong-size", None)
    covered = bytearray(m)
    for i in range(len(res)):
        for j in range(i):
            d = res[i] - res[j]
            for w in (d, m - d):
                if covered[w]:
                    return Verification(False, "difference-covered-twice", w)
                covered[w] = 1
    # q+1 residues give exactly q^2+q = m-1 differences, so full coverage
    # with no doubles is forced by counting; nothing can be missing here.
    return Verification(True, None, None)


def prime_power(n: int) -> Optional[tuple[int, int]]:
    """(p, e) with n = p^e for prime p, or None.  n = 1 is not a prime power."""
    if n < 2:
        return None
    factors = factorize(n)
    if len(factors) != 1:
        return None
    return next(iter(factors.items()))


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def singer_construct(q: int) -> PerfectDifferenceSet:
    """Perfect difference set of prime-power order q from the cyclic action
    of a primitive element on the projective plane over GF(q).

    GF(q^3) is realized as GF(p^(3e)) for q = p^e; with g its primitive
    element, the point g^i of the plane lies on the line spanned by {1, g}
    over the subfield GF(q) iff g^i = c0 + c1*g for subfield scalars c0, c1.
    The i mod q^2+q+1 passing that membership test form the difference set.
    The result is checked by ``verify`` before it is returned.
    """
    decomposition = prime_power(q)
    if decomposition is None:
        raise NotPrimePowerError(f"{q} is not a prime power")
    if q > MAX_SINGER_ORDER:
        raise OrderTooLargeError(f"order {q} exceeds the cap {MAX_SINGER_ORDER}")
    p, e = decomposition
    field = make_field(p, 3 * e)
    g = primitive_element(field)
    m = modulus_for_order(q)

    # The subfield GF(q)* is the unique cyclic subgroup of index m; its
    # generator is g^m.  Collect GF(q) = {0} union powers of g^m.
    sub_gen = g**m
    subfield = [field.zero, field.one]
    cur = sub_gen
    while cur != field.one:
        subfield.append(cur)
        cur = cur * sub_gen
    if len(subfield) != q:
        raise ArithmeticError("subfield reconstruction failed")

    span = {c0 + c1 * g for c0 in subfield for c1 in subfield}
    if len(span) != q * q:
        raise ArithmeticError("line span has the wrong size")

    residues = []
    cur = field.one
    for i in range(m):
        if cur in span:
            residues.append(i)
        cur = cur * g
    result = PerfectDifferenceSet(q=q, m=m, residues=tuple(residues))
    check = verify(result.residues, q)
    if len(residues) != q + 1 or not check.valid:
        raise ArithmeticError(f"construction produced an invalid set: {check}")
    return result


def canonical_form(pds: PerfectDifferenceSet) -> CanonicalForm:
    """Lex-least sorted representative over all translations and all unit
    multiplications mod m.  Idempotent; equal inputs up to equivalence map to
    the same form.  The minimum always starts at residue 0, so it suffices to
    scan, for every unit u, the translates that move some element to 0.
    """
    check = verify(pds.residues, pds.q)
    if not check.valid:
        raise InvalidPdsError(f"not a perfect difference set: {check}")
    m = pds.m
    best: Optional[tuple[int, ...]] = None
    for u in range(1, m):
        if gcd(u, m) != 1:
            continue
        image = [(u * a) % m for a in pds.residues]
        for base in image:
            cand = tuple(sorted((x - base) % m for x in image))
            if best is None or cand < best:
                best = cand
    assert best is not None
    return CanonicalForm(q=pds.q, m=m, residues=best)


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------

# Any perfect difference set covers the difference 1, so some translate
# contains both 0 and 1.  Searching completions of the prefix (0, 1) is
# therefore complete for every modulus, and discards the translation orbit.


@dataclass(frozen=True)
class SearchResult:
    status: str  # "Found" | "NoneExists" | "BudgetExceeded"
    pds: Optional[PerfectDifferenceSet]
    nodes: int


@dataclass(frozen=True)
class EnumerationResult:
    complete: bool
    sets: tuple[tuple[int, ...], ...]  # all (0,1)-rooted solutions
    nodes: int


def _prefixes(m: int, k: int) -> list[tuple[int, int, int]]:
    # Slot 2 of the sorted set: values leave room for the remaining k-3 slots.
    return [(0, 1, a3) for a3 in range(2, m - k + 3)]


def _slices(budget: int, parts: int) -> list[int]:
    base, rem = divmod(budget, parts)
    return [base + (1 if i < rem else 0) for i in range(parts)]


def _validate_search_order(q: int) -> int:
    if q < 1:
        raise ValueError("order must be >= 1")
    if q > MAX_SEARCH_ORDER:
        raise OrderTooLargeError(f"order {q} exceeds the search cap {MAX_SEARCH_ORDER}")
    return modulus_for_order(q)


def exhaustive_search(q: int, budget: int = DEFAULT_SEARCH_BUDGET,
                      workers: int = 1) -> SearchResult:
    """Backtracking search for one perfect difference set of order q.

    The tree is rooted at the prefix (0, 1) and split by the third residue;
    the node budget is divided deterministically across the subtrees, so the
    verdict (and the found set) is identical for any worker count.  NoneExists
    is only reported when every subtree was fully exhausted within its slice.
    """
    m = _validate_search_order(q)
    k = q + 1
    if k <= 2:
        # q = 1: the prefix itself is the whole set {0, 1} mod 3.
        sol = PerfectDifferenceSet.from_residues((0, 1), q)
        assert verify(sol.residues, q).valid
        return SearchResult("Found", sol, 0)

    prefixes = _prefixes(m, k)
    slices = _slices(budget, len(prefixes))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(
                lambda args: _search.subtree_first(m, k, args[0], args[1]),
                zip(prefixes, slices)))
    else:
        outcomes = None  # evaluated lazily below so a hit stops the scan

    total_nodes = 0
    budget_hit = False
    for i, prefix in enumerate(prefixes):
        if outcomes is not None:
            status, nodes, sol = outcomes[i]
        else:
            status, nodes, sol = _search.subtree_first(m, k, prefix, slices[i])
        total_nodes += nodes
        if status == _search.FOUND:
            found = PerfectDifferenceSet.from_residues(sol, q)
            check = verify(found.residues, q)
            if not check.valid:
                raise ArithmeticError(f"search returned an invalid set: {check}")
            return SearchResult("Found", found, total_nodes)
        if status == _search.BUDGET:
            budget_hit = True
    return SearchResult("BudgetExceeded" if budget_hit else "NoneExists",
                        None, total_nodes)


def enumerate_all(q: int, budget: int = DEFAULT_SEARCH_BUDGET) -> EnumerationResult:
    """Every perfect difference set of order q containing {0, 1}.

    Each equivalence class has at least one such representative (translate a
    pair with difference 1 onto (0, 1)), so canonicalizing the returned sets
    surveys all classes.  ``complete`` is False when any subtree ran out of
    its budget slice, in which case the listing may be partial.
    """
    m = _validate_search_order(q)
    k = q + 1
    if k <= 2:
        return EnumerationResult(True, ((0, 1),), 0)
    prefixes = _prefixes(m, k)
    slices = _slices(budget, len(prefixes))
    sets: list[tuple[int, ...]] = []
    total_nodes = 0
    complete = True
    for prefix, part in zip(prefixes, slices):
        status, nodes, sols = _search.subtree_all(m, k, prefix, part)
        total_nodes += nodes
        sets.extend(sols)
        if status == _search.BUDGET:
            complete = False
    return EnumerationResult(complete, tuple(sets), total_nodes)


# ---------------------------------------------------------------------------
# Order feasibility
# ---------------------------------------------------------------------------


def is_sum_of_two_squares(n: int) -> bool:
    """Direct enumeration, 0 allowed: n = a^2 + b^2 for integers a, b."""
    a = 0
    while a * a * 2 <= n:
        b2 = n - a * a
        b = isqrt(b2)
        if b * b == b2:
            return True
        a += 1
    return False


def bruck_ryser_excludes(order: int) -> bool:
    """Nonexistence test: order = 1, 2 (mod 4) and not a sum of two squares."""
    if order % 4 not in (1, 2):
        return False
    return not is_sum_of_two_squares(order)


def wilbrink_excludes(order: int) -> bool:
    """Nonexistence test: order >= 6 and order = 3, 6 (mod 9)."""
    return order >= 6 and order % 9 in (3, 6)


@dataclass(frozen=True)
class FeasibilityReport:
    """Combined verdict of the classical tests and the exhaustive search.

    ``exhaustive_result`` is one of Found / NoneExists / NotAttempted (a
    search that ran out of budget counts as NotAttempted).  ``reasons`` names
    the tests the verdict rests on; a completed search shows up there only
    when it is the sole excluder, otherwise it speaks through
    ``exhaustive_result``.
    """

    order: int
    is_prime_power: bool
    bruck_ryser_excludes: bool
    wilbrink_excludes: bool
    exhaustive_result: str
    verdict: str  # "Exists" | "Excluded" | "OpenByTheseTests"
    reasons: tuple[str, ...]
    witness: Optional[PerfectDifferenceSet]

    def to_record(self) -> dict:
        return {
            "order": self.order,
            "is_prime_power": self.is_prime_power,
            "bruck_ryser_excludes": self.bruck_ryser_excludes,
            "wilbrink_excludes": self.wilbrink_excludes,
            "exhaustive_result": self.exhaustive_result,
            "verdict": self.verdict,
            "reasons": list(self.reasons),
            "witness": self.witness.to_record() if self.witness else None,
        }


def feasibility(order: int, search_budget: int = DEFAULT_SEARCH_BUDGET,
                workers: int = 1) -> FeasibilityReport:
    """Existence verdict for perfect difference sets of the given order.

    Prime powers exist by construction (a Singer witness is attached at desk
    scale).  Otherwise the exhaustive search runs within the budget, alongside
    the Bruck-Ryser and Wilbrink congruence tests; Excluded is never claimed
    unless at least one test actually fired.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    pp = is_prime_power(order)
    br = bruck_ryser_excludes(order)
    wb = wilbrink_excludes(order)

    if pp:
        if br or wb:
            raise ArithmeticError(
                f"exclusion test fired on prime power {order}")
        witness = singer_construct(order) if order <= MAX_SINGER_ORDER else None
        return FeasibilityReport(order, True, br, wb, "NotAttempted",
                                 "Exists", ("prime-power",), witness)

    theory = tuple(name for fired, name in
                   ((br, "bruck-ryser"), (wb, "wilbrink")) if fired)
    searchable = order <= MAX_SEARCH_ORDER
    result = exhaustive_search(order, search_budget, workers) if searchable else None

    if result is not None and result.status == "Found":
        return FeasibilityReport(order, False, br, wb, "Found",
                                 "Exists", ("exhaustive-search",), result.pds)
    if result is not None and result.status == "NoneExists":
        reasons = theory if theory else ("exhaustive-search",)
        return FeasibilityReport(order, False, br, wb, "NoneExists",
                                 "Excluded", reasons, None)
    # search not attempted or inconclusive
    if theory:
        return FeasibilityReport(order, False, br, wb, "NotAttempted",
                                 "Excluded", theory, None)
    return FeasibilityReport(order, False, br, wb, "NotAttempted",
                             "OpenByTheseTests", (), None)
