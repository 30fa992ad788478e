"""Exhaustive property suites over small semigroups.

Each suite checks a family of algebraic laws on every semigroup (up to
isomorphism) of order at most ``order`` and returns a :class:`SuiteResult`.
Some suites cap the order internally where the universe would explode; the
result records the order actually used.
"""

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from pointlike_lab.bitsets import face_key, is_subset, members, nonempty_subsets
from pointlike_lab.complexes import (
    Direction,
    LatticeOp,
    complex_generate,
    complex_lattice,
    complex_product,
    downward_close,
    enumerate_complexes,
    meet_all,
    singleton_complex,
    transport,
)
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.enumeration import Dedup, canonical_form, enumerate_semigroups, semigroups_up_to
from pointlike_lab.errors import ExpressionError
from pointlike_lab.logging import get_logger
from pointlike_lab.moduli import (
    BuiltinContext,
    BuiltinModulus,
    ContextKind,
    JoinModulus,
    ModulusContext,
    ModulusKind,
    RestrictedModulus,
    builtin_contexts,
    builtin_moduli,
    ctx_operator_member,
    completion_trace,
    functor_value,
    monad_completion,
    points_member,
    points_pseudovariety,
    refines,
    restricted_functor_value,
    union_closure_step,
)
from pointlike_lab.pointlikes import (
    certify_exact,
    fptc_check,
    oracle_pointlikes,
    reversal_transfer_check,
)
from pointlike_lab.pseudovarieties import PseudovarietyId, PseudovarietyKind, pv_member
from pointlike_lab.relmorph import (
    Cospan,
    change_of_base,
    direct_sum,
    greedy_generators,
    is_division,
    minimal_graphs,
    nerve,
    product,
    pullback,
    reverse_rel,
    terminal,
)
from pointlike_lab.semigroup import (
    ElementKind,
    GreenRelation,
    Morphism,
    Semigroup,
    SubsemigroupKind,
    adjoin_identity,
    congruences_and_quotients,
    cyclic_group,
    direct_product,
    element_sets,
    homomorphisms,
    induced_subsemigroup,
    permute,
    reverse,
    special_subsemigroups,
    green_partition,
    validate_table,
)

logger = get_logger(__name__)

MAX_REPORTED_VIOLATIONS = 50

NERVE_PAIR_SAMPLE = 300
NERVE_BASE_CHANGE_SAMPLE = 60
NERVE_PRODUCT_SAMPLE = 60
_SAMPLE_SEED = 0


@dataclass(frozen=True)
class SuiteResult:
    name: str
    order: int
    checked: int
    violations: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class _Tally:
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    def check(self, condition: bool, message: Callable[[], str]) -> None:
        self.checked += 1
        if not condition and len(self.violations) < MAX_REPORTED_VIOLATIONS:
            self.violations.append(message())

    def result(self, name: str, order: int) -> SuiteResult:
        return SuiteResult(name, order, self.checked, tuple(self.violations))


SUITES: Dict[str, Callable[[int, Limits], SuiteResult]] = {}


def suite(name: str):
    def register(func):
        SUITES[name] = func
        return func
    return register


def _table(s: Semigroup) -> str:
    return str([list(row) for row in s.table])


def _universe(order: int, limits: Limits) -> List[Semigroup]:
    return semigroups_up_to(order, Dedup.UP_TO_ISO, limits)


def _morphisms(universe: List[Semigroup]) -> Iterator[Morphism]:
    for s in universe:
        for t in universe:
            yield from homomorphisms(s, t)


def _subgroups_by_filter(s: Semigroup) -> List[int]:
    found = []
    for x in nonempty_subsets(s.order):
        if not s.is_closed(x):
            continue
        identities = [e for e in members(x) if all(s.mul(e, g) == g == s.mul(g, e) for g in members(x))]
        if identities and all(
            any(s.mul(g, h) == identities[0] for h in members(x)) for g in members(x)
        ):
            found.append(x)
    return sorted(found, key=face_key)


@suite("sgp-core")
def sgp_core_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    for s in _universe(order, limits):
        n = s.order
        tally.check(reverse(reverse(s)) == s, lambda: f"reversal is not an involution on {_table(s)}")
        r = green_partition(s, GreenRelation.R)
        l = green_partition(s, GreenRelation.L)
        for h in green_partition(s, GreenRelation.H):
            tally.check(
                any(is_subset(h, c) for c in r) and any(is_subset(h, c) for c in l),
                lambda: f"H-class not inside an R- and an L-class in {_table(s)}",
            )
        subgroups = special_subsemigroups(s, SubsemigroupKind.SUBGROUPS)
        union = 0
        for g in subgroups:
            union |= g
        tally.check(
            union == element_sets(s, ElementKind.GROUP_ELEMENTS),
            lambda: f"group elements differ from the union of subgroups in {_table(s)}",
        )
        tally.check(
            subgroups == _subgroups_by_filter(s),
            lambda: f"subgroups differ from the direct filter in {_table(s)}",
        )
        left = pv_member(PseudovarietyId(PseudovarietyKind.LEFT_ZERO), s)
        right = pv_member(PseudovarietyId(PseudovarietyKind.RIGHT_ZERO), reverse(s))
        tally.check(left == right, lambda: f"left-zero and reversed right-zero disagree on {_table(s)}")
        flipped = permute(s, [n - 1 - x for x in s.elements])
        for kind in PseudovarietyKind:
            pv = PseudovarietyId(kind, 2 if kind in (PseudovarietyKind.DELAY_K, PseudovarietyKind.REVERSE_DELAY_K) else None)
            tally.check(
                pv_member(pv, s) == pv_member(pv, flipped),
                lambda: f"{pv.name} is not isomorphism invariant on {_table(s)}",
            )
        if n <= limits.max_congruence_order:
            for congruence in congruences_and_quotients(s, limits):
                try:
                    validate_table(congruence.quotient.order, congruence.quotient.table, limits=limits)
                    Morphism.checked(s, congruence.quotient, congruence.morphism.map)
                    ok = congruence.morphism.is_surjective
                except ValueError:
                    ok = False
                tally.check(ok, lambda: f"bad quotient of {_table(s)}")
        try:
            validate_table(n + 1, adjoin_identity(s).table, limits=limits)
            ok = True
        except ValueError:
            ok = False
        tally.check(ok, lambda: f"adjoining an identity broke associativity of {_table(s)}")
    return tally.result("sgp-core", order)


def _associative(arr: np.ndarray) -> bool:
    return bool(np.array_equal(arr[arr], arr[:, arr]))


def naive_counts(n: int) -> Dict[Dedup, int]:
    """Semigroup counts of order n by filtering every n×n table."""
    raw = 0
    iso, anti = set(), set()
    for flat in itertools.product(range(n), repeat=n * n):
        arr = np.array(flat, dtype=np.int64).reshape(n, n)
        if not _associative(arr):
            continue
        raw += 1
        s = Semigroup.from_rows(arr)
        iso.add(canonical_form(s))
        anti.add(canonical_form(s, anti=True))
    return {Dedup.RAW: raw, Dedup.UP_TO_ISO: len(iso), Dedup.UP_TO_ISO_ANTI: len(anti)}


@suite("enumeration")
def enumeration_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    for n in range(1, used + 1):
        expected = naive_counts(n)
        for dedup in Dedup:
            found = list(enumerate_semigroups(n, dedup, limits))
            tally.check(
                len(found) == expected[dedup],
                lambda: f"order {n} {dedup.value}: enumerated {len(found)}, expected {expected[dedup]}",
            )
            if dedup is not Dedup.RAW:
                forms = [canonical_form(s, anti=dedup is Dedup.UP_TO_ISO_ANTI) for s in found]
                tally.check(len(set(forms)) == len(forms), lambda: f"order {n} {dedup.value}: duplicates")
    return tally.result("enumeration", used)


def _families(s: Semigroup) -> List[Tuple[int, ...]]:
    subsets = list(nonempty_subsets(s.order))
    return [()] + [(x,) for x in subsets] + list(itertools.combinations(subsets, 2))


@suite("closure")
def closure_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    for s in _universe(used, limits):
        generated = {family: complex_generate(s, family, limits) for family in _families(s)}
        for family, k in generated.items():
            tally.check(all(x in k for x in family), lambda: f"generation is not increasing on {_table(s)}")
            tally.check(
                complex_generate(s, k.max_faces, limits) == k,
                lambda: f"generation is not idempotent on {_table(s)}",
            )
            tally.check(not k.check_invariants(), lambda: f"generated family is not a complex on {_table(s)}")
            tally.check(
                downward_close(s, k.faces, limits) == k.faces,
                lambda: f"downward closure is not idempotent on {_table(s)}",
            )
            for x in family:
                tally.check(generated[(x,)] <= k, lambda: f"generation is not monotone on {_table(s)}")
    return tally.result("closure", used)


@suite("adjunction")
def adjunction_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    universe = _universe(used, limits)
    lattices = {s: enumerate_complexes(s, limits) for s in universe}
    for phi in _morphisms(universe):
        pushed = [transport(phi, Direction.PUSHFORWARD, k, limits) for k in lattices[phi.dom]]
        pulled = [transport(phi, Direction.PULLBACK, k, limits) for k in lattices[phi.cod]]
        for k_s, push in zip(lattices[phi.dom], pushed):
            for k_t, pull in zip(lattices[phi.cod], pulled):
                tally.check(
                    (push <= k_t) == (k_s <= pull),
                    lambda: f"adjunction fails for {phi.map} from {_table(phi.dom)}",
                )
        sample_s = lattices[phi.dom][:4]
        sample_t = lattices[phi.cod][:4]
        for a, b in itertools.combinations(sample_s, 2):
            joined = transport(phi, Direction.PUSHFORWARD, complex_lattice(LatticeOp.JOIN, a, b, limits), limits)
            tally.check(
                joined == complex_lattice(
                    LatticeOp.JOIN,
                    transport(phi, Direction.PUSHFORWARD, a, limits),
                    transport(phi, Direction.PUSHFORWARD, b, limits),
                    limits,
                ),
                lambda: f"pushforward does not preserve joins for {phi.map}",
            )
        for a, b in itertools.combinations(sample_t, 2):
            met = transport(phi, Direction.PULLBACK, complex_lattice(LatticeOp.MEET, a, b), limits)
            tally.check(
                met == complex_lattice(
                    LatticeOp.MEET,
                    transport(phi, Direction.PULLBACK, a, limits),
                    transport(phi, Direction.PULLBACK, b, limits),
                ),
                lambda: f"pullback does not preserve meets for {phi.map}",
            )
        if phi.is_surjective:
            for k_s, push in zip(lattices[phi.dom], pushed):
                images = downward_close(phi.cod, (phi.image(f) for f in k_s.max_faces), limits)
                tally.check(
                    push.faces == images,
                    lambda: f"pushforward along a surjection adds faces for {phi.map}",
                )
    return tally.result("adjunction", used)


@suite("lattice")
def lattice_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    for s in _universe(used, limits):
        lattice = enumerate_complexes(s, limits)
        known = {k.faces for k in lattice}
        for k in lattice:
            tally.check(not k.check_invariants(), lambda: f"lattice member is not a complex over {_table(s)}")
        for a, b in itertools.combinations(lattice, 2):
            for op in LatticeOp:
                c = complex_lattice(op, a, b, limits)
                tally.check(c.faces in known, lambda: f"{op.value} left the lattice over {_table(s)}")
        running = set(lattice[0].faces)
        for length, k in enumerate(lattice[1:], start=2):
            running &= k.faces
            tally.check(
                meet_all(lattice[:length]).faces == frozenset(running),
                lambda: f"filtered meet differs from the pointwise intersection over {_table(s)}",
            )
    return tally.result("lattice", used)


def _graphs(s: Semigroup, codomains: Iterable[Semigroup]):
    gens = greedy_generators(s)
    return [rho for t in codomains for rho in minimal_graphs(s, t, gens)]


def _sample(items: List, size: int, rng: random.Random) -> List:
    return items if len(items) <= size else rng.sample(items, size)


@suite("nerve")
def nerve_suite(order: int, limits: Limits) -> SuiteResult:
    """Nerve laws for every minimal graph between semigroups of the universe.

    Per-graph laws run on every graph. Base change runs on at most
    NERVE_BASE_CHANGE_SAMPLE graphs per domain, the pair laws on at most
    NERVE_PAIR_SAMPLE pairs per domain, and the product law on
    NERVE_PRODUCT_SAMPLE pairs overall; larger populations are sampled with a
    fixed seed, so repeated runs check the same cases.
    """
    tally = _Tally()
    used = min(order, 3)
    rng = random.Random(_SAMPLE_SEED)
    universe = _universe(used, limits)
    everything = []
    for s in universe:
        graphs = _graphs(s, universe)
        nerves = [nerve(rho, limits) for rho in graphs]
        everything.extend(zip(graphs, nerves))
        sing = singleton_complex(s, limits)
        for rho, k in zip(graphs, nerves):
            tally.check(is_division(rho) == (k == sing), lambda: f"division test disagrees with the nerve on {_table(s)}")
            tally.check(not k.check_invariants(), lambda: f"nerve is not a complex on {_table(s)}")
            mirrored = nerve(reverse_rel(rho), limits)
            tally.check(mirrored.faces == k.faces, lambda: f"reversal changes the nerve on {_table(s)}")
        endomorphisms = list(homomorphisms(s, s))
        for rho, k in _sample(list(zip(graphs, nerves)), NERVE_BASE_CHANGE_SAMPLE, rng):
            for phi in endomorphisms:
                tally.check(
                    nerve(change_of_base(phi, rho), limits) == transport(phi, Direction.PULLBACK, k, limits),
                    lambda: f"base change fails on {_table(s)}",
                )
        pairs = list(itertools.combinations(zip(graphs, nerves), 2))
        for (rho1, k1), (rho2, k2) in _sample(pairs, NERVE_PAIR_SAMPLE, rng):
            if rho1.cod == rho2.cod and rho1.graph <= rho2.graph:
                tally.check(k1 <= k2, lambda: f"nerve is not monotone on {_table(s)}")
            summed = direct_sum(rho1, rho2, limits)
            tally.check(
                nerve(summed, limits) == complex_lattice(LatticeOp.MEET, k1, k2),
                lambda: f"direct sum does not go to the meet on {_table(s)}",
            )
            over_terminal = Cospan(
                Morphism.identity(s), Morphism(rho1.cod, terminal(s).cod, (0,) * rho1.cod.order),
                Morphism.identity(s), Morphism(rho2.cod, terminal(s).cod, (0,) * rho2.cod.order),
                terminal(s),
            )
            tally.check(
                pullback(rho1, rho2, over_terminal, limits) == summed,
                lambda: f"pullback over the terminal object differs from the direct sum on {_table(s)}",
            )
    if everything:
        chosen = [(rng.choice(everything), rng.choice(everything)) for _ in range(NERVE_PRODUCT_SAMPLE)]
        for (rho1, k1), (rho2, k2) in chosen:
            tally.check(
                nerve(product(rho1, rho2, limits), limits) == complex_product(k1, k2, limits=limits),
                lambda: "nerve of a product differs from the product of nerves",
            )
    return tally.result("nerve", used)


def _axiom_checks(
    tally: _Tally,
    name: str,
    evaluate: Callable[[Semigroup], frozenset],
    universe: List[Semigroup],
    limits: Limits,
    closed: bool = False,
) -> None:
    for phi in _morphisms(universe):
        target = evaluate(phi.cod)
        for x in evaluate(phi.dom):
            pushed = phi.image(x)
            tally.check(
                any(is_subset(pushed, y) for y in target),
                lambda: f"{name}: push axiom fails for {phi.map} from {_table(phi.dom)}",
            )
    for s in universe:
        source = evaluate(s)
        if closed:
            for u in source:
                tally.check(s.is_closed(u), lambda: f"{name}: assigns a non-subsemigroup on {_table(s)}")
        for congruence in congruences_and_quotients(s, limits):
            phi = congruence.morphism
            images = {phi.image(x) for x in source}
            for y in evaluate(phi.cod):
                tally.check(y in images, lambda: f"{name}: lift axiom fails on a quotient of {_table(s)}")


@suite("moduli-axioms")
def moduli_axioms_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    universe = _universe(used, limits)
    for modulus in builtin_moduli(2) + builtin_moduli(1):
        _axiom_checks(tally, modulus.expression(), lambda s: modulus.evaluate(s, limits), universe, limits)
    return tally.result("moduli-axioms", used)


@suite("contexts")
def contexts_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    universe = _universe(used, limits)
    contexts = builtin_contexts() + [ModulusContext(m) for m in builtin_moduli(2)]
    for context in contexts:
        _axiom_checks(tally, context.expression(), lambda s: context.evaluate(s, limits), universe, limits, closed=True)
    loc = BuiltinContext(ContextKind.LOC)
    trivial = PseudovarietyId(PseudovarietyKind.TRIVIAL)
    locally_trivial = PseudovarietyId(PseudovarietyKind.LOCALLY_TRIVIAL)
    for s in universe:
        tally.check(
            ctx_operator_member(loc, trivial, s, limits) == pv_member(locally_trivial, s),
            lambda: f"local context disagrees with local triviality on {_table(s)}",
        )
    return tally.result("contexts", used)


@suite("points")
def points_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    for s in _universe(order, limits):
        for modulus in builtin_moduli(1) + builtin_moduli(2) + builtin_moduli(3):
            pv = points_pseudovariety(modulus)
            tally.check(
                points_member(modulus, s, limits) == pv_member(pv, s),
                lambda: f"points of {modulus} differ from {pv.name} on {_table(s)}",
            )
    return tally.result("points", order)


@suite("points-closure")
def points_closure_suite(order: int, limits: Limits) -> SuiteResult:
    """points(Λ) is closed under subsemigroups, quotients and binary products."""
    tally = _Tally()
    used = min(order, 3)
    universe = _universe(used, limits)
    for modulus in builtin_moduli(2):
        points = [s for s in universe if points_member(modulus, s, limits)]
        for s in points:
            for u in nonempty_subsets(s.order):
                if not s.is_closed(u):
                    continue
                sub, _ = induced_subsemigroup(s, u)
                tally.check(
                    points_member(modulus, sub, limits),
                    lambda: f"a subsemigroup of the point {_table(s)} of {modulus} is not a point",
                )
            for congruence in congruences_and_quotients(s, limits):
                tally.check(
                    points_member(modulus, congruence.quotient, limits),
                    lambda: f"a quotient of the point {_table(s)} of {modulus} is not a point",
                )
        for s, t in itertools.combinations_with_replacement(points, 2):
            tally.check(
                points_member(modulus, direct_product(s, t, limits), limits),
                lambda: f"{_table(s)} × {_table(t)} is not a point of {modulus}",
            )
    return tally.result("points-closure", used)


@suite("restriction")
def restriction_suite(order: int, limits: Limits) -> SuiteResult:
    """Λ|_𝒪 refines Λ, and its complex is the context restriction of 𝒞_Λ."""
    tally = _Tally()
    used = min(order, 3)
    for s in _universe(used, limits):
        for modulus in builtin_moduli(2):
            unrestricted = functor_value(modulus, s, limits)
            for context in builtin_contexts():
                restricted = RestrictedModulus(modulus, context)
                tally.check(
                    refines(restricted, modulus, s, limits),
                    lambda: f"{restricted} does not refine {modulus} on {_table(s)}",
                )
                value = restricted_functor_value(modulus, context, s, limits)
                tally.check(
                    value == functor_value(restricted, s, limits),
                    lambda: f"restricting the complex of {modulus} to {context} differs from {restricted} on {_table(s)}",
                )
                tally.check(
                    value <= unrestricted,
                    lambda: f"{restricted} leaves the complex of {modulus} on {_table(s)}",
                )
    return tally.result("restriction", used)


@suite("fixpoints")
def fixpoints_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    moduli = builtin_moduli(2)
    for s in _universe(order, limits):
        sing = singleton_complex(s, limits)
        for modulus in moduli:
            member = points_member(modulus, s, limits)
            tally.check(
                (functor_value(modulus, s, limits) == sing) == member,
                lambda: f"fixed points of {modulus} differ from its points on {_table(s)}",
            )
            tally.check(
                (monad_completion(modulus, s, limits) == sing) == member,
                lambda: f"completion of {modulus} changes fixed points on {_table(s)}",
            )
        if s.order <= 3:
            for a, b in itertools.combinations(moduli, 2):
                tally.check(
                    functor_value(JoinModulus(a, b), s, limits)
                    == complex_lattice(LatticeOp.JOIN, functor_value(a, s, limits), functor_value(b, s, limits), limits),
                    lambda: f"join({a},{b}) is not preserved on {_table(s)}",
                )
    return tally.result("fixpoints", order)


@suite("monad")
def monad_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    moduli = builtin_moduli(2)
    deepest = 0
    for s in _universe(used, limits):
        for modulus in moduli:
            levels = completion_trace(modulus, s, limits)
            completed = levels[-1]
            deepest = max(deepest, len(levels) - 1)
            tally.check(
                all(a <= b for a, b in zip(levels, levels[1:])),
                lambda: f"completion levels of {modulus} are not increasing on {_table(s)}",
            )
            tally.check(
                union_closure_step(modulus, completed, limits) == completed,
                lambda: f"completion of {modulus} is not union closed on {_table(s)}",
            )
            tally.check(
                functor_value(modulus, s, limits) <= completed,
                lambda: f"completion of {modulus} is below its functor value on {_table(s)}",
            )
        for a, b in itertools.combinations(moduli, 2):
            tally.check(
                monad_completion(a, s, limits) <= monad_completion(JoinModulus(a, b), s, limits),
                lambda: f"completion is not monotone from {a} to join({a},{b}) on {_table(s)}",
            )
    logger.info(f"Deepest completion at order {used}: {deepest} levels")
    return tally.result("monad", used)


def _bound(limits: Limits) -> int:
    return min(3, limits.default_oracle_bound, limits.max_enumeration_order)


@suite("bounds")
def bounds_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    k = _bound(limits)
    for s in _universe(used, limits):
        oracles = {}
        for modulus in builtin_moduli(2):
            pv = points_pseudovariety(modulus)
            if pv not in oracles:
                oracles[pv] = oracle_pointlikes(s, pv, k, limits)
            tally.check(
                monad_completion(modulus, s, limits) <= oracles[pv].value,
                lambda: f"completion of {modulus} exceeds the {pv.name} oracle on {_table(s)}",
            )
            if pv_member(pv, s):
                tally.check(
                    oracles[pv].value == singleton_complex(s, limits),
                    lambda: f"oracle for {pv.name} misses the fixed point {_table(s)}",
                )
    return tally.result("bounds", used)


# Pseudovarieties paired with a modulus whose points contain them and whose
# completion pins their pointlikes exactly on small semigroups.
_MATCHING = (
    (PseudovarietyKind.APERIODIC, ModulusKind.GRP),
    (PseudovarietyKind.APERIODIC, ModulusKind.CYCGRP),
    (PseudovarietyKind.R_TRIVIAL, ModulusKind.RCL),
    (PseudovarietyKind.L_TRIVIAL, ModulusKind.LCL),
    (PseudovarietyKind.J_TRIVIAL, ModulusKind.JCL),
)


@suite("certificates")
def certificates_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    k = _bound(limits)
    aperiodic = PseudovarietyId(PseudovarietyKind.APERIODIC)
    grp = BuiltinModulus(ModulusKind.GRP)
    for n in (2, 3):
        group = cyclic_group(n)
        certificate = certify_exact(group, aperiodic, grp, k, limits)
        tally.check(
            certificate.exact and certificate.lower.face_count == (1 << n) - 1,
            lambda: f"Z{n} is not certified with every subset pointlike",
        )
    for kind, modulus_kind in _MATCHING:
        pv = PseudovarietyId(kind)
        modulus = BuiltinModulus(modulus_kind)
        for s in _universe(used, limits):
            if not pv_member(pv, s):
                continue
            certificate = certify_exact(s, pv, modulus, k, limits)
            tally.check(
                certificate.exact and certificate.lower == singleton_complex(s, limits),
                lambda: f"{pv.name} member {_table(s)} is not certified as a fixed point",
            )
    for kind in (PseudovarietyKind.TRIVIAL, PseudovarietyKind.APERIODIC, PseudovarietyKind.J_TRIVIAL):
        pv = PseudovarietyId(kind)
        for s in _universe(min(used, 2), limits):
            values = [oracle_pointlikes(s, pv, bound, limits).value for bound in range(1, k + 1)]
            tally.check(
                all(b <= a for a, b in zip(values, values[1:])),
                lambda: f"{pv.name} oracle grows with the bound on {_table(s)}",
            )
    return tally.result("certificates", used)


@suite("effectiveness")
def effectiveness_suite(order: int, limits: Limits) -> SuiteResult:
    """Every semigroup of the universe gets an exact certificate for each matching pair."""
    tally = _Tally()
    used = min(order, 3)
    k = _bound(limits)
    universe = _universe(used, limits)
    for kind, modulus_kind in _MATCHING:
        pv = PseudovarietyId(kind)
        modulus = BuiltinModulus(modulus_kind)
        for s in universe:
            certificate = certify_exact(s, pv, modulus, k, limits)
            tally.check(
                certificate.exact,
                lambda: f"{modulus} does not pin the {pv.name} pointlikes of {_table(s)} at bound {k}",
            )
    return tally.result("effectiveness", used)


@suite("reversal")
def reversal_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    used = min(order, 3)
    k = _bound(limits)
    for s in _universe(used, limits):
        for kind in (PseudovarietyKind.APERIODIC, PseudovarietyKind.J_TRIVIAL, PseudovarietyKind.R_TRIVIAL):
            pv = PseudovarietyId(kind)
            tally.check(
                reversal_transfer_check(s, pv, k, limits),
                lambda: f"reversal transfer fails for {pv.name} on {_table(s)}",
            )
    return tally.result("reversal", used)


@suite("fptc")
def fptc_suite(order: int, limits: Limits) -> SuiteResult:
    tally = _Tally()
    pairs = (
        (BuiltinContext(ContextKind.GRP), BuiltinModulus(ModulusKind.GRP)),
        (BuiltinContext(ContextKind.LOC), BuiltinModulus(ModulusKind.JCL)),
        (BuiltinContext(ContextKind.EGEN), BuiltinModulus(ModulusKind.GRP)),
        (BuiltinContext(ContextKind.FULL), BuiltinModulus(ModulusKind.RCL)),
    )
    for context, modulus in pairs:
        report = fptc_check(context, modulus, order, limits)
        tally.checked += report.checked
        for table in report.counterexamples:
            tally.check(False, lambda: f"FPTC fails for ({context}, {modulus}) on {table}")
    return tally.result("fptc", order)


def run_suite(name: str, order: int, limits: Optional[Limits] = None) -> SuiteResult:
    """Run one suite by name.

    Raises:
        ExpressionError: If no suite has that name
    """
    limits = limits or get_limits()
    if name not in SUITES:
        raise ExpressionError(f"unknown suite '{name}' (known: {', '.join(SUITES)})")
    logger.info(f"Running suite {name} at order {order}")
    result = SUITES[name](order, limits)
    if not result.passed:
        logger.warning(f"Suite {name} found {len(result.violations)} violations")
    return result


def run_all(order: int, limits: Optional[Limits] = None) -> List[SuiteResult]:
    return [run_suite(name, order, limits) for name in SUITES]
