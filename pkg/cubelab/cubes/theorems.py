import itertools

from cubelab.environment.constants import TUPLE_MATERIALIZATION_LIMIT
from cubelab.environment.report import CheckReport
from cubelab.environment.instance import Instance
from cubelab.environment.checks.processors import CheckProcessor, CheckSkipped
from cubelab.environment.checks.manager import CheckManager
from cubelab.cubes.contexts import SetContext, lattice_for
from cubelab.cubes.cube import build_cube, is_n_cubic_extension
from cubelab.cubes.distributivity import check_distributive, enumerate_families
from cubelab.cubes.nfold import box_relation_on
from cubelab.cubes.sequence import build_fork_diagram, verify_sequence


def _others(slot):
    return [j for j in range(3) if j != slot]


def _compare(left, right, lattice, trace_name):
    holds = left == right
    trace = [{"check": trace_name, "holds": holds}]
    if holds:
        return CheckReport.passed(trace=trace)
    return CheckReport.failed({"left": lattice.describe(left), "right": lattice.describe(right)}, trace=trace)


class ExtensionClause(CheckProcessor):
    def _process(self, instance):
        return is_n_cubic_extension(instance.cube)


class DistributiveClause(CheckProcessor):
    def _process(self, instance):
        return check_distributive(instance.relations, instance.context.lattice)


class TripleClause(CheckProcessor):
    """Base for the three-relation lattice identities; ``slot`` is the index of the distinguished relation."""

    def __init__(self, name=None, slot=2):
        super().__init__(name=name)
        assert slot in (0, 1, 2), "slot must be 0, 1 or 2"
        self.slot = slot

    def process(self, instance):
        if instance.n != 3:
            raise CheckSkipped("clause {} is stated for three relations, got {}".format(self.name, instance.n))
        return super().process(instance)


class JoinOverMeetClause(TripleClause):
    # R_k ∨ (R_i ∧ R_j) = (R_k ∨ R_i) ∧ (R_k ∨ R_j)
    def _process(self, instance):
        L = instance.context.lattice
        R = instance.relations
        k, (i, j) = self.slot, _others(self.slot)
        left = L.join(R[k], L.meet(R[i], R[j]))
        right = L.meet(L.join(R[k], R[i]), L.join(R[k], R[j]))
        return _compare(left, right, L, "join_over_meet")


class MeetOverJoinClause(TripleClause):
    # R_k ∧ (R_i ∨ R_j) = (R_k ∧ R_i) ∨ (R_k ∧ R_j)
    def _process(self, instance):
        L = instance.context.lattice
        R = instance.relations
        k, (i, j) = self.slot, _others(self.slot)
        left = L.meet(R[k], L.join(R[i], R[j]))
        right = L.join(L.meet(R[k], R[i]), L.meet(R[k], R[j]))
        return _compare(left, right, L, "meet_over_join")


class BoxJoinClause(TripleClause):
    # R_k □ (R_i ∨ R_j) = (R_k □ R_i) ∨ (R_k □ R_j), as relations on R_k
    def _process(self, instance):
        ctx, X = instance.context, instance.base
        L = ctx.lattice
        R = instance.relations
        k, (i, j) = self.slot, _others(self.slot)
        bound = ctx.box_size_bound(X, [R[k], R[k]])
        if bound is not None and bound > TUPLE_MATERIALIZATION_LIMIT:
            raise CheckSkipped("box relations on {} exceed the materialisation limit".format(self.name))
        left = box_relation_on(R[k], L.join(R[i], R[j]), context=ctx, X=X)
        boxes = [box_relation_on(R[k], R[i], context=ctx, X=X), box_relation_on(R[k], R[j], context=ctx, X=X)]
        box_lattice = lattice_for(left)
        right = box_lattice.join(*boxes)
        return _compare(left, right, box_lattice, "box_over_join")


class ForkDiagramClause(CheckProcessor):
    def _process(self, instance):
        bound = instance.context.box_size_bound(instance.base, instance.relations)
        if bound is not None and bound > TUPLE_MATERIALIZATION_LIMIT:
            raise CheckSkipped("fork grid may hold {} tuples".format(bound))
        return verify_sequence(build_fork_diagram(instance.context, instance.base, instance.relations))


class BruteOracleClause(CheckProcessor):
    def _process(self, instance):
        from cubelab.oracle.brute import brute_extension_failure, MAX_ORACLE_DIMENSION

        if not isinstance(instance.context, SetContext) or instance.n > MAX_ORACLE_DIMENSION:
            raise CheckSkipped("brute-force oracle needs finite carriers and at most {} relations"
                               .format(MAX_ORACLE_DIMENSION))
        failure = brute_extension_failure(instance.cube)
        trace = [{"check": "brute_extension"}]
        if failure is None:
            return CheckReport.passed(trace=trace)
        return CheckReport.failed(failure, trace=trace)


THEOREM_CLAUSES = [
    {"name": "i", "class": ExtensionClause, "config": {}},
    {"name": "ii", "class": JoinOverMeetClause, "config": {"slot": 2}},
    {"name": "ii'", "class": JoinOverMeetClause, "config": {"slot": 1}},
    {"name": "ii''", "class": JoinOverMeetClause, "config": {"slot": 0}},
    {"name": "iii", "class": MeetOverJoinClause, "config": {"slot": 2}},
    {"name": "iii'", "class": MeetOverJoinClause, "config": {"slot": 1}},
    {"name": "iii''", "class": MeetOverJoinClause, "config": {"slot": 0}},
    {"name": "iv", "class": DistributiveClause, "config": {}},
    {"name": "vi", "class": BoxJoinClause, "config": {"slot": 2}},
    {"name": "vi'", "class": BoxJoinClause, "config": {"slot": 1}},
    {"name": "vi''", "class": BoxJoinClause, "config": {"slot": 0}},
    {"name": "fork", "class": ForkDiagramClause, "config": {}},
    {"name": "oracle", "class": BruteOracleClause, "config": {}},
]


def equivalence_theorem_check(context, X, relations, clauses=None):
    """
    Evaluates every characterisation of distributive tuples independently and asserts the verdicts coincide.

    The cube extension check and the distributivity check run for every n; for three relations the lattice and box
    identities run as well. The fork grid and, for small finite instances, the brute-force oracle are added as
    further witnesses. Disagreements are recorded as defects.

    Raises
    ------
    ValueError
        If the context is not Mal'tsev.
    """
    if not context.maltsev:
        raise ValueError("The equivalence of characterisations needs a Mal'tsev context, got {}".format(context.kind))
    instance = relations if isinstance(relations, Instance) else Instance(context, X, relations)
    manager = CheckManager(THEOREM_CLAUSES if clauses is None else clauses)
    manager.process(instance)
    return manager.generate_report()


# --------------------- Closure of extensions ------------------------


def _nonempty_subsets(indices):
    indices = list(indices)
    for k in range(1, len(indices) + 1):
        for subset in itertools.combinations(indices, k):
            yield list(subset)


def closure_selections(n):
    """
    Every selection the six closure clauses admit over n relations.

    (1) a nonempty I; (2) and (3) a nonempty I with a nonempty J disjoint from it; and when n ≥ 4, (4) a family of
    2 ≤ k ≤ n-1 disjoint nonempty index sets, (5) and (6) such a family with a slot l and a nonempty I disjoint from
    the family.
    """
    selections = []
    for I in _nonempty_subsets(range(n)):
        selections.append({"clause": 1, "I": I})
    for I in _nonempty_subsets(range(n)):
        for J in _nonempty_subsets(j for j in range(n) if j not in I):
            selections.append({"clause": 2, "I": I, "J": J})
            selections.append({"clause": 3, "I": I, "J": J})
    if n < 4:
        return selections
    families = sorted({tuple(sorted(family.blocks)) for family in enumerate_families(n)
                       if len(family.blocks) <= n - 1})
    for family in families:
        blocks = [list(b) for b in family]
        selections.append({"clause": 4, "families": blocks})
        used = {j for b in family for j in b}
        for l in range(len(blocks)):
            for I in _nonempty_subsets(j for j in range(n) if j not in used):
                selections.append({"clause": 5, "families": blocks, "slot": l, "I": I})
                selections.append({"clause": 6, "families": blocks, "slot": l, "I": I})
    return selections


def _validate_selection(selection, n):
    clause = selection.get("clause")
    if clause not in (1, 2, 3, 4, 5, 6):
        raise ValueError("Invalid closure clause {}".format(clause))
    for name in ("I", "J"):
        for j in selection.get(name, []):
            if not 0 <= j < n:
                raise ValueError("Index {} in {} out of range for {} relations".format(j, name, n))
    if clause in (1, 2, 3) and not selection.get("I"):
        raise ValueError("Clause {} needs a nonempty I".format(clause))
    if clause in (2, 3):
        if not selection.get("J"):
            raise ValueError("Clause {} needs a nonempty J".format(clause))
        if set(selection["I"]) & set(selection["J"]):
            raise ValueError("I and J must be disjoint")
    if clause in (4, 5, 6):
        if n < 4:
            raise ValueError("Clause {} needs at least four relations, got {}".format(clause, n))
        blocks = selection.get("families") or []
        if not 2 <= len(blocks) <= n - 1:
            raise ValueError("Clause {} needs between 2 and {} index sets, got {}".format(clause, n - 1, len(blocks)))
        seen = set()
        for block in blocks:
            if not block or seen & set(block) or any(not 0 <= j < n for j in block):
                raise ValueError("Index sets {} must be nonempty, disjoint and in range".format(blocks))
            seen.update(block)
        if clause in (5, 6):
            if not selection.get("I") or seen & set(selection["I"]):
                raise ValueError("Clause {} needs a nonempty I disjoint from the index sets".format(clause))
            if not 0 <= selection.get("slot", -1) < len(blocks):
                raise ValueError("Slot {} out of range".format(selection.get("slot")))


def derived_relations(relations, selection, lattice):
    """The relations of the derived cube a closure selection names."""
    n = len(relations)
    _validate_selection(selection, n)

    def meet_over(indices):
        return lattice.meet_all([relations[j] for j in indices])

    clause = selection["clause"]
    if clause == 1:
        return [relations[i] for i in selection["I"]]
    if clause == 2:
        I = selection["I"]
        return [relations[i] for i in I[:-1]] + [meet_over([I[-1]] + list(selection["J"]))]
    if clause == 3:
        I = selection["I"]
        last = lattice.join_all([relations[j] for j in [I[-1]] + list(selection["J"])])
        return [relations[i] for i in I[:-1]] + [last]
    blocks = selection["families"]
    derived = [meet_over(b) for b in blocks]
    if clause == 5:
        l = selection["slot"]
        derived[l] = meet_over(list(blocks[l]) + list(selection["I"]))
    elif clause == 6:
        l = selection["slot"]
        derived[l] = lattice.join(derived[l], meet_over(selection["I"]))
    return derived


def subcube_closure_check(F, selection, verified=False):
    """
    Builds the cube a closure selection derives from an extension F and checks it is an extension.

    Raises
    ------
    ValueError
        If F was not induced by relations, is not an extension, or the selection is malformed.
    """
    if F.base is None or F.relations is None:
        raise ValueError("Closure checks need a cube induced by relations on a base object")
    if not verified and not is_n_cubic_extension(F, check_symmetry=False):
        raise ValueError("Closure checks need an n-cubic extension")
    ctx = F.context
    relations = derived_relations(F.relations, selection, ctx.lattice)
    report = is_n_cubic_extension(build_cube(ctx, F.base, relations), check_symmetry=False)
    report.trace.insert(0, {"check": "closure", "selection": selection, "dimension": len(relations)})
    if not report.verdict:
        report.witness = {"selection": selection, "witness": report.witness}
    return report


def closure_suite(context, X, relations):
    """
    Runs every closure selection on the cube induced by the relations, which must be an extension.

    Selections deriving the same relations share one extension check.
    """
    F = build_cube(context, X, relations)
    if not is_n_cubic_extension(F, check_symmetry=False):
        raise ValueError("Closure checks need an n-cubic extension")
    trace = []
    witness = None
    checked = {}
    for selection in closure_selections(F.dimension):
        derived = tuple(derived_relations(F.relations, selection, context.lattice))
        if derived not in checked:
            checked[derived] = subcube_closure_check(F, selection, verified=True)
        report = checked[derived]
        trace.append({"selection": selection, "holds": report.verdict})
        if not report.verdict and witness is None:
            witness = report.witness
    if witness is None:
        return CheckReport.passed(trace=trace)
    return CheckReport.failed(witness, trace=trace)
