import abc
import itertools

from cubelab.environment.report import CheckReport
from cubelab.environment.checks.processors import CheckProcessor
from cubelab.cubes.cube import is_n_fold_regular_epi, is_n_cubic_extension
from cubelab.cubes.distributivity import check_distributive


class SearchPredicate(CheckProcessor):
    """
    A target property for counterexample search.

    The report's verdict says whether the instance matches; a matching report carries the evidence of the
    underlying check as its witness.
    """

    def _process(self, instance):
        matched, evidence, trace = self.evaluate(instance)
        if matched:
            return CheckReport(True, witness=evidence, trace=trace)
        return CheckReport.failed({"reason": "{} does not hold".format(self.name)}, trace=trace)

    @abc.abstractmethod
    def evaluate(self, instance):
        """Returns (matched, evidence, trace)."""
        raise NotImplementedError


class Distributive(SearchPredicate):
    def __init__(self, name="distributive"):
        super().__init__(name=name)

    def evaluate(self, instance):
        report = check_distributive(instance.relations, instance.context.lattice)
        return report.verdict, None, [{"check": "distributive", "holds": report.verdict}]


class NonDistributive(SearchPredicate):
    def __init__(self, name="non_distributive"):
        super().__init__(name=name)

    def evaluate(self, instance):
        report = check_distributive(instance.relations, instance.context.lattice)
        return not report.verdict, report.witness, [{"check": "distributive", "holds": report.verdict}]


class SubtuplesDistributiveOnly(SearchPredicate):
    """The tuple is not distributive although every tuple obtained by dropping one relation is."""

    def __init__(self, name="subtuples_distributive_only"):
        super().__init__(name=name)

    def evaluate(self, instance):
        lattice = instance.context.lattice
        relations = instance.relations
        whole = check_distributive(relations, lattice)
        trace = [{"check": "distributive", "holds": whole.verdict}]
        if whole.verdict or len(relations) < 2:
            return False, None, trace
        for kept in itertools.combinations(range(len(relations)), len(relations) - 1):
            sub = check_distributive([relations[i] for i in kept], lattice)
            trace.append({"check": "subtuple_distributive", "subtuple": list(kept), "holds": sub.verdict})
            if not sub.verdict:
                return False, None, trace
        return True, whole.witness, trace


class RegularEpiNotExtension(SearchPredicate):
    """Every face of the induced cube is a pushout, yet the cube is not an extension."""

    def __init__(self, name="regular_epi_not_extension"):
        super().__init__(name=name)

    def evaluate(self, instance):
        cube = instance.cube
        regular = is_n_fold_regular_epi(cube)
        trace = [{"check": "regular_epi", "holds": regular.verdict}]
        if not regular.verdict:
            return False, None, trace
        extension = is_n_cubic_extension(cube, check_symmetry=False)
        trace.append({"check": "extension", "holds": extension.verdict})
        return not extension.verdict, extension.witness, trace


PREDICATES = {
    "distributive": Distributive,
    "non_distributive": NonDistributive,
    "subtuples_distributive_only": SubtuplesDistributiveOnly,
    "regular_epi_not_extension": RegularEpiNotExtension,
}


def make_predicate(predicate):
    """A predicate from its registered name or its class."""
    if isinstance(predicate, type) and issubclass(predicate, SearchPredicate):
        return predicate()
    if predicate not in PREDICATES:
        raise ValueError("Invalid predicate {}, expected one of {}".format(predicate, sorted(PREDICATES)))
    return PREDICATES[predicate]()
