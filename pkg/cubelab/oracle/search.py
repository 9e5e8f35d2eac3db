import time

import numpy as np
from tqdm import tqdm

from cubelab.environment.utils import dict_merge, log_to_jsonlines
from cubelab.oracle.predicates import PREDICATES, SearchPredicate, make_predicate
from cubelab.oracle.spaces import GroupSpace, CyclicSpace, ZLatticeSpace, CaseSpace

SEARCH_LOG = "search.jsonl"

DEFAULT_SPEC = {
    "max_order": 8,
    "max_modulus": 60,
    "rank": 2,
    "bound": 6,
    "generators": 1,
    "seed": 0,
    "max_witnesses": None,
    "budget": {"instances": None, "seconds": None},
    "cases": None,
}

DEFAULT_RANDOM_BUDGET = 1000


class SearchSpec:
    """
    What to search for and where.

    Parameters
    ----------
    space : str
        "group", "cyclic", "zlattice" or "cases"
    n : int
        Tuple size
    predicate : str or SearchPredicate subclass
        Target property, by registered name or class
    budget : dict
        {"instances": int or None, "seconds": float or None}
    seed : int
        Seed of the single generator random spaces draw from
    """

    def __init__(self, space, n, predicate, max_order=8, max_modulus=60, rank=2, bound=6, generators=1,
                 seed=0, max_witnesses=None, budget=None, cases=None):
        budget = dict_merge(DEFAULT_SPEC["budget"], budget or {})
        if space not in ("group", "cyclic", "zlattice", "cases"):
            raise ValueError("Invalid search space {}".format(space))
        if not (isinstance(predicate, type) and issubclass(predicate, SearchPredicate)) and predicate not in PREDICATES:
            raise ValueError("Invalid predicate {}, expected one of {}".format(predicate, sorted(PREDICATES)))
        for name, value in (("n", n), ("max_order", max_order), ("max_modulus", max_modulus), ("rank", rank),
                            ("bound", bound), ("generators", generators)):
            if value < 1:
                raise ValueError("Search bound {} must be positive, got {}".format(name, value))
        if space == "cases" and not cases:
            raise ValueError("A cases search needs a nonempty case list")
        self.space = space
        self.n = n
        self.predicate = predicate
        self.max_order = max_order
        self.max_modulus = max_modulus
        self.rank = rank
        self.bound = bound
        self.generators = generators
        self.seed = seed
        self.max_witnesses = max_witnesses
        self.budget = budget
        self.cases = cases

    @classmethod
    def from_dict(cls, data, overrides=None):
        config = dict_merge(DEFAULT_SPEC, data)
        if overrides:
            config = dict_merge(config, overrides)
        return cls(**config)

    @property
    def predicate_name(self):
        return self.predicate if isinstance(self.predicate, str) else self.predicate.__name__

    def make_space(self):
        if self.space == "group":
            return GroupSpace(self.n, max_order=self.max_order)
        if self.space == "cyclic":
            return CyclicSpace(self.n, max_modulus=self.max_modulus)
        if self.space == "zlattice":
            budget = self.budget["instances"] or DEFAULT_RANDOM_BUDGET
            return ZLatticeSpace(self.n, rank=self.rank, bound=self.bound, generators=self.generators, budget=budget)
        return CaseSpace(self.n, self.cases)

    def to_json(self):
        return {
            "space": self.space,
            "n": self.n,
            "predicate": self.predicate_name,
            "max_order": self.max_order,
            "max_modulus": self.max_modulus,
            "rank": self.rank,
            "bound": self.bound,
            "generators": self.generators,
            "seed": self.seed,
            "max_witnesses": self.max_witnesses,
            "budget": self.budget,
        }


def _evaluate_shard(instances, predicate):
    predicate = make_predicate(predicate)
    results = []
    for instance in instances:
        report = predicate.process(instance)
        results.append((instance.to_json(), report.verdict, report.to_json()))
    return results


def _draw(spec):
    """The instances the budget admits, in space order."""
    rng = np.random.default_rng(spec.seed)
    limit = spec.budget["instances"]
    instances = []
    for instance in spec.make_space().instances(rng):
        if limit is not None and len(instances) >= limit:
            break
        instances.append(instance)
    return instances


def _evaluate_parallel(instances, predicate, jobs):
    import ray

    if not ray.is_initialized():
        ray.init(num_cpus=jobs, include_dashboard=False, ignore_reinit_error=True)
    remote = ray.remote(_evaluate_shard)
    size = -(-len(instances) // jobs)
    shards = [instances[i:i + size] for i in range(0, len(instances), size)]
    results = []
    # shards are merged in order so the output does not depend on scheduling
    for shard_results in ray.get([remote.remote(shard, predicate) for shard in shards]):
        results.extend(shard_results)
    return results


def search(spec, jobs=1, log_dir=None, progress=False):
    """
    Evaluates the target predicate over the spec's instance space.

    Parameters
    ----------
    spec : SearchSpec
    jobs : int
        Shards evaluated in parallel through ray when above one
    log_dir : str, optional
        Directory whose search.jsonl receives one line per evaluated instance
    progress : bool
        Show a progress bar on stderr

    Returns
    -------
    list of dict
        {"instance": ..., "report": ...} for every matching instance, in space order.
    """
    instances = _draw(spec)
    if jobs > 1 and spec.budget["seconds"] is None:
        results = _evaluate_parallel(instances, spec.predicate, jobs)
    else:
        results = []
        predicate = make_predicate(spec.predicate)
        deadline = None if spec.budget["seconds"] is None else time.monotonic() + spec.budget["seconds"]
        for instance in tqdm(instances, desc="search", dynamic_ncols=True, ascii=True, disable=not progress):
            if deadline is not None and time.monotonic() > deadline:
                break
            report = predicate.process(instance)
            results.append((instance.to_json(), report.verdict, report.to_json()))
            if spec.max_witnesses is not None and sum(r[1] for r in results) >= spec.max_witnesses:
                break

    witnesses = []
    for instance_json, matched, report_json in results:
        if log_dir is not None:
            log_to_jsonlines({"instance": instance_json, "matched": matched}, log_dir, SEARCH_LOG)
        if matched:
            witnesses.append({"instance": instance_json, "report": report_json})
    if spec.max_witnesses is not None:
        witnesses = witnesses[:spec.max_witnesses]
    return witnesses
