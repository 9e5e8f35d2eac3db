import abc

import numpy as np


class Initializer(abc.ABC):
    def __init__(self, init_config, rng=None):
        self.init_config = init_config
        # one explicitly seeded generator threaded through every draw
        self.rng = np.random.default_rng(0) if rng is None else rng

    def initialize(self):
        if self.init_config is None:
            return {}
        return self.get_init_params()

    @abc.abstractmethod
    def get_init_params(self):
        raise NotImplementedError


class RandBoundsInitializer(Initializer):
    """Draws an integer uniformly from every [low, high] list value; other values pass through."""

    def get_init_params(self):
        return {k: self._draw(v) if isinstance(v, list) else v for k, v in self.init_config.items()}

    def _draw(self, bounds):
        low, high = bounds
        return int(self.rng.integers(low, high, endpoint=True))


class CaseListInitializer(Initializer):
    """Hands out the cases of ``case_list`` in order, or drawn from the generator when ``sequential`` is false."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self.case_list = self.init_config["case_list"]
        self.sequential = self.init_config.get("sequential", True)
        self.iteration = 0

        assert isinstance(self.sequential, bool), "sequential must be a bool"
        assert isinstance(self.case_list, list), "case_list must be a list of instance documents"
        assert self.case_list, "case_list must not be empty"

    def get_init_params(self):
        if self.sequential:
            index = self.iteration % len(self.case_list)
        else:
            index = int(self.rng.integers(len(self.case_list)))
        self.iteration += 1
        return self.case_list[index]
