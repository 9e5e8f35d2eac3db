class Instance:
    """A context, a base object and a tuple of relations on it, validated on construction."""

    def __init__(self, context, base, relations, name=None):
        self.context = context
        self.base = base
        self.relations = [context.validate_relation(base, R) for R in relations]
        self.name = name
        self._cube = None

    def __repr__(self):
        return "Instance({}, n={})".format(self.name or self.context.kind, self.n)

    @property
    def n(self):
        return len(self.relations)

    @property
    def cube(self):
        if self._cube is None:
            from cubelab.cubes.cube import build_cube
            self._cube = build_cube(self.context, self.base, self.relations)
        return self._cube

    def finite(self):
        return self.context.size(self.base) is not None

    def with_relations(self, relations, name=None):
        return Instance(self.context, self.base, relations, name=name or self.name)

    def to_json(self):
        data = {
            "context": self.context.kind,
            "object": self.base.to_json(),
            "relations": [self.context.lattice.describe(R) for R in self.relations],
        }
        if self.name is not None:
            data["name"] = self.name
        return data
