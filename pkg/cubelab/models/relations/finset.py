class FinSet:
    """A finite set {0, ..., size-1} with optional distinct element labels."""

    def __init__(self, size, labels=None):
        if not isinstance(size, int) or size < 0:
            raise ValueError("FinSet size must be a non-negative integer, got {}".format(size))
        if labels is not None:
            labels = tuple(str(label) for label in labels)
            if len(labels) != size:
                raise ValueError("Expected {} labels, got {}".format(size, len(labels)))
            if len(set(labels)) != size:
                raise ValueError("FinSet labels must be pairwise distinct: {}".format(labels))
        self.size = size
        self.labels = labels

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.size == other.size and self.labels == other.labels

    def __hash__(self):
        return hash((self.size, self.labels))

    def __repr__(self):
        return "FinSet({})".format(self.size)

    def label(self, x):
        return self.labels[x] if self.labels is not None else str(x)

    def to_json(self):
        data = {"size": self.size}
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    @classmethod
    def from_json(cls, data):
        return cls(data["size"], labels=data.get("labels"))


class FinMap:
    """A function between finite sets, stored as the table of images."""

    def __init__(self, domain, codomain, table):
        table = tuple(int(y) for y in table)
        if len(table) != domain.size:
            raise ValueError("Table length {} does not match domain size {}".format(len(table), domain.size))
        for y in table:
            if not 0 <= y < codomain.size:
                raise ValueError("Table entry {} out of range for codomain of size {}".format(y, codomain.size))
        self.domain = domain
        self.codomain = codomain
        self.table = table

    def __call__(self, x):
        return self.table[x]

    def __eq__(self, other):
        return (isinstance(other, FinMap) and self.domain.size == other.domain.size
                and self.codomain.size == other.codomain.size and self.table == other.table)

    def __hash__(self):
        return hash((self.domain.size, self.codomain.size, self.table))

    def __repr__(self):
        return "FinMap({} -> {}, {})".format(self.domain.size, self.codomain.size, list(self.table))

    @classmethod
    def identity(cls, carrier):
        return cls(carrier, carrier, range(carrier.size))

    def after(self, other):
        """Composite self∘other."""
        if other.codomain.size != self.domain.size:
            raise ValueError("Cannot compose {} after {}".format(self, other))
        return FinMap(other.domain, self.codomain, [self.table[y] for y in other.table])

    def image(self):
        return sorted(set(self.table))

    def is_surjective(self):
        return len(set(self.table)) == self.codomain.size

    def is_injective(self):
        return len(set(self.table)) == self.domain.size

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def fibers(self):
        fibers = [[] for _ in range(self.codomain.size)]
        for x, y in enumerate(self.table):
            fibers[y].append(x)
        return fibers

    def to_json(self):
        return {"dom": self.domain.to_json(), "cod": self.codomain.to_json(), "table": list(self.table)}

    @classmethod
    def from_json(cls, data):
        return cls(FinSet.from_json(data["dom"]), FinSet.from_json(data["cod"]), data["table"])


def compose(g, f):
    return g.after(f)


def equal_up_to_codomain_iso(f, g):
    """
    True iff there is a bijection phi between the codomains with phi∘f = g.
    """
    if f.domain.size != g.domain.size or f.codomain.size != g.codomain.size:
        return False
    forward, backward = {}, {}
    for a, b in zip(f.table, g.table):
        if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:
            return False
    # unmatched codomain points pair off freely when the sizes agree
    return True
