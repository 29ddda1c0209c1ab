"""Groups acting on a set on the left.

Every shipped instance is a group acting on itself by its own operation,
which is a regular action (free and transitive).  Elements are hashable
value types with a total order so that enumeration-heavy callers stay
deterministic.
"""

from .fields import GF, Rationals


class GroupAction:
    """A group G together with a left action on a set of labels.

    Subclasses provide identity/compose/inverse, act, and enumeration of
    both the group and the label set.  ``conjugate(h, g)`` returns
    h g h^-1; it is exposed for completeness and has no consumer beyond
    its own property test.
    """

    regular = False
    finite = False
    order = None

    def identity(self):
        raise NotImplementedError

    def compose(self, g, h):
        raise NotImplementedError

    def inverse(self, g):
        raise NotImplementedError

    def conjugate(self, h, g):
        return self.compose(h, self.compose(g, self.inverse(h)))

    def act(self, g, lam):
        raise NotImplementedError

    def elements(self):
        """Group elements in their canonical total order."""
        raise NotImplementedError

    def lambdas(self):
        """Label-set elements in their canonical total order."""
        raise NotImplementedError

    def spec(self):
        """JSON-able description of the group."""
        raise NotImplementedError

    def encode(self, g):
        raise NotImplementedError

    def decode(self, d):
        raise NotImplementedError

    def render(self, g):
        return str(g)


class CyclicGroup(GroupAction):
    """Z_n under addition, acting on itself."""

    regular = True
    finite = True

    def __init__(self, n):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.order = n

    def __repr__(self):
        return f"Z{self.n}"

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and self.n == other.n

    def __hash__(self):
        return hash(("Zn", self.n))

    def identity(self):
        return 0

    def compose(self, g, h):
        return (g + h) % self.n

    def inverse(self, g):
        return (-g) % self.n

    def act(self, g, lam):
        return (g + lam) % self.n

    def elements(self):
        return list(range(self.n))

    def lambdas(self):
        return list(range(self.n))

    def spec(self):
        return {"kind": "Zn", "modulus": self.n}

    def encode(self, g):
        return g

    def decode(self, d):
        return int(d) % self.n


class AdditiveGroup(GroupAction):
    """The additive group of a field, acting on the field by addition."""

    regular = True

    def __init__(self, field):
        self.field = field
        self.finite = field.finite
        self.order = field.order

    def __repr__(self):
        return f"({self.field},+)"

    def __eq__(self, other):
        return isinstance(other, AdditiveGroup) and self.field == other.field

    def __hash__(self):
        return hash(("add", self.field))

    def identity(self):
        return self.field.zero

    def compose(self, g, h):
        return self.field.add(g, h)

    def inverse(self, g):
        return self.field.neg(g)

    def act(self, g, lam):
        return self.field.add(g, lam)

    def elements(self):
        return self.field.elements()

    def lambdas(self):
        return self.field.elements()

    def spec(self):
        if isinstance(self.field, Rationals):
            return {"kind": "Q"}
        return {"kind": "GFpn", "p": self.field.p, "n": self.field.n}

    def encode(self, g):
        return self.field.encode(g)

    def decode(self, d):
        return self.field.decode(d)

    def render(self, g):
        return self.field.render(g)


def group_from_spec(spec):
    kind = spec.get("kind")
    if kind == "Zn":
        return CyclicGroup(int(spec["modulus"]))
    if kind == "GFpn":
        return AdditiveGroup(GF(int(spec["p"]), int(spec.get("n", 1))))
    if kind == "Q":
        return AdditiveGroup(Rationals())
    raise ValueError(f"unknown group kind {kind!r}")
