from utils.linalg import to_fraction

FAMILY_NAMES = (
    "abelian",
    "heisenberg_sum",
    "almost_abelian",
    "borel_hyperbolic",
    "motion_group_r2",
    "complex_hyperbolic",
    "graph",
)


class FamilySpec:
    """Named built-in family plus its parameters"""

    def __init__(self, name, n=None, w=None, path=None):
        name = name.replace("-", "_")
        if name not in FAMILY_NAMES:
            raise ValueError(f"unknown family '{name}'")
        self.name = name
        self.n = int(n) if n is not None else None
        self.w = tuple(to_fraction(x) for x in w) if w is not None else None
        self.path = path
        self.validate()

    def validate(self):
        if self.name in ("abelian", "borel_hyperbolic") and (self.n is None or self.n < 1):
            raise ValueError(f"{self.name} needs n >= 1")
        if self.name == "heisenberg_sum" and (self.n is None or self.n < 3):
            raise ValueError("heisenberg_sum needs n >= 3")
        if self.name == "complex_hyperbolic" and (self.n is None or self.n < 1):
            raise ValueError("complex_hyperbolic needs n >= 1")
        if self.name == "almost_abelian" and not self.w:
            raise ValueError("almost_abelian needs a nonempty w")
        if self.name == "graph" and not self.path:
            raise ValueError("graph family needs a path")

    @property
    def label(self):
        if self.name == "almost_abelian":
            return "s_w(" + ",".join(str(x) for x in self.w) + ")"
        if self.n is not None:
            return f"{self.name}({self.n})"
        if self.path:
            return f"graph({self.path})"
        return self.name

    def to_dict(self):
        data = {"name": self.name}
        if self.n is not None:
            data["n"] = self.n
        if self.w is not None:
            data["w"] = [str(x) for x in self.w]
        if self.path:
            data["path"] = str(self.path)
        return data

    @classmethod
    def from_dict(cls, data):
        return cls(data["name"], n=data.get("n"), w=data.get("w"), path=data.get("path"))
