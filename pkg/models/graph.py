from utils.errors import DimensionMismatchError


class SimpleGraph:
    """Finite simple graph; vertex order is the input order, edges sorted by it"""

    def __init__(self, vertices, edges=None, name=None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be distinct")
        self.name = name
        self._index = {v: i for i, v in enumerate(self.vertices)}

        canonical = set()
        for u, v in edges or []:
            u, v = str(u), str(v)
            if u not in self._index or v not in self._index:
                raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            canonical.add(self._ordered(u, v))
        self.edges = tuple(sorted(canonical, key=lambda e: (self._index[e[0]], self._index[e[1]])))
        self._edge_index = {e: i for i, e in enumerate(self.edges)}
        self._adjacency = {v: set() for v in self.vertices}
        for u, v in self.edges:
            self._adjacency[u].add(v)
            self._adjacency[v].add(u)

    def _ordered(self, u, v):
        return (u, v) if self._index[u] < self._index[v] else (v, u)

    @property
    def p(self):
        return len(self.vertices)

    @property
    def q(self):
        return len(self.edges)

    def index(self, vertex):
        return self._index[vertex]

    def edge_index(self, u, v):
        return self._edge_index[self._ordered(u, v)]

    def has_edge(self, u, v):
        return u != v and self._ordered(u, v) in self._edge_index

    def neighbors(self, vertex):
        return self._adjacency[vertex]

    def degree(self, vertex):
        return len(self._adjacency[vertex])

    def degree_sequence(self):
        return sorted((self.degree(v) for v in self.vertices), reverse=True)

    def edge_label(self, edge):
        return f"{edge[0]}-{edge[1]}"

    def relabeled(self, mapping, name=None):
        """Same graph with vertices renamed through mapping (order follows the new labels' positions)"""
        vertices = [mapping[v] for v in self.vertices]
        return SimpleGraph(vertices, [(mapping[u], mapping[v]) for u, v in self.edges], name=name)

    def to_dict(self):
        data = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_dict(cls, data):
        return cls(data["vertices"], [tuple(e) for e in data.get("edges", [])], name=data.get("name"))

    def __repr__(self):
        return f"<SimpleGraph {self.name or ''} p={self.p} q={self.q}>"


class DirectedGraph:
    """Simple graph plus a direction d(e) in e; the canonical direction picks the earlier endpoint"""

    def __init__(self, graph, direction=None):
        self.graph = graph
        self.direction = {}
        direction = direction or {}
        for edge in graph.edges:
            head = direction.get(edge, direction.get((edge[1], edge[0]), edge[0]))
            if head not in edge:
                raise ValueError(f"direction {head} is not an endpoint of {edge}")
            self.direction[edge] = head

    @classmethod
    def canonical(cls, graph):
        return cls(graph)

    @classmethod
    def from_mask(cls, graph, mask):
        """Direction flipping edge i away from the canonical one when bit i of mask is set"""
        return cls(graph, {
            edge: edge[1] if mask >> i & 1 else edge[0] for i, edge in enumerate(graph.edges)
        })

    def d(self, edge):
        return self.direction[edge]

    def d_star(self, edge):
        head = self.direction[edge]
        return edge[1] if head == edge[0] else edge[0]

    @property
    def name(self):
        return self.graph.name

    def to_dict(self):
        data = self.graph.to_dict()
        data["direction"] = [self.direction[e] for e in self.graph.edges]
        return data


class GraphAutomorphism:
    """Vertex permutation of a graph with its induced edge permutation"""

    def __init__(self, graph, mapping):
        if set(mapping) != set(graph.vertices) or set(mapping.values()) != set(graph.vertices):
            raise DimensionMismatchError("automorphism must permute the full vertex set")
        self.graph = graph
        self.mapping = dict(mapping)
        self.edge_permutation = []
        for u, v in graph.edges:
            image = (self.mapping[u], self.mapping[v])
            if not graph.has_edge(*image):
                raise ValueError(f"{u}-{v} is not mapped to an edge")
            self.edge_permutation.append(graph.edge_index(*image))

    def __call__(self, vertex):
        return self.mapping[vertex]

    def is_identity(self):
        return all(k == v for k, v in self.mapping.items())

    def to_dict(self):
        return {v: self.mapping[v] for v in self.graph.vertices}
