"""Products of rooted and birooted graphs and the tensor-operator
decompositions of their adjacency matrices.

Constructions
-------------
star        glue G2 to G1 at the roots; adjacency a1 (x) P_e2 + P_e1 (x) a2
comb        a copy of G2 at its root on every vertex of G1;
            adjacency a1 (x) P_e2 + 1 (x) a2 on the full tensor space
orthogonal  copies of G2 on every non-root vertex of G1;
            adjacency a1 (x) P_e2 + P_e1-perp (x) a2
comb-at     a copy of (G2, e2) on the root of G1 and copies of (G2, f2) on
            the remaining vertices: the orthogonal product at f2 followed by
            the star product at e2; this is the essential component of the
            c-comb product
c-comb      disjoint union of the comb-at component (root e) and a plain
            comb product at the second roots (root f)
loop variants  the same graphs with color-1 loops added so that products of
            the one-color adjacency matrices count alternating d-walks

Every product is naturally colored: edges inherited from the first factor
keep color 1 (or their original color when composing products) and edges of
the attached copies carry color 2. This also makes the constructions exact
when both factors have loops at a glued vertex: the product keeps one loop
per color there and the adjacency diagonal counts both, matching the tensor
formulas.

Every product records its vertex coordinate labels plus the list of
composite indices embedding it into the ambient tensor space, so the
operator decompositions can be compared entrywise after restriction.
The three-leg embeddings use leg order (V1, V2-at-e2, V2-at-f2): the swap of
the second and third legs relative to the two-step construction order is an
explicit index permutation (see linalg.flip23_permutation), never an
implicit relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    BirootedGraph,
    ColoredGraph,
    RootedGraph,
    adjacency_matrix,
    colored,
)
from .linalg import (
    Matrix,
    basis_projection,
    complement_projection,
    direct_sum,
    kron,
    kron_all,
    subspace_restrict,
    tensor_index,
)

__all__ = [
    "ProductGraph",
    "OperatorDecomposition",
    "star_product",
    "comb_product",
    "orthogonal_product",
    "comb_at_product",
    "c_comb_product",
    "comb_loop_product",
    "essential_loop_product",
    "c_comb_loop_product",
    "essential_decomposition",
    "c_comb_decomposition",
    "essential_loop_decomposition",
    "c_comb_loop_decomposition",
    "superposition_map",
    "comb_at_collapse_map",
    "relabel_isomorphic",
]


@dataclass(frozen=True)
class ProductGraph:
    """A product graph together with its coordinate labels and the composite
    tensor indices embedding it into the ambient operator space."""

    graph: ColoredGraph
    vertex_labels: tuple
    embedding: tuple
    ambient_dim: int

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    def index_of(self, label) -> int:
        return self.vertex_labels.index(label)

    def label_of_root(self):
        return self.vertex_labels[self.graph.root]


@dataclass(frozen=True)
class OperatorDecomposition:
    """A pair of ambient tensor operators whose sum, restricted to the
    embedded span, equals the adjacency matrix of the associated product.

    `loop_adjusted` distinguishes the loop-product pairs (R1, R2), whose
    ambient identity carries the added loops, from the plain pairs (S1, S2).
    `phi_index` / `psi_index` are the ambient coordinates of the one or two
    distinguished vector states.
    """

    s1: Matrix
    s2: Matrix
    ambient_dim: int
    embedding: tuple
    loop_adjusted: bool
    phi_index: int
    psi_index: int | None = None

    def total(self) -> Matrix:
        return self.s1 + self.s2

    def restricted_sum(self) -> Matrix:
        return subspace_restrict(self.total(), self.embedding)

    def restricted(self, which: int) -> Matrix:
        return subspace_restrict(self.s1 if which == 1 else self.s2, self.embedding)


def _as_rooted(g) -> RootedGraph:
    if isinstance(g, BirootedGraph):
        return g.underlying
    if isinstance(g, RootedGraph):
        return g
    raise TypeError(f"expected a rooted or birooted graph, got {type(g).__name__}")


def _pair(i: int, j: int) -> tuple:
    return (i, j) if i <= j else (j, i)


def _first_factor(g):
    """Vertex count, root and colored edge list of a product's first factor.

    Uncolored factors get color 1 throughout; a colored factor (a previous
    product) keeps its colors, so compositions preserve edge multiplicity.
    """
    if isinstance(g, ColoredGraph):
        return g.vertex_count, g.root, [((i, j), c) for i, j, c in g.colored_edges]
    g = _as_rooted(g)
    return g.vertex_count, g.root, [((i, j), 1) for i, j in g.edges]


def star_product(g1, g2) -> ProductGraph:
    """Glue (G2, e2) at its root to the root of (G1, e1)."""
    n1, e1, edges1 = _first_factor(g1)
    g2 = _as_rooted(g2)
    n2, e2 = g2.vertex_count, g2.root
    labels = [(u, e2) for u in range(n1)]
    labels += [(e1, y) for y in range(n2) if y != e2]
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for (u, v), c in edges1:
        edges.append(_pair(index[(u, e2)], index[(v, e2)]) + (c,))
    for y, z in g2.edges:
        edges.append(_pair(index[(e1, y)], index[(e1, z)]) + (2,))
    graph = colored(len(labels), edges, index[(e1, e2)])
    embedding = tuple(tensor_index((n1, n2), lab) for lab in labels)
    return ProductGraph(graph, tuple(labels), embedding, n1 * n2)


def comb_product(g1, g2) -> ProductGraph:
    """A copy of (G2, e2) at its root on every vertex of G1; the product
    fills the whole tensor space V1 x V2."""
    n1, e1, edges1 = _first_factor(g1)
    g2 = _as_rooted(g2)
    n2, e2 = g2.vertex_count, g2.root
    labels = [(u, y) for u in range(n1) for y in range(n2)]
    edges = []
    for (u, v), c in edges1:
        edges.append(_pair(u * n2 + e2, v * n2 + e2) + (c,))
    for u in range(n1):
        for y, z in g2.edges:
            edges.append(_pair(u * n2 + y, u * n2 + z) + (2,))
    graph = colored(n1 * n2, edges, e1 * n2 + e2)
    return ProductGraph(graph, tuple(labels), tuple(range(n1 * n2)), n1 * n2)


def orthogonal_product(g1, g2) -> ProductGraph:
    """Copies of (G2, e2) on every vertex of G1 except its root."""
    n1, e1, edges1 = _first_factor(g1)
    g2 = _as_rooted(g2)
    n2, e2 = g2.vertex_count, g2.root
    labels = []
    for u in range(n1):
        if u == e1:
            labels.append((e1, e2))
        else:
            labels.extend((u, y) for y in range(n2))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for (u, v), c in edges1:
        edges.append(_pair(index[(u, e2)], index[(v, e2)]) + (c,))
    for u in range(n1):
        if u == e1:
            continue
        for y, z in g2.edges:
            edges.append(_pair(index[(u, y)], index[(u, z)]) + (2,))
    graph = colored(len(labels), edges, index[(e1, e2)])
    embedding = tuple(tensor_index((n1, n2), lab) for lab in labels)
    return ProductGraph(graph, tuple(labels), embedding, n1 * n2)


def _comb_at_parts(g1, g2: BirootedGraph):
    """Vertex labels, spine/copy edge sets and the root of the comb-at
    product, in the pre-swap coordinates (u, y, z): y is the f2-copy leg,
    z the e2-copy leg. The spine is {(u, f2, e2)}."""
    g1 = _as_rooted(g1)
    if not isinstance(g2, BirootedGraph):
        raise TypeError("the second factor must be birooted")
    n1, e1 = g1.vertex_count, g1.root
    n2, e2, f2 = g2.vertex_count, g2.root, g2.second_root
    labels = []
    spine = set()
    for u in range(n1):
        spine.add(len(labels))
        labels.append((u, f2, e2))
        if u != e1:
            labels.extend((u, y, e2) for y in range(n2) if y != f2)
    labels.extend((e1, f2, z) for z in range(n2) if z != e2)
    index = {lab: i for i, lab in enumerate(labels)}
    spine_edges = []
    for u, v in g1.edges:
        spine_edges.append(_pair(index[(u, f2, e2)], index[(v, f2, e2)]))
    copy_edges = []
    for u in range(n1):
        if u == e1:
            continue
        for y, z in g2.edges:
            copy_edges.append(_pair(index[(u, y, e2)], index[(u, z, e2)]))
    for y, z in g2.edges:
        copy_edges.append(_pair(index[(e1, f2, y)], index[(e1, f2, z)]))
    root = index[(e1, f2, e2)]
    return g1, g2, labels, spine, spine_edges, copy_edges, root


def _three_leg_embedding(labels, n1, n2):
    # ambient leg order (V1, V2-at-e2, V2-at-f2): label (u, y, z) sits at
    # composite coordinate (u, z, y)
    return tuple(tensor_index((n1, n2, n2), (u, z, y)) for (u, y, z) in labels)


def comb_at_product(g1, g2: BirootedGraph) -> ProductGraph:
    """A copy of (G2, e2) on the root of G1 and copies of (G2, f2) on all
    remaining vertices: the orthogonal product of (G1, e1) and (G2, f2)
    followed by the star product with (G2, e2). With f2 = e2 this collapses
    to the comb product."""
    g1, g2, labels, _spine, spine_edges, copy_edges, root = _comb_at_parts(g1, g2)
    n1, n2 = g1.vertex_count, g2.vertex_count
    edges = [e + (1,) for e in spine_edges] + [e + (2,) for e in copy_edges]
    graph = colored(len(labels), edges, root)
    return ProductGraph(
        graph, tuple(labels), _three_leg_embedding(labels, n1, n2), n1 * n2 * n2
    )


def _colored_union(first: ProductGraph, second: ProductGraph, block: int):
    shift = first.vertex_count
    edges = list(first.graph.colored_edges)
    edges.extend((i + shift, j + shift, c) for i, j, c in second.graph.colored_edges)
    graph = colored(
        shift + second.vertex_count,
        edges,
        first.graph.root,
        shift + second.graph.root,
    )
    labels = first.vertex_labels + second.vertex_labels
    embedding = first.embedding + tuple(block + k for k in second.embedding)
    return graph, labels, embedding


def c_comb_product(g1: BirootedGraph, g2: BirootedGraph) -> ProductGraph:
    """Disjoint union of the comb-at component of (G1, e1) and (G2, e2, f2)
    with the comb product of (G1, f1) and (G2, f2); roots e and f."""
    if not isinstance(g1, BirootedGraph) or not isinstance(g2, BirootedGraph):
        raise TypeError("c-comb product needs birooted factors")
    ess = comb_at_product(g1.at_first(), g2)
    cmb = comb_product(g1.at_second(), g2.at_second())
    n1, n2 = g1.vertex_count, g2.vertex_count
    block = n1 * n2 * n2
    graph, labels, embedding = _colored_union(ess, cmb, block)
    return ProductGraph(graph, labels, embedding, block + n1 * n2)


def comb_loop_product(g1, g2) -> ProductGraph:
    """Comb product with a color-1 loop added to every vertex except the
    root of each G2-copy."""
    base = comb_product(g1, g2)
    g2 = _as_rooted(g2)
    n2, e2 = g2.vertex_count, g2.root
    edges = list(base.graph.colored_edges)
    for v in range(base.vertex_count):
        if v % n2 != e2:
            edges.append((v, v, 1))
    graph = colored(base.vertex_count, edges, base.graph.root)
    return ProductGraph(graph, base.vertex_labels, base.embedding, base.ambient_dim)


def essential_loop_product(
    g1, g2: BirootedGraph, loop_color: int = 1
) -> ProductGraph:
    """Comb-at product with added loops on every vertex except e2 of the
    copy attached to the root and except f2 of all other copies;
    equivalently, on every non-spine vertex.

    The added loops carry color 1: that is what makes products of the
    one-color adjacency matrices count alternating d-walks, and it matches
    the loop-adjusted operator pair (the identity summand of R1). Passing
    `loop_color=2` builds the alternative coloring for inspection; its
    first-return counts do not reproduce the convolution coefficients.
    """
    if loop_color not in (1, 2):
        raise ValueError("loop color must be 1 or 2")
    g1, g2, labels, spine, spine_edges, copy_edges, root = _comb_at_parts(g1, g2)
    n1, n2 = g1.vertex_count, g2.vertex_count
    edges = [e + (1,) for e in spine_edges] + [e + (2,) for e in copy_edges]
    for v in range(len(labels)):
        if v not in spine:
            edges.append((v, v, loop_color))
    graph = colored(len(labels), edges, root)
    return ProductGraph(
        graph, tuple(labels), _three_leg_embedding(labels, n1, n2), n1 * n2 * n2
    )


def c_comb_loop_product(
    g1: BirootedGraph, g2: BirootedGraph, loop_color: int = 1
) -> ProductGraph:
    """Disjoint union of the essential loop component (root e) and the comb
    loop product at the second roots (root f); see essential_loop_product
    for the `loop_color` escape hatch."""
    if not isinstance(g1, BirootedGraph) or not isinstance(g2, BirootedGraph):
        raise TypeError("c-comb loop product needs birooted factors")
    ess = essential_loop_product(g1.at_first(), g2, loop_color)
    cmb = comb_loop_product(g1.at_second(), g2.at_second())
    n1, n2 = g1.vertex_count, g2.vertex_count
    block = n1 * n2 * n2
    graph, labels, embedding = _colored_union(ess, cmb, block)
    return ProductGraph(graph, labels, embedding, block + n1 * n2)


# -- operator decompositions ---------------------------------------------------


def _roots(g1, g2):
    g1r = _as_rooted(g1)
    n1, e1 = g1r.vertex_count, g1r.root
    n2, e2, f2 = g2.vertex_count, g2.root, g2.second_root
    return g1r, n1, e1, n2, e2, f2


def essential_decomposition(g1, g2: BirootedGraph) -> OperatorDecomposition:
    """Tensor pair (S1, S2) for the comb-at component on V1 x V2 x V2:

        S1 = a1 (x) P_e2 (x) P_f2
        S2 = P_e1 (x) a2 (x) 1  +  P_e1-perp (x) 1 (x) a2

    The embedded span is invariant under both operators and their sum
    restricts to the adjacency matrix of the comb-at product; the root is
    embedded at the composite index of (e1, e2, f2)."""
    g1r, n1, e1, n2, e2, f2 = _roots(g1, g2)
    a1 = adjacency_matrix(g1r)
    a2 = adjacency_matrix(g2.underlying)
    i2 = Matrix.identity(n2)
    s1 = kron_all(a1, basis_projection(n2, e2), basis_projection(n2, f2))
    s2 = kron_all(basis_projection(n1, e1), a2, i2) + kron_all(
        complement_projection(n1, e1), i2, a2
    )
    prod = comb_at_product(g1r, g2)
    return OperatorDecomposition(
        s1,
        s2,
        n1 * n2 * n2,
        prod.embedding,
        False,
        tensor_index((n1, n2, n2), (e1, e2, f2)),
    )


def c_comb_decomposition(g1: BirootedGraph, g2: BirootedGraph) -> OperatorDecomposition:
    """Direct-sum pair for the full c-comb product on the ambient space
    (V1 x V2 x V2) (+) (V1 x V2), with the comb-at block as in
    essential_decomposition and the comb block

        S1' = a1 (x) P_f2,    S2' = 1 (x) a2.

    Exposes both vector states: phi at the embedded e, psi at the embedded
    f; the pair (S1, S2) is c-monotone independent with respect to them."""
    if not isinstance(g1, BirootedGraph):
        raise TypeError("c-comb decomposition needs a birooted first factor")
    ess = essential_decomposition(g1.at_first(), g2)
    n1, f1 = g1.vertex_count, g1.second_root
    n2, f2 = g2.vertex_count, g2.second_root
    a1 = adjacency_matrix(g1.underlying)
    a2 = adjacency_matrix(g2.underlying)
    s1 = direct_sum(ess.s1, kron(a1, basis_projection(n2, f2)))
    s2 = direct_sum(ess.s2, kron(Matrix.identity(n1), a2))
    prod = c_comb_product(g1, g2)
    block = n1 * n2 * n2
    return OperatorDecomposition(
        s1,
        s2,
        block + n1 * n2,
        prod.embedding,
        False,
        ess.phi_index,
        block + tensor_index((n1, n2), (f1, f2)),
    )


def essential_loop_decomposition(g1, g2: BirootedGraph) -> OperatorDecomposition:
    """Loop-adjusted pair (R1, R2) for the essential loop component:

        R1 - 1 = (a1 - 1) (x) P_e2 (x) P_f2
        R2 - 1 = P_e1 (x) (a2 - 1) (x) 1  +  P_e1-perp (x) 1 (x) (a2 - 1)

    with 1 the ambient identity, whose restriction contributes exactly the
    added color-1 loops; R1 and R2 restrict to the color-1 and color-2
    adjacency matrices of the essential loop product."""
    g1r, n1, e1, n2, e2, f2 = _roots(g1, g2)
    dim = n1 * n2 * n2
    a1v = adjacency_matrix(g1r) - Matrix.identity(n1)
    a2v = adjacency_matrix(g2.underlying) - Matrix.identity(n2)
    i2 = Matrix.identity(n2)
    one = Matrix.identity(dim)
    r1 = one + kron_all(a1v, basis_projection(n2, e2), basis_projection(n2, f2))
    r2 = one + kron_all(basis_projection(n1, e1), a2v, i2) + kron_all(
        complement_projection(n1, e1), i2, a2v
    )
    prod = essential_loop_product(g1r, g2)
    return OperatorDecomposition(
        r1,
        r2,
        dim,
        prod.embedding,
        True,
        tensor_index((n1, n2, n2), (e1, e2, f2)),
    )


def c_comb_loop_decomposition(
    g1: BirootedGraph, g2: BirootedGraph
) -> OperatorDecomposition:
    """Direct-sum loop-adjusted pair covering both components of the c-comb
    loop product; (R1 - 1, R2 - 1) is c-monotone independent with respect to
    the states at the embedded roots e and f."""
    if not isinstance(g1, BirootedGraph):
        raise TypeError("c-comb loop decomposition needs a birooted first factor")
    ess = essential_loop_decomposition(g1.at_first(), g2)
    n1, f1 = g1.vertex_count, g1.second_root
    n2, f2 = g2.vertex_count, g2.second_root
    block = n1 * n2 * n2
    a1v = adjacency_matrix(g1.underlying) - Matrix.identity(n1)
    a2v = adjacency_matrix(g2.underlying) - Matrix.identity(n2)
    one_comb = Matrix.identity(n1 * n2)
    r1 = direct_sum(ess.s1, one_comb + kron(a1v, basis_projection(n2, f2)))
    r2 = direct_sum(ess.s2, one_comb + kron(Matrix.identity(n1), a2v))
    prod = c_comb_loop_product(g1, g2)
    return OperatorDecomposition(
        r1,
        r2,
        block + n1 * n2,
        prod.embedding,
        True,
        ess.phi_index,
        block + tensor_index((n1, n2), (f1, f2)),
    )


# -- canonical isomorphisms ----------------------------------------------------


def superposition_map(g1, g2) -> dict:
    """Vertex bijection exhibiting the comb product as the superposition of
    the orthogonal and star products: star(orthogonal(G1, G2), G2) -> comb.

    Keys index the star-of-orthogonal product, values the comb product; the
    map preserves roots and colored edges.
    """
    g1, g2 = _as_rooted(g1), _as_rooted(g2)
    n2, e1, e2 = g2.vertex_count, g1.root, g2.root
    orth = orthogonal_product(g1, g2)
    so = star_product(orth.graph, g2)
    mapping = {}
    for i, (w, y) in enumerate(so.vertex_labels):
        if y == e2:
            u, v = orth.vertex_labels[w]
            mapping[i] = u * n2 + v
        else:
            mapping[i] = e1 * n2 + y
    return mapping


def comb_at_collapse_map(g1, g2: BirootedGraph) -> dict:
    """Vertex bijection comb_at -> comb when the two roots of G2 coincide."""
    if g2.second_root != g2.root:
        raise ValueError("collapse map needs f2 = e2")
    g1 = _as_rooted(g1)
    n2, e1, e2 = g2.vertex_count, g1.root, g2.root
    prod = comb_at_product(g1, g2)
    mapping = {}
    for i, (u, y, z) in enumerate(prod.vertex_labels):
        if (y, z) == (e2, e2):
            mapping[i] = u * n2 + e2
        elif z == e2:
            mapping[i] = u * n2 + y
        else:
            mapping[i] = e1 * n2 + z
    return mapping


def relabel_isomorphic(graph_a: ColoredGraph, graph_b: ColoredGraph, mapping: dict) -> bool:
    """Check that `mapping` is a root- and color-preserving edge bijection."""
    if graph_a.vertex_count != graph_b.vertex_count:
        return False
    if sorted(mapping) != list(range(graph_a.vertex_count)):
        return False
    if sorted(mapping.values()) != list(range(graph_b.vertex_count)):
        return False
    if mapping[graph_a.root] != graph_b.root:
        return False
    mapped = {
        _pair(mapping[i], mapping[j]) + (c,) for i, j, c in graph_a.colored_edges
    }
    return mapped == set(graph_b.colored_edges)
