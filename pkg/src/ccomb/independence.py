"""Word-moment oracles for the classical notions of noncommutative
independence and their finite matrix-model tensor realizations.

A word is a sequence of letters ``(algebra_index, element_name)``; algebra
indices come from a linearly ordered set of ints. Adjacent letters from the
same algebra are collapsed by in-algebra multiplication before any recursion
runs, so non-alternating words are accepted everywhere.

Oracles evaluate the defining moment recursions exactly:

* boolean      factorizes an alternating word into single-letter moments
* monotone     strips a letter at a locally maximal algebra index
* orthogonal   two algebras with a two-state rule: an inner letter b of the
  higher algebra contributes psi(b) * (moment with b removed minus the
  product of the flank moments); words that start or end in the higher
  algebra vanish
* tensor       the product of per-algebra moments with positions preserved
* c-monotone   two-state recursion: a letter b at a local maximum splits as
  (phi(b) - psi(b)) * phi(left) * phi(right) + psi(b) * phi(contracted),
  with empty flanks evaluating to one, and the family is monotone
  independent under psi

Realizations model each algebra by named exact matrices with one or two
distinguished coordinates xi (for phi) and eta (for psi); the adjoined
separating idempotent of each extended state acts as the coordinate
projection onto that state's vector. Because the projection of a single
matrix model cannot serve two distinct vector states at once, a two-state
realization carries a phi-anchored block and a psi-anchored block in direct
sum, mirroring the two-component structure of the c-comb decompositions;
phi reads the first block, psi the second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product

from .linalg import (
    Matrix,
    basis_projection,
    complement_projection,
    direct_sum,
    kron,
    kron_all,
    sparse_apply,
    sparse_columns,
    tensor_index,
)

__all__ = [
    "AlgebraModel",
    "ModelFunctional",
    "TableFunctional",
    "Realization",
    "parse_word",
    "collapse_word",
    "oracle_moment",
    "oracle_cmonotone",
    "oracle_cmonotone_all_orders",
    "realize_pair",
    "realize_cmonotone_pair",
    "realize_cmonotone_family",
    "all_words",
    "DEFAULT_FAMILY_CAP",
]

ORACLE_KINDS = ("boolean", "monotone", "orthogonal", "tensor")
DEFAULT_FAMILY_CAP = 3


class AlgebraModel:
    """Named exact matrices over one index with distinguished state
    coordinates; `xi` carries phi and the optional `eta` carries psi."""

    def __init__(self, elements: dict, xi: int, eta: int | None = None):
        if not elements:
            raise ValueError("a model needs at least one element")
        dims = {m.rows for m in elements.values()} | {
            m.cols for m in elements.values()
        }
        if len(dims) != 1:
            raise ValueError("all elements must be square of one dimension")
        self.dim = dims.pop()
        self.elements = dict(elements)
        if not 0 <= xi < self.dim:
            raise ValueError("xi out of range")
        if eta is not None and not 0 <= eta < self.dim:
            raise ValueError("eta out of range")
        self.xi = xi
        self.eta = eta

    @property
    def two_state(self) -> bool:
        return self.eta is not None

    def element_product(self, names) -> Matrix:
        mats = [self.elements[n] for n in names]
        out = mats[0]
        for m in mats[1:]:
            out = out * m
        return out

    def vector_state(self, names, at: int):
        if not names:
            return 1
        return self.element_product(names).entry(at, at)


class ModelFunctional:
    """Moment functional backed by a matrix model's vector state."""

    def __init__(self, model: AlgebraModel, at: int):
        self.model = model
        self.at = at
        self._cache: dict = {}

    def __call__(self, names: tuple):
        names = tuple(names)
        if names not in self._cache:
            self._cache[names] = self.model.vector_state(names, self.at)
        return self._cache[names]


class TableFunctional:
    """Moment functional backed by an explicit table of word values."""

    def __init__(self, table: dict):
        self.table = dict(table)

    def __call__(self, names: tuple):
        names = tuple(names)
        if not names:
            return 1
        try:
            return self.table[names]
        except KeyError:
            raise KeyError(f"no table value for the product {names!r}") from None


def parse_word(text: str) -> tuple:
    """Parse CLI word syntax such as ``1:a 2:b 1:a'``."""
    letters = []
    for token in text.split():
        idx, sep, name = token.partition(":")
        if not sep or not name or not idx.lstrip("-").isdigit():
            raise ValueError(f"bad word token {token!r}, expected index:name")
        letters.append((int(idx), name))
    return tuple(letters)


def collapse_word(word) -> tuple:
    """Merge adjacent letters with equal algebra index into name tuples."""
    out: list = []
    for j, name in word:
        if out and out[-1][0] == j:
            out[-1] = (j, out[-1][1] + (name,))
        else:
            out.append((j, (name,)))
    return tuple(out)


def _drop_and_merge(w: tuple, i: int) -> tuple:
    rest = w[:i] + w[i + 1 :]
    out: list = []
    for j, names in rest:
        if out and out[-1][0] == j:
            out[-1] = (j, out[-1][1] + names)
        else:
            out.append((j, names))
    return tuple(out)


def _local_maxima(w: tuple) -> list:
    last = len(w) - 1
    return [
        i
        for i in range(len(w))
        if (i == 0 or w[i - 1][0] < w[i][0])
        and (i == last or w[i][0] > w[i + 1][0])
    ]


def _monotone(w: tuple, functionals: dict):
    if not w:
        return 1
    if len(w) == 1:
        j, names = w[0]
        return functionals[j](names)
    i = _local_maxima(w)[0]
    j, names = w[i]
    return functionals[j](names) * _monotone(_drop_and_merge(w, i), functionals)


def _orthogonal(w: tuple, lo_fn, hi_fn, lo: int, hi: int):
    if not w:
        return 1
    if len(w) == 1 and w[0][0] == lo:
        return lo_fn(w[0][1])
    if w[0][0] == hi or w[-1][0] == hi:
        return 0
    i = next(k for k, (j, _n) in enumerate(w) if j == hi)
    psi_b = hi_fn(w[i][1])
    whole = _orthogonal(_drop_and_merge(w, i), lo_fn, hi_fn, lo, hi)
    left = _orthogonal(w[:i], lo_fn, hi_fn, lo, hi)
    right = _orthogonal(w[i + 1 :], lo_fn, hi_fn, lo, hi)
    return psi_b * (whole - left * right)


def oracle_moment(kind: str, word, functionals: dict):
    """Evaluate a mixed moment by the defining recursion of `kind`.

    `functionals` maps each algebra index to a callable on name tuples. For
    the orthogonal kind exactly two indices take part and the functional of
    the higher index is read as the psi-state of the orthogonal algebra.
    """
    if kind not in ORACLE_KINDS:
        raise ValueError(f"unknown independence kind {kind!r}")
    w = collapse_word(word)
    if not w:
        return 1
    if kind == "boolean":
        value = 1
        for j, names in w:
            value *= functionals[j](names)
        return value
    if kind == "monotone":
        return _monotone(w, functionals)
    if kind == "tensor":
        per_algebra: dict = {}
        for j, names in w:
            per_algebra[j] = per_algebra.get(j, ()) + names
        value = 1
        for j, names in per_algebra.items():
            value *= functionals[j](names)
        return value
    keys = sorted(functionals)
    if len(keys) != 2:
        raise ValueError("orthogonal evaluation needs exactly two functionals")
    lo, hi = keys
    if any(j not in (lo, hi) for j, _ in w):
        raise ValueError("orthogonal words use exactly the two given algebras")
    return _orthogonal(w, functionals[lo], functionals[hi], lo, hi)


def oracle_cmonotone(word, pairs: dict):
    """Two-state moment of a word under c-monotone independence.

    `pairs` maps each algebra index to a (phi, psi) functional pair. Returns
    (phi_value, psi_value); psi_value follows the monotone recursion in the
    psi functionals. The phi recursion removes the first local maximum; the
    value does not depend on that choice (see oracle_cmonotone_all_orders).
    """
    w = collapse_word(word)
    memo: dict = {}

    def phi(v: tuple):
        if not v:
            return 1
        if v in memo:
            return memo[v]
        if len(v) == 1:
            j, names = v[0]
            out = pairs[j][0](names)
        else:
            i = _local_maxima(v)[0]
            j, names = v[i]
            a_phi = pairs[j][0](names)
            a_psi = pairs[j][1](names)
            out = (a_phi - a_psi) * phi(v[:i]) * phi(v[i + 1 :]) + a_psi * phi(
                _drop_and_merge(v, i)
            )
        memo[v] = out
        return out

    psi_fns = {j: p[1] for j, p in pairs.items()}
    return phi(w), _monotone(w, psi_fns)


def oracle_cmonotone_all_orders(word, pairs: dict) -> frozenset:
    """All phi values reachable by choosing local maxima in any order;
    a singleton set certifies choice independence for this word."""
    memo: dict = {}

    def values(v: tuple) -> frozenset:
        if not v:
            return frozenset({1})
        if v in memo:
            return memo[v]
        if len(v) == 1:
            j, names = v[0]
            out = frozenset({pairs[j][0](names)})
        else:
            acc = set()
            for i in _local_maxima(v):
                j, names = v[i]
                a_phi = pairs[j][0](names)
                a_psi = pairs[j][1](names)
                for x in values(v[:i]):
                    for y in values(v[i + 1 :]):
                        for z in values(_drop_and_merge(v, i)):
                            acc.add((a_phi - a_psi) * x * y + a_psi * z)
            out = frozenset(acc)
        memo[v] = out
        return out

    return values(collapse_word(word))


# -- realizations ---------------------------------------------------------------


@dataclass
class Realization:
    """Realized operator family with one or two product vector states.

    `operators` maps (algebra index, element name) to the ambient matrix;
    moments are vector states at `phi_index` (and `psi_index` when present).
    """

    operators: dict
    dim: int
    phi_index: int
    psi_index: int | None = None
    _columns: dict = field(default_factory=dict, repr=False)

    def _cols(self, key):
        if key not in self._columns:
            self._columns[key] = sparse_columns(self.operators[key])
        return self._columns[key]

    def _state_index(self, state: str) -> int:
        if state == "phi":
            return self.phi_index
        if state == "psi":
            if self.psi_index is None:
                raise ValueError("this realization has no psi state")
            return self.psi_index
        raise ValueError(f"unknown state {state!r}")

    def moment(self, word, state: str = "phi"):
        at = self._state_index(state)
        vec = {at: 1}
        for key in reversed(list(word)):
            vec = sparse_apply(self._cols(key), vec)
        return vec.get(at, 0)

    def evaluator(self, state: str = "phi") -> "WordMomentEvaluator":
        return WordMomentEvaluator(self, state)

    def separating_projection(self) -> Matrix:
        """Rank-one-per-block projection onto the state vectors; inserting
        it into a word splits the phi moment multiplicatively."""
        p = basis_projection(self.dim, self.phi_index)
        if self.psi_index is not None:
            p = p + basis_projection(self.dim, self.psi_index)
        return p


class WordMomentEvaluator:
    """Batch moment evaluation that shares suffix vectors between words."""

    def __init__(self, realization: Realization, state: str = "phi"):
        self.r = realization
        self.at = realization._state_index(state)
        self._vectors = {(): {self.at: 1}}

    def _vector(self, word: tuple) -> dict:
        if word not in self._vectors:
            tail = self._vector(word[1:])
            self._vectors[word] = sparse_apply(self.r._cols(word[0]), tail)
        return self._vectors[word]

    def moment(self, word):
        return self._vector(tuple(word)).get(self.at, 0)


def all_words(letters, max_len: int, min_len: int = 1):
    """All words over the given letters with lengths in [min_len, max_len]."""
    out = []
    for n in range(min_len, max_len + 1):
        out.extend(iter_product(letters, repeat=n))
    return out


def realize_pair(kind: str, model1: AlgebraModel, model2: AlgebraModel) -> Realization:
    """Two-algebra tensor realization on the product of the model spaces.

    With Q the projection onto the second model's phi vector and P onto the
    first model's, elements a of the first algebra act as a (x) Q and
    elements b of the second act per kind:

        boolean     P (x) b
        monotone    1 (x) b
        orthogonal  P-perp (x) b
        tensor      1 (x) b with the first algebra acting as a (x) 1
    """
    if kind not in ORACLE_KINDS:
        raise ValueError(f"unknown independence kind {kind!r}")
    d1, d2 = model1.dim, model2.dim
    q = basis_projection(d2, model2.xi)
    operators = {}
    for name, a in model1.elements.items():
        operators[(1, name)] = kron(a, Matrix.identity(d2) if kind == "tensor" else q)
    if kind == "boolean":
        left = basis_projection(d1, model1.xi)
    elif kind == "orthogonal":
        left = complement_projection(d1, model1.xi)
    else:
        left = Matrix.identity(d1)
    for name, b in model2.elements.items():
        operators[(2, name)] = kron(left, b)
    return Realization(operators, d1 * d2, model1.xi * d2 + model2.xi)


def _pair_block(model1, model2, anchor1, anchor_mid, anchor_right, variant):
    d1, d2 = model1.dim, model2.dim
    p1 = basis_projection(d1, anchor1)
    p1c = complement_projection(d1, anchor1)
    p_mid = basis_projection(d2, anchor_mid)
    p_right = basis_projection(d2, anchor_right)
    i2 = Matrix.identity(d2)
    ops1 = {
        name: kron_all(a, p_mid, p_right) for name, a in model1.elements.items()
    }
    ops2 = {}
    for name, b in model2.elements.items():
        if variant:
            ops2[name] = kron_all(p1, b, p_right) + kron_all(p1c, p_mid, b)
        else:
            ops2[name] = kron_all(p1, b, i2) + kron_all(p1c, i2, b)
    return ops1, ops2


def realize_cmonotone_pair(
    model1: AlgebraModel, model2: AlgebraModel, variant: bool = False
) -> Realization:
    """Two-state tensor realization of a c-monotone pair.

    Both models must carry two state coordinates. The phi block lives on the
    triple tensor space V1 (x) V2 (x) V2 where the middle leg's projection
    sits at xi2 and the right leg's at eta2:

        A1 = a (x) P_xi2 (x) P_eta2
        A2 = P_xi1 (x) b (x) 1  +  P_xi1-perp (x) 1 (x) b

    (`variant=True` replaces the identity legs of A2 with the anchored
    projections, which realizes the same mixed moments.) The psi block is the
    same pattern anchored entirely at the eta coordinates, and the two blocks
    are direct-summed: phi is the vector state at (xi1, xi2, eta2) in the
    first block, psi at (eta1, eta2, eta2) in the second.
    """
    if not (model1.two_state and model2.two_state):
        raise ValueError("c-monotone realizations need two-state models")
    d1, d2 = model1.dim, model2.dim
    block = d1 * d2 * d2
    phi1, phi2 = _pair_block(
        model1, model2, model1.xi, model2.xi, model2.eta, variant
    )
    psi1, psi2 = _pair_block(
        model1, model2, model1.eta, model2.eta, model2.eta, variant
    )
    operators = {}
    for name in model1.elements:
        operators[(1, name)] = direct_sum(phi1[name], psi1[name])
    for name in model2.elements:
        operators[(2, name)] = direct_sum(phi2[name], psi2[name])
    phi_index = (model1.xi * d2 + model2.xi) * d2 + model2.eta
    psi_index = block + (model1.eta * d2 + model2.eta) * d2 + model2.eta
    return Realization(operators, 2 * block, phi_index, psi_index)


def _family_block(models, anchors):
    """One anchored block of the general family realization.

    `anchors[k]` is the pair of coordinates carried by the two legs of
    algebra k. Element a of algebra j acts as

        (a (x) 1) (x) p_j  +  (1 (x) a) (x) (p_j' - p_j)

    where p_j projects every other leg pair onto its anchors and p_j' only
    the leg pairs of larger indices.
    """
    n = len(models)
    dims = []
    for m in models:
        dims.extend((m.dim, m.dim))
    idents = [Matrix.identity(d) for d in dims]

    def leg_proj(k, which):
        return basis_projection(models[k].dim, anchors[k][which])

    ops: dict = {}
    for j, model in enumerate(models):
        for name, a in model.elements.items():
            def legs(term):
                out = []
                for k in range(n):
                    if k == j:
                        out.extend((a, idents[2 * k + 1]) if term == 1 else (idents[2 * k], a))
                    elif term == 2 and k < j:
                        out.extend((idents[2 * k], idents[2 * k + 1]))
                    else:
                        out.extend((leg_proj(k, 0), leg_proj(k, 1)))
                return out

            big = kron_all(*legs(1)) + kron_all(*legs(2)) - kron_all(*legs(3))
            ops[(j, name)] = big
    vector = []
    for k in range(n):
        vector.extend(anchors[k])
    return ops, dims, vector


def realize_cmonotone_family(
    models, cap: int = DEFAULT_FAMILY_CAP
) -> Realization:
    """General tensor realization of a c-monotone family over a linearly
    ordered index set (the list order of `models`).

    Each algebra contributes two legs. In the phi-anchored block the first
    leg of algebra k carries the projection onto xi_k and the second onto
    eta_k; the psi-anchored block anchors both legs at eta_k. The ambient
    dimension grows as the square of the product of the model dimensions,
    so the family size is capped.
    """
    models = list(models)
    if len(models) > cap:
        raise ValueError(f"family size {len(models)} exceeds cap {cap}")
    if not models:
        raise ValueError("empty family")
    for m in models:
        if not m.two_state:
            raise ValueError("c-monotone realizations need two-state models")
    phi_anchors = [(m.xi, m.eta) for m in models]
    psi_anchors = [(m.eta, m.eta) for m in models]
    phi_ops, dims, phi_vec = _family_block(models, phi_anchors)
    psi_ops, _, psi_vec = _family_block(models, psi_anchors)
    block = 1
    for d in dims:
        block *= d
    operators = {
        key: direct_sum(phi_ops[key], psi_ops[key]) for key in phi_ops
    }
    phi_index = tensor_index(dims, phi_vec)
    psi_index = block + tensor_index(dims, psi_vec)
    return Realization(operators, 2 * block, phi_index, psi_index)
