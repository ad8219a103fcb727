"""Property checks over randomly shaped ternary trees.

The built-in families cover a few specific shapes; these tests draw
arbitrary rooted ternary structures and push them through the whole
pipeline: naive enumeration, string generation, validity, vacuum
preservation, and optimization with structure checks.
"""

import numpy as np
import pytest

from ferrtree.baselines import EnumerationEvaluator
from ferrtree.encodings import (is_vacuum_preserving, nto_matrix,
                                strings_from_tree, validate)
from ferrtree.topphatt import optimize
from ferrtree.trees import TernaryTree, TreeNode, naive_tree

from test_topphatt import random_majorana


def random_tree(n_modes: int, rng) -> TernaryTree:
    """Uniformly messy rooted ternary tree: each new node attaches to a
    random free slot of an existing node, on a random axis."""
    children = {0: {}}
    free = [(0, axis) for axis in ("x", "y", "z")]
    for nid in range(1, n_modes):
        k = int(rng.integers(len(free)))
        parent, axis = free.pop(k)
        children[parent][axis] = nid
        children[nid] = {}
        free.extend((nid, a) for a in ("x", "y", "z"))
    qubits = rng.permutation(n_modes)
    nodes = [TreeNode(i, int(qubits[i]), children[i]) for i in range(n_modes)]
    return TernaryTree(nodes, root=0)


@pytest.mark.parametrize("trial", range(12))
def test_random_trees_full_pipeline(trial):
    rng = np.random.default_rng([101, trial])
    m = int(rng.integers(2, 11))
    tree = random_tree(m, rng)

    indexed = naive_tree(tree)
    enc = strings_from_tree(indexed)
    rep = validate(enc)
    assert rep.valid, f"trial {trial}: invalid naive encoding"
    assert rep.constant_one_nto
    assert is_vacuum_preserving(enc)

    h = random_majorana(m, rng)
    res = optimize(h, tree)
    opt_enc = strings_from_tree(res.tree)
    opt_rep = validate(opt_enc)
    assert opt_rep.valid and opt_rep.constant_one_nto
    assert is_vacuum_preserving(opt_enc)
    # structure untouched
    for nid in tree.nodes:
        assert res.tree.nodes[nid].children == tree.nodes[nid].children
        assert res.tree.nodes[nid].qubit == tree.nodes[nid].qubit
    # reported weight is the true encoded weight
    ev = EnumerationEvaluator(tree, h)
    assert ev.weight_of(res.scheme) == res.total_weight
    # NTO multiset invariant under the optimizer (it only relabels leaves)
    n = 2 * m
    before = sorted(nto_matrix(enc)[np.triu_indices(n, k=1)])
    after = sorted(nto_matrix(opt_enc)[np.triu_indices(n, k=1)])
    assert before == after
