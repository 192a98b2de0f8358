"""Steiner tree container, path queries, and tree stitching."""

from __future__ import annotations

import pytest

from ghtree import (
    SteinerTree,
    combine_steiner,
    component_nodes,
    min_edge_on_path,
    tree_path,
)


def path_tree() -> SteinerTree:
    return SteinerTree(range(4), [(0, 1, 5.0), (1, 2, 2.0), (2, 3, 4.0)])


class TestConstruction:
    def test_single_node_tree(self):
        t = SteinerTree([3])
        assert t.nodes == (3,)
        assert t.edges == ()
        assert dict(t.f) == {3: 3}

    def test_default_map_is_identity(self):
        t = path_tree()
        assert dict(t.f) == {v: v for v in range(4)}

    def test_map_may_cover_extra_vertices(self):
        t = SteinerTree([0, 1], [(0, 1, 1.0)], f={0: 0, 1: 1, 5: 0, 6: 1})
        assert t.preimage([0]) == {0, 5}
        assert t.preimage([1]) == {1, 6}

    def test_zero_weight_edges_allowed(self):
        t = SteinerTree([0, 1], [(0, 1, 0.0)])
        assert t.edges == ((0, 1, 0.0),)

    def test_wrong_edge_count_rejected(self):
        with pytest.raises(ValueError, match="spanning tree"):
            SteinerTree(range(3), [(0, 1, 1.0)])

    def test_cycle_rejected(self):
        with pytest.raises(ValueError, match="connect|duplicate|spanning"):
            SteinerTree(range(4), [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="connect"):
            SteinerTree(range(5), [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0)])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            SteinerTree(range(3), [(0, 1, 1.0), (1, 0, 2.0)])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="invalid weight"):
            SteinerTree(range(2), [(0, 1, -0.5)])

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            SteinerTree(range(2), [(0, 0, 1.0)])

    def test_map_must_fix_nodes(self):
        with pytest.raises(ValueError, match="fix terminal"):
            SteinerTree([0, 1], [(0, 1, 1.0)], f={0: 1, 1: 1})

    def test_map_range_must_be_nodes(self):
        with pytest.raises(ValueError, match="non-terminal"):
            SteinerTree([0, 1], [(0, 1, 1.0)], f={0: 0, 1: 1, 5: 9})

    def test_edge_outside_node_set_rejected(self):
        with pytest.raises(ValueError, match="outside the node set"):
            SteinerTree([0, 1], [(0, 2, 1.0)])


class TestPaths:
    def test_path_endpoints_and_order(self):
        assert tree_path(path_tree(), 0, 3) == [0, 1, 2, 3]
        assert tree_path(path_tree(), 3, 1) == [3, 2, 1]
        assert tree_path(path_tree(), 2, 2) == [2]

    def test_path_needs_tree_nodes(self):
        with pytest.raises(ValueError):
            tree_path(path_tree(), 0, 9)

    def test_min_edge_value_and_orientation(self):
        a, b, w = min_edge_on_path(path_tree(), 0, 3)
        assert (a, b, w) == (1, 2, 2.0)
        a, b, w = min_edge_on_path(path_tree(), 3, 0)
        assert (a, b, w) == (2, 1, 2.0)

    def test_min_edge_tie_breaks_toward_first_endpoint(self):
        t = SteinerTree(range(3), [(0, 1, 3.0), (1, 2, 3.0)])
        assert min_edge_on_path(t, 0, 2) == (0, 1, 3.0)
        assert min_edge_on_path(t, 2, 0) == (2, 1, 3.0)

    def test_min_edge_requires_distinct_endpoints(self):
        with pytest.raises(ValueError, match="no edges"):
            min_edge_on_path(path_tree(), 1, 1)

    def test_component_nodes_after_dropping_edge(self):
        t = path_tree()
        assert component_nodes(t, (1, 2), 0) == {0, 1}
        assert component_nodes(t, (1, 2), 3) == {2, 3}
        assert component_nodes(t, (2, 1), 3) == {2, 3}


class TestCombine:
    def test_stitches_child_onto_backbone(self):
        # Backbone over {0, 4}; vertex 9 is the supernode for the child's
        # region, mapped to terminal 0.  Child over {1, 2}; vertex 8 is the
        # supernode for everything else, mapped to terminal 2.
        backbone = SteinerTree([0, 4], [(0, 4, 5.0)], f={0: 0, 4: 4, 9: 0})
        child = SteinerTree([1, 2], [(1, 2, 3.0)], f={1: 1, 2: 2, 8: 2})
        out = combine_steiner(backbone, [(child, 8, 9, 7.0)])
        assert out.nodes == (0, 1, 2, 4)
        assert set(out.edges) == {(0, 4, 5.0), (1, 2, 3.0), (0, 2, 7.0)}
        assert dict(out.f) == {0: 0, 1: 1, 2: 2, 4: 4}

    def test_no_children_returns_backbone(self):
        t = path_tree()
        assert combine_steiner(t, []) is t

    def test_supernodes_leave_the_vertex_map(self):
        backbone = SteinerTree([0], f={0: 0, 9: 0})
        child = SteinerTree([1], f={1: 1, 8: 1})
        out = combine_steiner(backbone, [(child, 8, 9, 2.0)])
        assert out.nodes == (0, 1)
        assert out.edges == ((0, 1, 2.0),)
        assert 8 not in out.f and 9 not in out.f

    def test_duplicate_backbone_supernode_rejected(self):
        backbone = SteinerTree([0], f={0: 0, 9: 0})
        child = SteinerTree([1], f={1: 1, 8: 1})
        with pytest.raises(ValueError, match="duplicate"):
            combine_steiner(backbone, [(child, 8, 9, 1.0), (child, 8, 9, 1.0)])

    def test_missing_supernode_in_child_map_rejected(self):
        backbone = SteinerTree([0], f={0: 0, 9: 0})
        child = SteinerTree([1])
        with pytest.raises(ValueError, match="missing from child"):
            combine_steiner(backbone, [(child, 8, 9, 1.0)])

    def test_missing_supernode_in_backbone_map_rejected(self):
        backbone = SteinerTree([0])
        child = SteinerTree([1], f={1: 1, 8: 1})
        with pytest.raises(ValueError, match="missing from backbone"):
            combine_steiner(backbone, [(child, 8, 9, 1.0)])

    def test_two_children(self):
        backbone = SteinerTree([0], f={0: 0, 10: 0, 11: 0})
        c1 = SteinerTree([1], f={1: 1, 20: 1})
        c2 = SteinerTree([2, 3], [(2, 3, 1.0)], f={2: 2, 3: 3, 21: 3})
        out = combine_steiner(backbone, [(c1, 20, 10, 4.0), (c2, 21, 11, 6.0)])
        assert out.nodes == (0, 1, 2, 3)
        assert set(out.edges) == {(0, 1, 4.0), (2, 3, 1.0), (0, 3, 6.0)}
