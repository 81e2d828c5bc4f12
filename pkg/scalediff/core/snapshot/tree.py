# scalediff/core/snapshot/tree.py

"""
Traversal helpers for view trees: pre-order listing and sibling draw order.
"""

from typing import Iterator, List, Tuple

from .models import ViewNode


def preorder(root: ViewNode) -> List[ViewNode]:
    """
    Depth-first, parent-before-children listing of a tree.

    Children are visited in their stored order. Iterative so deep trees do not
    hit the recursion limit.
    """
    ordered: List[ViewNode] = []
    stack: List[ViewNode] = [root]
    while stack:
        node = stack.pop()
        ordered.append(node)
        stack.extend(reversed(node.children))
    return ordered


def draw_order(parent: ViewNode) -> List[ViewNode]:
    """Children sorted by (z-order, stored index); lower z is drawn first."""
    indexed = sorted(enumerate(parent.children), key=lambda item: (item[1].z_order, item[0]))
    return [child for _, child in indexed]


def iter_parent_child(root: ViewNode) -> Iterator[Tuple[ViewNode, ViewNode]]:
    """Yields (parent, child) edges top-down; children follow draw order."""
    for node in preorder(root):
        for child in draw_order(node):
            yield node, child


def count_nodes(root: ViewNode) -> int:
    return len(preorder(root))
