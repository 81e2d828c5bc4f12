# scalediff/core/pairing.py

"""
View pairing between the default-scale tree and the larger-scale tree.

Views are matched by their mapping id. A mapping id that occurs more than once
in a tree (list items inflated from one layout) is enhanced with the
(mapping id, text) tokens of the non-repetitive, text-bearing views found in
its subtree, so each repeated item gets a distinct key.
"""

import logging
from collections import Counter
from typing import Dict, List, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .snapshot.models import Snapshot, ViewNode
from .snapshot.tree import preorder

logger = logging.getLogger(__name__)

# Unit separator: joins key parts; not expected in UI text.
KEY_SEPARATOR = "\u001f"


# --- Types ---

class PairingKey(BaseModel):
    """Mapping id plus, for repetitive views, the offspring text tokens."""
    model_config = ConfigDict(frozen=True)

    base: str
    enhancement: Tuple[Tuple[str, str], ...] = ()

    def serialize(self) -> str:
        parts = [self.base]
        for mapping_id, text in self.enhancement:
            parts.extend((mapping_id, text))
        return KEY_SEPARATOR.join(parts)


class ViewPairing(BaseModel):
    """Matched uid pairs plus the uids of each tree left without a partner."""
    model_config = ConfigDict(frozen=True)

    pairs: List[Tuple[str, str]] = Field(default_factory=list)
    unmatched_a: List[str] = Field(default_factory=list)
    unmatched_b: List[str] = Field(default_factory=list)
    # Keyed views dropped because an earlier view produced the same key;
    # they also appear in the unmatched lists.
    duplicates_a: List[str] = Field(default_factory=list)
    duplicates_b: List[str] = Field(default_factory=list)
    # Views without a mapping id take no part in pairing.
    unkeyed_a: List[str] = Field(default_factory=list)
    unkeyed_b: List[str] = Field(default_factory=list)

    def a_to_b(self) -> Dict[str, str]:
        return dict(self.pairs)

    def b_to_a(self) -> Dict[str, str]:
        return {b: a for a, b in self.pairs}

    def swapped(self) -> "ViewPairing":
        return ViewPairing(
            pairs=[(b, a) for a, b in self.pairs],
            unmatched_a=list(self.unmatched_b),
            unmatched_b=list(self.unmatched_a),
            duplicates_a=list(self.duplicates_b),
            duplicates_b=list(self.duplicates_a),
            unkeyed_a=list(self.unkeyed_b),
            unkeyed_b=list(self.unkeyed_a),
        )


# --- Key computation ---

def _enhancement(node: ViewNode, repetitive: Set[str]) -> Tuple[Tuple[str, str], ...]:
    tokens = []
    for offspring in preorder(node):
        if offspring.mapping_id is None or offspring.mapping_id in repetitive:
            continue
        if offspring.text:
            tokens.append((offspring.mapping_id, offspring.text))
    return tuple(tokens)


def compute_keys(tree: Snapshot) -> Dict[str, PairingKey]:
    """
    Pairing key for every node that carries a mapping id.

    Nodes without a mapping id get no key and are excluded from pairing.
    Duplicate keys are kept here; `pair_views` resolves them.
    """
    nodes = preorder(tree.root)
    counts = Counter(node.mapping_id for node in nodes if node.mapping_id is not None)
    repetitive = {mapping_id for mapping_id, count in counts.items() if count > 1}

    keys: Dict[str, PairingKey] = {}
    for node in nodes:
        if node.mapping_id is None:
            continue
        if node.mapping_id in repetitive:
            keys[node.uid] = PairingKey(base=node.mapping_id, enhancement=_enhancement(node, repetitive))
        else:
            keys[node.uid] = PairingKey(base=node.mapping_id)
    logger.debug(f"Computed {len(keys)} pairing keys ({len(repetitive)} repetitive mapping ids).")
    return keys


def _first_by_key(tree: Snapshot, keys: Dict[str, PairingKey]) -> Tuple[Dict[str, str], List[str]]:
    """serialized key -> first uid in pre-order; plus the uids shadowed by it."""
    chosen: Dict[str, str] = {}
    shadowed: List[str] = []
    for node in preorder(tree.root):
        key = keys.get(node.uid)
        if key is None:
            continue
        serialized = key.serialize()
        if serialized in chosen:
            shadowed.append(node.uid)
        else:
            chosen[serialized] = node.uid
    return chosen, shadowed


def pair_views(a: Snapshot, b: Snapshot) -> ViewPairing:
    """
    Pairs views of `a` and `b` whose serialized keys are equal.

    Keyed views whose key has no counterpart, and shadowed duplicates, are
    listed as unmatched; views without a mapping id are listed as unkeyed.
    Pair order follows `a`'s pre-order, so the result is deterministic.
    """
    keys_a, keys_b = compute_keys(a), compute_keys(b)
    chosen_a, shadowed_a = _first_by_key(a, keys_a)
    chosen_b, shadowed_b = _first_by_key(b, keys_b)

    pairs = [(uid_a, chosen_b[key]) for key, uid_a in chosen_a.items() if key in chosen_b]
    paired_a = {uid for uid, _ in pairs}
    paired_b = {uid for _, uid in pairs}

    pairing = ViewPairing(
        pairs=pairs,
        unmatched_a=[node.uid for node in preorder(a.root) if node.uid in keys_a and node.uid not in paired_a],
        unmatched_b=[node.uid for node in preorder(b.root) if node.uid in keys_b and node.uid not in paired_b],
        duplicates_a=shadowed_a,
        duplicates_b=shadowed_b,
        unkeyed_a=[node.uid for node in preorder(a.root) if node.uid not in keys_a],
        unkeyed_b=[node.uid for node in preorder(b.root) if node.uid not in keys_b],
    )
    unmatched_a, unmatched_b = pairing.unmatched_a, pairing.unmatched_b
    logger.info(f"Paired {len(pairs)} views; unmatched default={len(unmatched_a)}, scaled={len(unmatched_b)}")
    return pairing

