"""Set-trie over ascending vertex-id sequences, used to drop non-maximal sets."""

from __future__ import annotations

from typing import Iterable, Sequence


class _Node:
    __slots__ = ("children", "terminal", "removed")

    def __init__(self) -> None:
        self.children: dict[int, _Node] = {}
        self.terminal = False
        self.removed = False


class SetTrie:
    def __init__(self, sets: Iterable[Sequence[int]] = ()) -> None:
        self.root = _Node()
        self._size = 0
        for s in sets:
            self.insert(s)

    def __len__(self) -> int:
        return self._size

    def insert(self, s: Sequence[int]) -> None:
        if not s:
            raise ValueError("cannot store an empty set")
        node = self.root
        prev = None
        for x in s:
            if prev is not None and x <= prev:
                raise ValueError(f"set must be strictly ascending: {list(s)}")
            prev = x
            nxt = node.children.get(x)
            if nxt is None:
                nxt = node.children[x] = _Node()
            node = nxt
        if not node.terminal:
            node.terminal = True
            self._size += 1

    def _find(self, s: Sequence[int]) -> _Node | None:
        node = self.root
        for x in s:
            node = node.children.get(x)
            if node is None:
                return None
        return node

    def __contains__(self, s: Sequence[int]) -> bool:
        node = self._find(s)
        return node is not None and node.terminal and not node.removed

    def remove(self, s: Sequence[int]) -> bool:
        """Mark ``s`` removed; returns whether it was present."""
        node = self._find(s)
        if node is None or not node.terminal or node.removed:
            return False
        node.removed = True
        self._size -= 1
        return True

    def get_all_subsets(self, q: Sequence[int]) -> list[tuple[int, ...]]:
        """Stored (non-removed) sets contained in ``q``; ``q`` must be ascending."""
        out: list[tuple[int, ...]] = []
        path: list[int] = []
        k = len(q)

        def walk(node: _Node, i: int) -> None:
            if node.terminal and not node.removed:
                out.append(tuple(path))
            if not node.children:
                return
            for j in range(i, k):
                child = node.children.get(q[j])
                if child is not None:
                    path.append(q[j])
                    walk(child, j + 1)
                    path.pop()

        walk(self.root, 0)
        return out

    def __iter__(self):
        path: list[int] = []
        stack = [(self.root, iter(sorted(self.root.children.items())))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                if path:
                    path.pop()
                continue
            x, child = nxt
            path.append(x)
            if child.terminal and not child.removed:
                yield tuple(path)
            stack.append((child, iter(sorted(child.children.items()))))


def filter_maximal(sets: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Keep the inclusion-maximal sets, deduplicated, in lexicographic order."""
    uniq = {tuple(sorted(s)) for s in sets}
    uniq.discard(())
    trie = SetTrie(uniq)
    for s in sorted(uniq, key=len, reverse=True):
        if s not in trie:
            continue
        for sub in trie.get_all_subsets(s):
            if len(sub) < len(s):
                trie.remove(sub)
    return sorted(s for s in uniq if s in trie)
