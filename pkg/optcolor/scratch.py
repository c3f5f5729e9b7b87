"""
Forbidden-color scratch buffers for First-Fit.

Each worker owns one buffer. Marks are epoch-stamped, so starting a new
vertex costs one integer increment instead of clearing O(d) cells.
"""

from typing import Sequence


class ForbiddenColors:
    """
    Epoch-stamped mark array used to find the smallest color not taken by a neighbor.

    Structure:
        _marks[color] == _epoch  ->  color is forbidden for the current vertex
        anything else            ->  color is free

    Not thread-safe: give every worker its own instance.
    """

    def __init__(self, capacity: int):
        """
        Initialize the buffer.

        Args:
            capacity: Number of colors tracked; must be at least max_degree + 1
                      of the graph the buffer is used on
        """
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self._marks = [0] * capacity
        self._epoch = 0

    @property
    def capacity(self) -> int:
        return len(self._marks)

    def smallest_free(self, neighbors: Sequence[int], colors: Sequence[int]) -> int:
        """
        Smallest color in {0, ..., len(neighbors)} not held by any neighbor.

        Uncolored neighbors (negative sentinel) impose no constraint. Colors
        above len(neighbors) cannot change the answer and are skipped.

        Args:
            neighbors: Adjacency of the vertex being colored
            colors: Current color of every vertex (read, never written)

        Returns:
            The First-Fit color for the vertex
        """
        limit = len(neighbors)
        if limit >= len(self._marks):
            raise ValueError(
                f"scratch capacity {len(self._marks)} too small for degree {limit}")
        self._epoch += 1
        epoch = self._epoch
        marks = self._marks
        for w in neighbors:
            c = colors[w]
            if 0 <= c <= limit:
                marks[c] = epoch
        color = 0
        while marks[color] == epoch:
            color += 1
        return color
