"""
Worker team for the round-structured parallel coloring algorithms.

A team is a fixed set of threads that step through rounds together. Work
inside a round is split into contiguous chunks handed out round-robin;
rounds are separated by a counted barrier whose single-threaded release
hook is where per-worker results get merged.
"""

import logging
import sys
import threading
from contextlib import contextmanager
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from optcolor import config

logger = logging.getLogger(__name__)


def default_chunk_size(work_size: int, thread_count: int) -> int:
    """
    Chunk size for a worklist of work_size items.

    OPTCOLOR_CHUNK_SIZE wins when set; otherwise work_size / (8 x threads),
    never below 64.
    """
    override = config.chunk_size_override()
    if override is not None:
        return override
    return max(config.MIN_CHUNK_SIZE, work_size // (config.CHUNKS_PER_THREAD * thread_count))


def partition(work_size: int, thread_count: int, chunk_size: int) -> List[List[Tuple[int, int]]]:
    """
    Split range(work_size) into contiguous chunks assigned round-robin.

    Returns:
        One list of (start, stop) ranges per worker; chunk k goes to worker k % thread_count
    """
    shares: List[List[Tuple[int, int]]] = [[] for _ in range(thread_count)]
    for k, start in enumerate(range(0, work_size, chunk_size)):
        shares[k % thread_count].append((start, min(start + chunk_size, work_size)))
    return shares


@contextmanager
def _switch_interval(seconds: Optional[float]):
    if seconds is None:
        yield
        return
    previous = sys.getswitchinterval()
    sys.setswitchinterval(seconds)
    try:
        yield
    finally:
        sys.setswitchinterval(previous)


class WorkerTeam:
    """
    Fixed team of threads separated by counted barriers.

    Usage:
        team = WorkerTeam(4)
        team.run(body)              # body(worker_id) runs on every thread
        ...inside body:
        for v in team.share(worker_id, worklist): ...
        team.wait(merge)            # merge() runs once, after everyone arrived

    barrier_events counts barriers, not thread arrivals.
    """

    def __init__(self, thread_count: int, chunk_size: Optional[int] = None):
        """
        Initialize the team.

        Args:
            thread_count: Number of worker threads (>= 1)
            chunk_size: Fixed chunk size; None uses default_chunk_size per worklist
        """
        if thread_count < 1:
            raise ValueError(f"thread_count must be >= 1, got {thread_count}")
        self.thread_count = thread_count
        self.chunk_size = chunk_size
        self.barrier_events = 0
        self._hook: Optional[Callable[[], None]] = None
        self._barrier = threading.Barrier(thread_count, action=self._release)
        self._errors: List[BaseException] = []
        self._errors_lock = threading.Lock()

    def _release(self) -> None:
        # Runs in exactly one thread while all others are parked
        self.barrier_events += 1
        hook, self._hook = self._hook, None
        if hook is not None:
            hook()

    def share(self, worker_id: int, items: Sequence[int]) -> Iterator[int]:
        """Yield this worker's items of a worklist, chunk by chunk."""
        size = len(items)
        chunk = self.chunk_size or default_chunk_size(size, self.thread_count)
        for start, stop in partition(size, self.thread_count, chunk)[worker_id]:
            for i in range(start, stop):
                yield items[i]

    def wait(self, hook: Optional[Callable[[], None]] = None) -> None:
        """
        Barrier. Every worker must pass the same hook (or None).

        The hook runs single-threaded after the last arrival and before
        anyone is released, so it may touch shared state freely.
        """
        if hook is not None:
            self._hook = hook
        self._barrier.wait()

    def run(self, body: Callable[[int], None]) -> None:
        """
        Run body(worker_id) on every thread and join them.

        A single team runs inline on the calling thread. If any worker
        raises, the barrier is aborted and the first error is re-raised.
        """
        with _switch_interval(config.switch_interval()):
            if self.thread_count == 1:
                body(0)
                return

            threads = [
                threading.Thread(target=self._guard, args=(body, wid),
                                 name=f"optcolor-worker-{wid}", daemon=True)
                for wid in range(self.thread_count)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()

        if self._errors:
            raise self._errors[0]

    def _guard(self, body: Callable[[int], None], worker_id: int) -> None:
        try:
            body(worker_id)
        except threading.BrokenBarrierError:
            # Another worker failed first and aborted the barrier
            pass
        except BaseException as e:
            logger.error("worker %d failed: %s", worker_id, e)
            with self._errors_lock:
                self._errors.append(e)
            self._barrier.abort()
