"""
Helper utilities shared by the sweep and design-search code.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

from qpmkit.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ParallelEvaluator:
    """Evaluates independent grid points on a thread pool."""

    def __init__(self, max_workers: Optional[int] = None):
        """
        Initialize parallel evaluator.

        Args:
            max_workers: Maximum number of worker threads (default settings.MAX_WORKERS);
                1 evaluates serially in the calling thread
        """
        self.max_workers = max(1, int(max_workers or settings.MAX_WORKERS))

    def map(
        self,
        func: Callable[[T], R],
        points: Sequence[T],
        progress_callback: Optional[Callable[[int, int, T], None]] = None,
    ) -> List[R]:
        """
        Evaluate a function on every point.

        Args:
            func: Pure function of one point
            points: Grid points
            progress_callback: Optional callback for progress updates (completed, total, point)

        Returns:
            Results in grid order, independent of completion order

        Raises:
            The first exception raised by func, in grid order
        """
        total = len(points)
        results: List[Optional[R]] = [None] * total
        errors: List[Optional[BaseException]] = [None] * total

        if self.max_workers == 1 or total <= 1:
            for index, point in enumerate(points):
                results[index] = func(point)
                if progress_callback:
                    progress_callback(index + 1, total, point)
            return results

        completed = 0
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_index = {
                executor.submit(func, point): index for index, point in enumerate(points)
            }

            for future in as_completed(future_to_index):
                index = future_to_index[future]
                try:
                    results[index] = future.result()
                except Exception as e:
                    errors[index] = e
                completed += 1
                if progress_callback:
                    progress_callback(completed, total, points[index])

        for error in errors:
            if error is not None:
                raise error

        logger.debug("Evaluated %d points on %d workers", total, self.max_workers)
        return results
