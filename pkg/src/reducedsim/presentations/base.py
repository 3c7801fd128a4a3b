"""Base Presentation class - defines interface for rendering results as text."""
from abc import ABC, abstractmethod
from typing import List, Sequence


class Presentation(ABC):
    """
    Base class for presentations - handles formatting of pipeline results for
    terminals and report files.
    """

    @abstractmethod
    def render_text(self) -> str:
        """
        Render the full report.

        Returns:
            Fully formatted, newline-separated text
        """
        pass

    @staticmethod
    def table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
        """Fixed-width table: first column left-aligned, the rest right-aligned"""
        cells: List[List[str]] = [list(headers)] + [list(r) for r in rows]
        widths = [max(len(row[k]) for row in cells) for k in range(len(headers))]

        def line(row):
            first = row[0].ljust(widths[0])
            rest = [cell.rjust(widths[k + 1]) for k, cell in enumerate(row[1:])]
            return "  ".join([first] + rest)

        rule = "-" * len(line(cells[0]))
        return "\n".join([line(cells[0]), rule] + [line(r) for r in cells[1:]])
