from reducedsim.presentations.base import Presentation
from reducedsim.presentations.report import BenchmarkPresentation, SummaryPresentation

__all__ = ["Presentation", "BenchmarkPresentation", "SummaryPresentation"]
