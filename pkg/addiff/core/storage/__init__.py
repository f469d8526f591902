"""
Storage of diagrams (.ad text) and reports (JSON).
"""

from .file_storage import ReportStorage, load_diagram, load_diagrams, safe_identifier, save_diagram

__all__ = ["ReportStorage", "load_diagram", "load_diagrams", "safe_identifier", "save_diagram"]
