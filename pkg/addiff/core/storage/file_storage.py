"""
File storage for diagrams and reports.

Diagrams are kept in the .ad text format; reports are JSON files carrying a
"_metadata" block, one file per report plus an index.json per report type.
"""

import json
import logging
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Type, TypeVar, Union

from pydantic import BaseModel

from ..models.diagram import ActivityDiagram
from ..text.parser import parse_or_raise
from ..text.serializer import serialize

logger = logging.getLogger(__name__)

ReportT = TypeVar("ReportT", bound=BaseModel)
PathLike = Union[str, Path]

_UNSAFE = '/\\ :?*<>|"\''


def safe_identifier(identifier: str) -> str:
    """Turn an identifier into a file name stem"""
    return "".join("_" if ch in _UNSAFE else ch for ch in identifier)


def load_diagram(path: PathLike) -> ActivityDiagram:
    """
    Read and parse a .ad file

    Raises:
        AdParseError: If the text does not parse; carries the file name
        OSError: If the file cannot be read
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    ad = parse_or_raise(text, source=str(path))
    logger.debug(f"Loaded diagram {ad.name} from {path}")
    return ad


def load_diagrams(paths: Sequence[PathLike]) -> List[ActivityDiagram]:
    return [load_diagram(path) for path in paths]


def save_diagram(ad: ActivityDiagram, path: PathLike) -> str:
    """
    Write a diagram in the .ad format

    Args:
        ad: Diagram to write
        path: Target file, or a directory receiving <name>.ad

    Returns:
        Path of the written file
    """
    path = Path(path)
    if path.is_dir() or not path.suffix:
        path.mkdir(parents=True, exist_ok=True)
        path = path / f"{safe_identifier(ad.name)}.ad"
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(ad), encoding="utf-8")
    logger.debug(f"Saved diagram {ad.name} to {path}")
    return str(path)


class ReportStorage:
    """Thread-safe JSON storage of report models below one base directory"""

    def __init__(self, base_dir: PathLike = "reports"):
        """
        Initialize report storage

        Args:
            base_dir: Base directory for report files
        """
        self.base_dir = Path(base_dir)
        self.lock = threading.Lock()

    def save_report(self, report: BaseModel, report_type: str, identifier: str) -> str:
        """
        Save one report as <base_dir>/<report_type>/<identifier>.json

        Returns:
            Path to the saved file
        """
        dir_path = self.base_dir / report_type
        filepath = dir_path / f"{safe_identifier(identifier)}.json"
        record = {
            **report.model_dump(mode="json"),
            "_metadata": {
                "report_type": report_type,
                "identifier": identifier,
                "saved_at": datetime.now(timezone.utc).isoformat(),
                "file_path": str(filepath),
            },
        }
        with self.lock:
            dir_path.mkdir(parents=True, exist_ok=True)
            with open(filepath, "w", encoding="utf-8") as f:
                json.dump(record, f, indent=2, ensure_ascii=False)
        logger.debug(f"Saved {report_type} report to {filepath}")
        return str(filepath)

    def load_report(self, model: Type[ReportT], report_type: str, identifier: str) -> Optional[ReportT]:
        """
        Load a report saved by save_report

        Returns:
            The validated model, or None if the file does not exist
        """
        filepath = self.base_dir / report_type / f"{safe_identifier(identifier)}.json"
        if not filepath.exists():
            return None
        with open(filepath, encoding="utf-8") as f:
            record: Dict[str, Any] = json.load(f)
        record.pop("_metadata", None)
        return model.model_validate(record)

    def save_index(self, entries: Sequence[Dict[str, Any]], report_type: str) -> Optional[str]:
        """
        Save an index.json summarizing the reports of one type

        Args:
            entries: One summary dictionary per report
            report_type: Type of the reports

        Returns:
            Path to the index, None if there was nothing to index
        """
        if not entries:
            return None
        dir_path = self.base_dir / report_type
        index = {
            "report_type": report_type,
            "total_records": len(entries),
            "created_at": datetime.now(timezone.utc).isoformat(),
            "records": list(entries),
        }
        index_path = dir_path / "index.json"
        with self.lock:
            dir_path.mkdir(parents=True, exist_ok=True)
            with open(index_path, "w", encoding="utf-8") as f:
                json.dump(index, f, indent=2, ensure_ascii=False)
        logger.info(f"Saved index for {len(entries)} {report_type} reports to {index_path}")
        return str(index_path)
