"""Utility helpers for vects1."""

from .reports import read_csv, read_json, write_csv, write_json, write_records
from .serialization import ensure_serializable

__all__ = [
    "ensure_serializable",
    "read_csv",
    "read_json",
    "write_csv",
    "write_json",
    "write_records",
]
