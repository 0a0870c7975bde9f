"""
Canonical JSON artifacts: byte-stable dumps, digests and schema-checked loads
"""

from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np
import orjson
import xxhash

from .errors import SchemaViolation

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def _default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.astype(np.int64).tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"Type is not JSON serializable: {type(obj).__name__}")


def dumps(payload: Any) -> bytes:
    """Serialize with sorted keys and a trailing newline; identical inputs give identical bytes"""
    return orjson.dumps(payload, default=_default, option=JSON_OPTIONS)


def loads(data: Union[bytes, str]) -> Any:
    try:
        return orjson.loads(data)
    except orjson.JSONDecodeError as e:
        raise SchemaViolation(f"Malformed JSON: {str(e)}")


def digest(payload: Any) -> str:
    """xxhash64 of the canonical bytes"""
    return xxhash.xxh64(dumps(payload)).hexdigest()


def write_artifact(path: Path, payload: Any) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    data = dumps(payload)
    path.write_bytes(data)
    return xxhash.xxh64(data).hexdigest()


def read_artifact(path: Path) -> Any:
    if not path.exists():
        raise SchemaViolation(f"Input file not found: {path}")
    return loads(path.read_bytes())


# Schema helpers -----------------------------------------------------------

def require_keys(data: Mapping[str, Any], keys: Iterable[str], what: str) -> None:
    if not isinstance(data, Mapping):
        raise SchemaViolation(f"{what} must be a JSON object")
    missing = [key for key in keys if key not in data]
    if missing:
        raise SchemaViolation(f"{what} is missing keys: {', '.join(missing)}")


def parse_bidegree(key: str) -> Tuple[int, int]:
    """Parse an "n,q" key"""
    try:
        first, second = key.split(",")
        return int(first), int(second)
    except ValueError:
        raise SchemaViolation(f"Bad bidegree key {key!r}; expected 'n,q'")


def bidegree_key(n: int, q: int) -> str:
    return f"{n},{q}"


def parse_matrix(raw: Any, rows: int, cols: int, what: str) -> np.ndarray:
    """Row-major nested list to an int64 array of the given shape"""
    if rows == 0 or cols == 0:
        if raw not in ([], None) and np.asarray(raw).size != 0:
            raise SchemaViolation(f"{what}: expected an empty matrix")
        return np.zeros((rows, cols), dtype=np.int64)
    try:
        matrix = np.asarray(raw, dtype=np.int64)
    except (TypeError, ValueError):
        raise SchemaViolation(f"{what}: matrix entries must be integers")
    if matrix.shape != (rows, cols):
        raise SchemaViolation(f"{what}: expected shape {(rows, cols)}, got {matrix.shape}")
    return matrix


def tsv_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(value) for value in row))
    return "\n".join(lines) + "\n"


def with_digest(payload: Dict[str, Any]) -> Dict[str, Any]:
    """Attach the digest of the mathematical payload under "digest" """
    return {**payload, "digest": digest(payload)}
