"""
JSON scene files read by the run command.

    {"dim": 2, "points": [[x, y], ...], "centers": [[x, y], ...],
     "radius": 1.0, "metadata": {"name": "..."}}

Numbers are written with 17 significant digits so a scene survives a
write/read cycle bit for bit.
"""
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ballpoly.exceptions import SceneError

try:
    from ballpoly_config import REPORTS
except ImportError:
    REPORTS = {'float_digits': 17}

logger = logging.getLogger(__name__)

SCENE_FIELDS = ('dim', 'points', 'centers', 'radius', 'metadata')


def format_float(x: float) -> str:
    if not math.isfinite(x):
        # JSON has no inf/nan
        return 'null'
    text = format(x, f".{REPORTS.get('float_digits', 17)}g")
    if 'e' not in text and '.' not in text:
        text += '.0'
    return text


def to_jsonable(value: Any) -> Any:
    """Plain Python structure for numpy values, enums and objects with to_dict()."""
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if hasattr(value, 'value') and isinstance(getattr(value, 'value'), str):
        return value.value
    return value


def dumps(value: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats at full precision."""
    value = to_jsonable(value)
    pad, inner = ' ' * (indent * _level), ' ' * (indent * (_level + 1))
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (int, str)):
        return json.dumps(value)
    if isinstance(value, list):
        if not value:
            return '[]'
        if all(not isinstance(v, (list, dict)) for v in value):
            return '[' + ', '.join(dumps(v, indent, _level + 1) for v in value) + ']'
        return '[\n' + ',\n'.join(inner + dumps(v, indent, _level + 1) for v in value) + '\n' + pad + ']'
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [f"{inner}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in value.items()]
        return '{\n' + ',\n'.join(items) + '\n' + pad + '}'
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass(eq=False)
class Scene:
    dim: int
    points: np.ndarray
    centers: np.ndarray
    radius: float = 1.0
    metadata: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, self.dim)
        self.centers = np.asarray(self.centers, dtype=float).reshape(-1, self.dim)
        if not self.radius > 0:
            raise SceneError("radius must be positive", field='radius')

    def to_dict(self) -> dict:
        return {
            'dim': self.dim,
            'points': self.points.tolist(),
            'centers': self.centers.tolist(),
            'radius': float(self.radius),
            'metadata': dict(self.metadata),
        }

    def dumps(self) -> str:
        return dumps(self.to_dict()) + '\n'

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps())


def _line_of(text: str, key: str) -> Optional[int]:
    needle = json.dumps(key)
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def _coordinates(data: dict, key: str, dim: int, text: str) -> List[List[float]]:
    rows = data.get(key, [])
    if not isinstance(rows, list):
        raise SceneError("expected a list of coordinate arrays", field=key, line=_line_of(text, key))
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise SceneError(f"entry {i} must be an array of {dim} numbers", field=f"{key}[{i}]",
                             line=_line_of(text, key))
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row):
            raise SceneError(f"entry {i} has a non-numeric coordinate", field=f"{key}[{i}]",
                             line=_line_of(text, key))
        out.append([float(x) for x in row])
    return out


def loads(text: str) -> Scene:
    """
    Parse and validate scene JSON.

    Raises:
        SceneError: malformed JSON or a field violating the schema; the
            message names the field and, where known, the line.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise SceneError("top level must be an object", line=1)
    unknown = sorted(set(data) - set(SCENE_FIELDS))
    if unknown:
        raise SceneError(f"unknown field {unknown[0]!r}", field=unknown[0], line=_line_of(text, unknown[0]))
    dim = data.get('dim')
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SceneError("dim must be a positive integer", field='dim', line=_line_of(text, 'dim'))
    points = _coordinates(data, 'points', dim, text)
    centers = _coordinates(data, 'centers', dim, text)
    radius = data.get('radius', 1.0)
    if not isinstance(radius, (int, float)) or isinstance(radius, bool) or not radius > 0:
        raise SceneError("radius must be a positive number", field='radius', line=_line_of(text, 'radius'))
    metadata = data.get('metadata', {})
    if not isinstance(metadata, dict) or not all(isinstance(v, str) for v in metadata.values()):
        raise SceneError("metadata must map names to strings", field='metadata', line=_line_of(text, 'metadata'))
    return Scene(dim, np.array(points).reshape(-1, dim), np.array(centers).reshape(-1, dim), float(radius), metadata)


def load(path: Union[str, Path]) -> Scene:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SceneError(f"cannot read scene {path}: {exc.strerror}") from exc
    scene = loads(text)
    logger.debug("loaded scene %s: dim %d, %d points, %d centers", path, scene.dim,
                 scene.points.shape[0], scene.centers.shape[0])
    return scene
