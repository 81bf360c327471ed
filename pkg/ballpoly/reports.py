"""
JSON reports written by the run command.

A report records the command, its inputs, the computed results and a list
of named assertions; the command exits non-zero when any assertion fails.
"""
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union

from ballpoly.scene import dumps

logger = logging.getLogger(__name__)


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    assertions: List[Dict[str, Any]] = field(default_factory=list)

    def check(self, name: str, holds: bool, details: Any = None) -> bool:
        holds = bool(holds)
        self.assertions.append({'name': name, 'holds': holds, 'details': details})
        if not holds:
            logger.warning("%s: assertion %s failed: %s", self.command, name, details)
        return holds

    @property
    def failed(self) -> List[str]:
        return [a['name'] for a in self.assertions if not a['holds']]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {'command': self.command, 'inputs': self.inputs, 'results': self.results,
                'assertions': self.assertions}

    def dumps(self) -> str:
        return dumps(self.to_dict()) + '\n'


def write_atomic(path: Union[str, Path], text: str) -> Path:
    """Write text through a temporary file in the target directory and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix='.tmp')
    try:
        with os.fdopen(fd, 'w') as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("wrote %s", path)
    return path
