"""WebConfig: a catalog key, its numeric parameters and a domain disk, stored as JSON."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from .errors import InvalidConfig
from .geom import Domain


@dataclass(frozen=True)
class WebConfig:
    web: str
    params: dict = field(default_factory=dict)
    domain: Domain = field(default_factory=lambda: Domain((0.0, 0.0), 1.0))

    def to_dict(self) -> dict:
        return {"web": self.web, "params": copy.deepcopy(self.params), "domain": self.domain.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "WebConfig":
        try:
            return cls(str(d["web"]), copy.deepcopy(dict(d.get("params", {}))), Domain.from_dict(d["domain"]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InvalidConfig(f"malformed web config: {exc}") from exc

    def dumps(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "WebConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidConfig("config must be a JSON object")
        return cls.from_dict(data)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "WebConfig":
        return cls.loads(Path(path).read_text(encoding="utf-8"))

    def with_params(self, **updates: Any) -> "WebConfig":
        params = copy.deepcopy(self.params)
        params.update(updates)
        return WebConfig(self.web, params, self.domain)


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, shortest round-trip floats."""
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"
