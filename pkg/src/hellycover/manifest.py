"""Run manifests: enough to rerun a CLI invocation and check it reproduced."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import InputError


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: str | Path) -> str:
    return sha256_bytes(Path(path).read_bytes())


@dataclass
class RunManifest:
    subcommand: list[str]
    argv: list[str]
    params: dict
    seeds: dict
    budgets: dict
    version: str
    inputs: dict = field(default_factory=dict)  # path -> sha256
    outputs: dict = field(default_factory=dict)  # name -> sha256

    def run_digest(self) -> str:
        """Digest of everything that determines the outputs."""
        core = {k: v for k, v in asdict(self).items() if k != "outputs"}
        return sha256_bytes(json.dumps(core, sort_keys=True).encode())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["run_digest"] = self.run_digest()
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        try:
            return cls(
                list(d["subcommand"]), list(d["argv"]), dict(d["params"]), dict(d["seeds"]),
                dict(d["budgets"]), str(d["version"]), dict(d.get("inputs", {})), dict(d.get("outputs", {})),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed manifest: missing {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "RunManifest":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read manifest {path}: {exc}") from None
