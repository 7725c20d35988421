"""
Run manifests.

A manifest records what produced a set of output files: toolkit version, the
canonical configuration and its SHA-256 digest, the seed and generator
of stochastic runs, wall time and a SHA-256 per output. It is written after
every output so its presence marks a complete run.
"""

import hashlib
import json
from collections.abc import Mapping
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any

import structlog
from pydantic import BaseModel, ConfigDict

logger = structlog.get_logger(__name__)

DISTRIBUTION = "eo-transducer"


def toolkit_version() -> str:
    try:
        return version(DISTRIBUTION)
    except PackageNotFoundError:
        return "0+unknown"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_digest(config: Mapping[str, Any]) -> str:
    """SHA-256 of the canonical JSON form; equal configs give equal digests."""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fp:
        for chunk in iter(lambda: fp.read(1024 * 1024), b""):
            digest.update(chunk)
    return digest.hexdigest()


class RunManifest(BaseModel):
    """Provenance record written next to every figure or sweep output."""

    model_config = ConfigDict(frozen=True)

    toolkit_version: str
    command: str
    config: dict[str, Any]
    config_digest: str
    seed: int | None = None
    rng: str | None = None
    wall_time_s: float
    outputs: dict[str, str]

    @classmethod
    def for_outputs(
        cls,
        command: str,
        config: Mapping[str, Any],
        outputs: list[Path],
        wall_time_s: float,
        seed: int | None = None,
        rng: str | None = None,
    ) -> "RunManifest":
        return cls(
            toolkit_version=toolkit_version(),
            command=command,
            config=dict(config),
            config_digest=config_digest(config),
            seed=seed,
            rng=rng,
            wall_time_s=wall_time_s,
            outputs={path.name: file_sha256(path) for path in outputs},
        )

    def write(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        logger.info("manifest written", path=str(path), digest=self.config_digest)
        return path
