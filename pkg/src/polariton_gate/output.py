"""Deterministic artifact writers and the run manifest.

Data files (CSV, JSON reports) carry numbers formatted to 12 significant
digits in scientific notation and no timestamps, so identical inputs give
byte-identical outputs. The manifest records what a run produced, with
checksums; it is written last and is the only file allowed to carry
wall-clock information.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

FLOAT_FORMAT = "%.11e"  # 12 significant digits
MANIFEST_NAME = "manifest.json"


def format_float(x: float) -> str:
    return FLOAT_FORMAT % x


def round_floats(obj):
    """Recursively snap floats to the 12-significant-digit grid."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(format_float(obj))
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(round_floats(obj), indent=2, sort_keys=True) + "\n"


def write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    """Write float columns with fixed formatting and a plain header row."""
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        np.savetxt(fh, data, fmt=FLOAT_FORMAT, delimiter=",")


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunWriter:
    """Collects artifacts of one CLI run and writes the manifest last."""

    out_dir: Path
    command: str
    tool_version: str
    resolved_config: dict
    flags: dict = field(default_factory=dict)
    artifacts: list[Path] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.out_dir = Path(self.out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def _register(self, path: Path) -> Path:
        if path in self.artifacts:
            raise RuntimeError(f"artifact {path} emitted twice")
        self.artifacts.append(path)
        return path

    def write_json(self, name: str, obj) -> Path:
        path = self.out_dir / name
        path.write_text(dump_json(obj), encoding="utf-8")
        return self._register(path)

    def write_csv(self, name: str, header: list[str], columns) -> Path:
        path = self.out_dir / name
        write_csv(path, header, columns)
        return self._register(path)

    def finish(self, duration_seconds: float) -> Path:
        manifest = {
            "command": self.command,
            "tool_version": self.tool_version,
            "out_dir": str(self.out_dir),
            "resolved_config": round_floats(self.resolved_config),
            "flags": round_floats(self.flags),
            "artifacts": [
                {
                    "path": p.name,
                    "sha256": sha256_of(p),
                    "bytes": p.stat().st_size,
                }
                for p in self.artifacts
            ],
            "duration_seconds": duration_seconds,
        }
        path = self.out_dir / MANIFEST_NAME
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path


def verify_manifest(out_dir: Path) -> list[str]:
    """Check every artifact listed in a manifest; return problem strings."""
    out_dir = Path(out_dir)
    manifest_path = out_dir / MANIFEST_NAME
    problems: list[str] = []
    if not manifest_path.exists():
        return [f"missing manifest: {manifest_path}"]
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    for entry in manifest.get("artifacts", []):
        path = out_dir / entry["path"]
        if not path.exists():
            problems.append(f"missing artifact: {entry['path']}")
            continue
        if path.stat().st_size != entry["bytes"]:
            problems.append(f"size mismatch: {entry['path']}")
            continue
        if sha256_of(path) != entry["sha256"]:
            problems.append(f"checksum mismatch: {entry['path']}")
    return problems
