"""
Run Metadata DTO

Contents of the `<results>.meta.json` sidecar. No timestamps, so reruns of
the same config produce identical sidecars.
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List


@dataclass(frozen=True)
class RunMetadata:
    command: str
    experiment: str
    config_hash: str
    rng: str
    software_version: str
    rows: int
    failed_rows: int
    algorithms: List[str] = field(default_factory=list)
    lambdas: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
