from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from qmds.constructions.params import ConstructionParams
from qmds.grs import GrsCode, QuantumParams, code_to_dict, quantum_params


@dataclass(frozen=True)
class WitnessVectors:
    """Component vectors before merging, plus the lemma solution and scalars used."""

    a1: Tuple[int, ...]
    v1: Tuple[int, ...]
    a2: Tuple[int, ...]
    v2: Tuple[int, ...]
    lam: int
    u: Tuple[int, ...]
    e: Optional[int] = None


@dataclass(frozen=True)
class Construction:
    """A built code together with the data that produced it."""

    params: ConstructionParams
    d: int
    code: GrsCode
    witness: WitnessVectors
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def quantum(self) -> QuantumParams:
        return quantum_params(self.code.n, self.d, self.params.q)

    def to_dict(self) -> Dict[str, Any]:
        return code_to_dict(self.code, self.provenance)


class BaseBuilder:
    """Base class for all code builders."""

    def __init__(self, name: str, debug: bool = False):
        self.name = name
        self.debug = debug

    def _debug_print(self, message: str):
        if self.debug:
            # Pad the name to ensure | appears after 12 characters
            print(f"{self.name:<12} | {message}")

    def build(self, params: ConstructionParams, d: Optional[int] = None) -> Construction:
        raise NotImplementedError("Subclasses must implement this method")

    def should_handle(self, params: ConstructionParams) -> bool:
        raise NotImplementedError("Subclasses must implement this method")
