from typing import Any, Dict, List, Optional

from qmds.constructions.base_builder import BaseBuilder, Construction
from qmds.constructions.builders import T4Builder, T5Builder, T6Builder
from qmds.constructions.cosets import ConstructionError
from qmds.constructions.lemmas import LemmaSolveError
from qmds.constructions.params import ConstructionParams, ParameterError


class ConstructionRouter(BaseBuilder):
    """Router that dispatches a parameter tuple to the builder for its theorem."""

    def __init__(self, debug: bool = False):
        super().__init__("router", debug)
        self.builders: List[BaseBuilder] = [T4Builder(debug), T5Builder(debug), T6Builder(debug)]

    def route(self, params: ConstructionParams) -> Optional[BaseBuilder]:
        for builder in self.builders:
            if builder.should_handle(params):
                self._debug_print(f"Routing {params.label()} to {builder.name}")
                return builder
        self._debug_print(f"No builder for theorem {params.theorem!r}")
        return None

    def should_handle(self, params: ConstructionParams) -> bool:
        return self.route(params) is not None

    def build(self, params: ConstructionParams, d: Optional[int] = None) -> Construction:
        builder = self.route(params)
        if builder is None:
            raise ConstructionError(f"no builder handles theorem {params.theorem!r}")
        return builder.build(params, d)

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """Build the code for ``state["params"]`` at dimension ``state.get("d")``."""
        params = state.get("params")
        if params is None:
            return {**state, "error": "no parameters to build", "exit_code": 2}
        try:
            construction = self.build(params, state.get("d"))
        except ParameterError as e:
            return {**state, "error": str(e), "diagnostics": e.violations, "exit_code": 2}
        except (ConstructionError, LemmaSolveError) as e:
            self._debug_print(f"❌ Internal construction failure: {e}")
            return {**state, "error": str(e), "diagnostics": [str(e)], "exit_code": 1}

        self._debug_print(f"Built {construction.quantum} from {params.label()}")
        return {**state, "construction": construction, "d": construction.d}


def construct(params: ConstructionParams, d: Optional[int] = None, debug: bool = False) -> Construction:
    """Build the code for ``params`` at dimension ``d`` (default d_max)."""
    return ConstructionRouter(debug=debug).build(params, d)
