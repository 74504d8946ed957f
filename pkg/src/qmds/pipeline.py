from typing import Any, Dict, List, Optional, Sequence, TypedDict

from langgraph.graph import END, StateGraph

from qmds.constructions.base_builder import Construction
from qmds.constructions.params import ConstructionParams, ParameterError, make_params
from qmds.constructions.router import ConstructionRouter
from qmds.gf import FieldError
from qmds.grs import BudgetExceededError, CodeError
from qmds.verify import VerificationReport, verify_code


class ConstructionState(TypedDict):
    """State for the construct and verify workflow."""
    # Requested parameters
    p: int
    e: int
    theorem: str
    s: int
    t: int
    h: int
    r: int
    d: int | None
    # Verification settings
    verify: bool
    levels: List[str]
    budget: int | None
    threads: int
    debug: bool
    # Results
    params: ConstructionParams | None
    construction: Construction | None
    report: VerificationReport | None
    error: str | None
    diagnostics: List[str] | None
    exit_code: int


def _debug_print(message: str, debug: bool = False):
    """Print debug message if debug mode is enabled."""
    if debug:
        print(f"pipeline     | {message}")


def validate_params(state: ConstructionState) -> ConstructionState:
    """Check every construction hypothesis before anything is built."""
    debug = state.get("debug", False)
    try:
        params = make_params(state["p"], state["e"], state["theorem"], state["s"], state["t"], state["h"], state["r"])
        d = params.check_dimension(state.get("d"))
    except ParameterError as e:
        _debug_print(f"❌ {len(e.violations)} hypothesis violation(s)", debug)
        return {**state, "error": str(e), "diagnostics": e.violations, "exit_code": 2}
    except FieldError as e:
        return {**state, "error": str(e), "diagnostics": [str(e)], "exit_code": 2}

    _debug_print(f"Validated {params.label()}: n={params.n}, d={d}", debug)
    return {**state, "params": params, "d": d}


def verify_construction(state: ConstructionState) -> ConstructionState:
    """Run the requested checks on the built code."""
    construction = state["construction"]
    try:
        report = verify_code(
            construction.code,
            levels=state.get("levels") or ["criterion"],
            provenance=construction.provenance,
            budget=state.get("budget"),
            threads=state.get("threads", 1),
        )
    except (BudgetExceededError, CodeError) as e:
        return {**state, "error": str(e), "diagnostics": [str(e)], "exit_code": 2}

    _debug_print(f"Verification {'passed' if report.passed else 'failed'}", state.get("debug", False))
    return {**state, "report": report, "exit_code": 0 if report.passed else 3}


def route_after_validate(state: ConstructionState) -> str:
    if state.get("error"):
        return END
    return "build"


def route_after_build(state: ConstructionState) -> str:
    if state.get("error") or not state.get("verify"):
        return END
    return "verify"


def create_construction_graph(debug: bool = False):
    """Create the validate -> build -> verify graph."""

    router = ConstructionRouter(debug=debug)

    workflow = StateGraph(ConstructionState)

    workflow.add_node("validate", validate_params)
    workflow.add_node("build", router.process)
    workflow.add_node("verify", verify_construction)

    workflow.add_conditional_edges("validate", route_after_validate, {"build": "build", END: END})
    workflow.add_conditional_edges("build", route_after_build, {"verify": "verify", END: END})
    workflow.add_edge("verify", END)

    workflow.set_entry_point("validate")

    return workflow.compile()


def run_construction(
    p: int,
    e: int,
    theorem: str,
    s: int,
    t: int,
    h: int,
    r: int,
    d: Optional[int] = None,
    verify: bool = True,
    levels: Sequence[str] = ("criterion",),
    budget: Optional[int] = None,
    threads: int = 1,
    debug: bool = False,
    graph=None,
) -> Dict[str, Any]:
    """Run one parameter tuple through the graph and return the final state."""
    graph = graph or create_construction_graph(debug=debug)
    initial_state = ConstructionState(
        p=p,
        e=e,
        theorem=theorem.lower(),
        s=s,
        t=t,
        h=h,
        r=r,
        d=d,
        verify=verify,
        levels=list(levels),
        budget=budget,
        threads=threads,
        debug=debug,
        params=None,
        construction=None,
        report=None,
        error=None,
        diagnostics=None,
        exit_code=0,
    )
    return graph.invoke(initial_state)
