import json
import logging
from datetime import datetime, timezone
from typing import Dict, List, Optional

import pandas as pd

from core.errors import ConsistencyError, GuardExceededError, PreconditionError, SelfDualError

logger = logging.getLogger(__name__)

TOOL_NAME = "selfdual"
TOOL_VERSION = "0.1.0"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_DISAGREE = 4

TABLE_COLUMNS = [
    "q", "n", "r", "theta_order", "gcd_n_theta",
    "selfdual_cyclic_count", "Lambda_bar", "theta_cyclic_count",
]


def ok(data: Dict, exit_code: int = EXIT_OK) -> Dict:
    return {"success": True, "data": data, "exit_code": exit_code}


def failure(error: Exception) -> Dict:
    """Map a library exception to the command-layer result."""
    if isinstance(error, GuardExceededError):
        code = EXIT_GUARD
    elif isinstance(error, ConsistencyError):
        code = EXIT_INTERNAL
    elif isinstance(error, (SelfDualError, ValueError, NotImplementedError)):
        code = EXIT_USAGE
    else:
        raise error
    logger.debug("Command failed with exit %d: %s", code, error)
    return {"success": False, "error": str(error), "exit_code": code}


def meta_block(command: str) -> Dict:
    return {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _frame(data: Dict) -> pd.DataFrame:
    if "rows" in data:
        return pd.DataFrame(data["rows"], columns=data.get("columns") or None)
    return pd.json_normalize(data, sep=".")


def render(result: Dict, fmt: str = "json", command: Optional[str] = None, meta: bool = True) -> str:
    """
    JSON is the canonical form; csv and text are projections of the data
    block through pandas. Failures render as JSON in every format.
    """
    if not result["success"]:
        return json.dumps({"success": False, "error": result["error"]}, indent=2, sort_keys=True)

    data = result["data"]
    if fmt == "json":
        payload = {"success": True, "data": data}
        if meta:
            payload["meta"] = meta_block(command or "")
        return json.dumps(payload, indent=2, sort_keys=True, default=str)

    frame = _frame(data)
    if fmt == "csv":
        return frame.to_csv(index=False).rstrip("\n")
    if fmt == "text":
        if frame.empty:
            return "  ".join(str(c) for c in frame.columns)
        return frame.to_string(index=False)
    raise PreconditionError(f"unknown output format {fmt!r}")


def table_data(rows: List[Dict]) -> Dict:
    return {"columns": TABLE_COLUMNS, "rows": [[row[c] for c in TABLE_COLUMNS] for row in rows]}
