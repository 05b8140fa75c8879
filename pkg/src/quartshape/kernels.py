"""Hot loops: compiled when the extension is built, pure Python otherwise."""
from __future__ import annotations

import os

try:
    if os.environ.get("QUARTSHAPE_PURE") == "1":
        raise ImportError("pure backend requested")
    from ._kernel import canonical as descent_canonical  # noqa: F401
    from ._kernel import disc_of, is_locally_minimal, scan_ball, sp_min  # noqa: F401
    BACKEND = "compiled"
except ImportError:
    from ._pure import canonical as descent_canonical  # noqa: F401
    from ._pure import disc_of, is_locally_minimal, scan_ball, sp_min  # noqa: F401
    BACKEND = "python"
