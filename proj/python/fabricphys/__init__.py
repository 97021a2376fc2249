"""Fabric tag attributes to simulator-ready cloth physics."""

import os
from pathlib import Path

_packaged_data = Path(__file__).resolve().parent / "data"
if _packaged_data.is_dir() and "FABRICPHYS_DATA_DIR" not in os.environ:
    os.environ["FABRICPHYS_DATA_DIR"] = str(_packaged_data)

from ._core import *  # noqa: F401,F403  (re-export the compiled surface)
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
