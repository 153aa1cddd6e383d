"""See-saw backend selection.

The compiled kernel is used when its extension imported cleanly; setting
QW_PURE_PYTHON=1 forces the numpy reference. BACKEND names the active choice.
"""

import os

from . import _seesaw as _py

BACKEND = "python"
seesaw_run = _py.seesaw_run

if os.environ.get("QW_PURE_PYTHON", "") != "1":
    try:
        from . import _seesaw_ext as _ext
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        seesaw_run = _ext.seesaw_run
