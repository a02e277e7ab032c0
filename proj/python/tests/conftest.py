import os
import sys

# In-tree runs (ctest) point at the build directory; otherwise the installed
# package is used.
_module_dir = os.environ.get("BIUNITARY_MODULE_DIR")
if _module_dir:
    sys.path.insert(0, _module_dir)
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
