import pathlib
import sys

# When the package is not installed, fall back to the CMake build tree.
try:
    import mapcones  # noqa: F401
except ImportError:
    build_pkg = pathlib.Path(__file__).resolve().parents[2] / "build" / "python"
    if build_pkg.is_dir():
        sys.path.insert(0, str(build_pkg))
