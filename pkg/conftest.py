import os
import tempfile

# La base de datos de pruebas vive en un archivo temporal, nunca en polycond.db
_DB_DIR = tempfile.mkdtemp(prefix="polycond-test-")
os.environ["DATABASE_URL"] = f"sqlite:///{os.path.join(_DB_DIR, 'runs.db')}"
os.environ.setdefault("POLYCOND_PREWARM", "false")
os.environ.setdefault("POLYCOND_SAMPLES", "201")
os.environ.setdefault("POLYCOND_GRID", "64x64")

import mpmath  # noqa: E402
import pytest  # noqa: E402

from scalar import DEFAULT_DIGITS  # noqa: E402


@pytest.fixture(autouse=True)
def restore_precision():
    """Cada prueba arranca con la precisión por defecto."""
    mpmath.mp.dps = DEFAULT_DIGITS
    yield
    mpmath.mp.dps = DEFAULT_DIGITS
