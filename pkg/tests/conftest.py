import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hpikit import _kernels


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(params=_kernels.available_backends())
def kernel_backend(request):
    """Run the decorated test under every available kernel backend."""
    previous = _kernels.backend_name
    _kernels.use_backend(request.param)
    yield request.param
    _kernels.use_backend(previous)


def write_sample_csv(path, rows, header="id,lon,lat,Fe,Mn,Ni,Pb,Cd,As"):
    lines = [header] + [",".join(str(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
