"""Byte-level builders for the solver's file formats.

Built by hand so the tests pin the format contract itself, not any
particular writer implementation.
"""

import struct

import numpy as np

BASE_COLUMNS = ("tau", "mean", "E", "calE", "h1", "h2", "h3", "linf")


def diagnostics_text(tau, E, model="uni1", version=1, columns=BASE_COLUMNS):
    lines = [f"# hydroelastic diagnostics v{version} model={model}", ",".join(columns)]
    for t, e in zip(tau, E):
        row = {"tau": t, "mean": 0.0, "E": e, "calE": e + 1.0}
        lines.append(",".join("%.17g" % row.get(c, 1.0) for c in columns))
    return "\n".join(lines) + "\n"


def dispersion_text(ks, version=1):
    lines = [
        f"# hydroelastic dispersion v{version}",
        "k,re_r_plus,im_r_plus,re_r_minus,im_r_minus,a,b,alpha,gamma",
    ]
    for k in ks:
        lines.append(",".join("%.17g" % v for v in (k, -k, 2 * k, -k, -2 * k, 0.4, 0.1, -0.1, 0.4)))
    return "\n".join(lines) + "\n"


def hierarchy_text(eps, err, version=1):
    lines = [f"# hydroelastic hierarchy v{version}", "epsilon,error"]
    for e, r in zip(eps, err):
        lines.append("%.17g,%.17g" % (e, r))
    return "\n".join(lines) + "\n"


def snapshot_bytes(coeffs, dim=None, n=None, magic=b"HESNAP1\x00", tag=0x01020304):
    arr = np.ascontiguousarray(coeffs, dtype="<c16")
    dim = arr.ndim if dim is None else dim
    n = arr.shape[0] if n is None else n
    return magic + struct.pack("<III", tag, dim, n) + arr.tobytes()


def cosine_coeffs(n, dim, mode=1, amplitude=1.0):
    c = np.zeros((n,) * dim, dtype=complex)
    if dim == 1:
        c[mode] = c[-mode] = amplitude / 2.0
    else:
        c[mode, 0] = c[-mode, 0] = amplitude / 2.0
    return c
