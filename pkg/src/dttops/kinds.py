"""The 16 discrete trigonometric transform types and their spectral data.

Each DTT is the GFT of a uniform line graph variant, and each admits a
family of sparse commuting operators Z(1)..Z(N-1) sharing its eigenbasis.
The eigenvalue of Z(ell) attached to basis vector j is 2*cos(ell * theta_j),
where theta_j is a kind-specific base angle.  The corresponding graph
frequency (Laplacian eigenvalue) is 2 - 2*cos(theta_j), ascending in j.
"""

from __future__ import annotations

import enum

import numpy as np

_ROMAN = {"i": 1, "ii": 2, "iii": 3, "iv": 4, "v": 5, "vi": 6, "vii": 7, "viii": 8}


class DttKind(enum.Enum):
    """One of the eight DCT or eight DST types."""

    DCT1 = "dct1"
    DCT2 = "dct2"
    DCT3 = "dct3"
    DCT4 = "dct4"
    DCT5 = "dct5"
    DCT6 = "dct6"
    DCT7 = "dct7"
    DCT8 = "dct8"
    DST1 = "dst1"
    DST2 = "dst2"
    DST3 = "dst3"
    DST4 = "dst4"
    DST5 = "dst5"
    DST6 = "dst6"
    DST7 = "dst7"
    DST8 = "dst8"

    @property
    def is_dct(self) -> bool:
        return self.value.startswith("dct")

    @property
    def number(self) -> int:
        return int(self.value[3])

    @classmethod
    def from_name(cls, name: str) -> "DttKind":
        """Parse 'dct2', 'DCT2', 'dst-iv', 'DST-IV' and similar spellings."""
        s = name.strip().lower().replace("_", "-")
        if len(s) >= 4 and s[:3] in ("dct", "dst"):
            tail = s[3:].lstrip("-")
            if tail in _ROMAN:
                return cls(s[:3] + str(_ROMAN[tail]))
            if tail.isdigit() and 1 <= int(tail) <= 8:
                return cls(s[:3] + tail)
        raise ValueError(f"unknown DTT kind: {name!r}")


ALL_KINDS = tuple(DttKind)


def base_angles(kind: DttKind, n: int) -> np.ndarray:
    """Angles theta_j (j = 1..n) so that Z(ell) has eigenvalues 2cos(ell*theta_j).

    The (index offset, denominator) pairs below follow the defining sample
    grids of the 16 transforms.
    """
    if n < 2:
        raise ValueError(f"transform length must be >= 2, got {n}")
    j = np.arange(1, n + 1, dtype=np.float64)
    offset, denom = _ANGLE_PARAMS[kind]
    return (j - offset) * np.pi / (n + denom)


# (offset applied to j, additive adjustment to the N in the denominator)
_ANGLE_PARAMS = {
    DttKind.DCT1: (1.0, -1.0),
    DttKind.DCT2: (1.0, 0.0),
    DttKind.DCT3: (0.5, 0.0),
    DttKind.DCT4: (0.5, 0.0),
    DttKind.DCT5: (1.0, -0.5),
    DttKind.DCT6: (1.0, -0.5),
    DttKind.DCT7: (0.5, -0.5),
    DttKind.DCT8: (0.5, 0.5),
    DttKind.DST1: (0.0, 1.0),
    DttKind.DST2: (0.0, 0.0),
    DttKind.DST3: (0.5, 0.0),
    DttKind.DST4: (0.5, 0.0),
    DttKind.DST5: (0.0, 0.5),
    DttKind.DST6: (0.0, 0.5),
    DttKind.DST7: (0.5, 0.5),
    DttKind.DST8: (0.5, -0.5),
}
