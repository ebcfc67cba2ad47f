"""Dehn filling bookkeeping on 3-torus cusps.

A cusp with trivial monodromy has section the 3-torus obtained from a
2 x 2 x h box; slopes (p, q, r) are written in the basis of its sides, so the
slope length is sqrt((2p)^2 + (2q)^2 + (hr)^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cubulation import Cubulation
from .cycles import InvariantReport, invariant_report

# Volume of the regular ideal hyperbolic 4-simplex.  Obtained by integrating
# the hyperbolic volume form over the Klein-model simplex (scripts/simplex_volume.py,
# quadrature error below 1e-10); agrees with the tabulated 0.26889.
V4_DEFAULT = 0.2688956603789709


@dataclass(frozen=True)
class FillingConfig:
    v4: float = V4_DEFAULT
    threshold: str = "weak"  # "weak": l >= 2 pi, "strict": l > 2 pi

    def __post_init__(self):
        if self.threshold not in ("weak", "strict"):
            raise ValueError(f"threshold must be weak or strict, not {self.threshold!r}")
        if not self.v4 > 0:
            raise ValueError("v4 must be positive")


class FillingError(ValueError):
    pass


@dataclass(frozen=True)
class FillingSlope:
    p: int
    q: int
    r: int
    h: int  # the cusp section is the 3-torus with sides (2, 2, h)
    cusp: int = 0

    def __post_init__(self):
        if self.h < 1:
            raise FillingError("cusp length h must be positive")
        if math.gcd(self.p, self.q, self.r) != 1:
            raise FillingError(f"slope ({self.p},{self.q},{self.r}) is not primitive")

    @classmethod
    def parse(cls, text: str, h: int, cusp: int = 0) -> "FillingSlope":
        try:
            p, q, r = (int(x) for x in text.split(","))
        except ValueError:
            raise FillingError(f"bad slope {text!r}, expected p,q,r") from None
        return cls(p, q, r, h, cusp)


def slope_length_squared(s: FillingSlope) -> int:
    return 4 * s.p ** 2 + 4 * s.q ** 2 + s.h ** 2 * s.r ** 2


def slope_length(s: FillingSlope) -> float:
    return math.sqrt(slope_length_squared(s))


def passes_2pi(s: FillingSlope, threshold: str = "weak") -> bool:
    # l^2 is an integer and 4 pi^2 is not, so the two thresholds agree on every slope
    ell2 = slope_length_squared(s)
    bound = 4 * math.pi ** 2
    return ell2 >= bound if threshold == "weak" else ell2 > bound


@dataclass(frozen=True)
class FilledReport:
    lengths: tuple[float, ...]
    lengths_squared: tuple[int, ...]
    passes: tuple[bool, ...]
    all_pass_2pi: bool
    n: int
    chi: int
    sigma: int
    volume_coefficient: Fraction  # Vol(M) / pi^2 of the unfilled manifold
    v4: float
    threshold: str = field(default="weak")

    @property
    def gromov_norm_bound(self) -> float:
        return float(self.volume_coefficient) * math.pi ** 2 / self.v4


def filled_invariants(c: Cubulation, config: FillingConfig = FillingConfig()) -> tuple[int, int, float]:
    """(chi, sigma, Gromov norm bound) of any filling of a cubulation with only 3-torus cusps."""
    rep = invariant_report(c)
    _require_tori(rep)
    chi, sigma = rep.chi, 0
    return chi, sigma, float(rep.volume_coefficient) * math.pi ** 2 / config.v4


def _require_tori(rep: InvariantReport) -> None:
    bad = [i for i, cu in enumerate(rep.cusps) if cu.monodromy_class != "I"]
    if bad:
        raise FillingError(f"cusps {bad} are not 3-tori; filling slopes are only defined for trivial monodromy")


def check_2pi(c: Cubulation, slopes, config: FillingConfig = FillingConfig()) -> FilledReport:
    """Evaluate the 2 pi criterion for one slope per cusp (cusps in trace order).

    ``slopes`` may hold FillingSlope objects or (p, q, r) triples; triples
    take h from the cusp they are attached to.
    """
    rep = invariant_report(c)
    _require_tori(rep)
    slopes = list(slopes)
    if len(slopes) != rep.k:
        raise FillingError(f"expected {rep.k} slopes, one per cusp, got {len(slopes)}")
    built = []
    for i, (s, cu) in enumerate(zip(slopes, rep.cusps)):
        if not isinstance(s, FillingSlope):
            s = FillingSlope(*s, h=cu.h, cusp=i)
        elif s.h != cu.h:
            raise FillingError(f"slope for cusp {i} assumes h={s.h}, cusp has h={cu.h}")
        built.append(s)
    return check_slopes(built, rep, config)


def check_slopes(slopes, rep: InvariantReport, config: FillingConfig = FillingConfig()) -> FilledReport:
    ell2 = tuple(slope_length_squared(s) for s in slopes)
    passes = tuple(passes_2pi(s, config.threshold) for s in slopes)
    return FilledReport(
        lengths=tuple(math.sqrt(x) for x in ell2),
        lengths_squared=ell2,
        passes=passes,
        all_pass_2pi=all(passes),
        n=rep.n,
        chi=rep.chi,
        sigma=0,
        volume_coefficient=rep.volume_coefficient,
        v4=config.v4,
        threshold=config.threshold,
    )


def parse_slopes(text: str) -> list[tuple[int, int, int]]:
    out = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        try:
            p, q, r = (int(x) for x in item.split(","))
        except ValueError:
            raise FillingError(f"bad slope {item!r}, expected p,q,r") from None
        out.append((p, q, r))
    return out
