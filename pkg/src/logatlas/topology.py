"""Closed-form classification of branch manifolds.

Every branch of the logarithm set is diffeomorphic to a product of
homogeneous spaces of four kinds: quotients of GL+ by a general-linear
block subgroup (GammaHat), of complex GL by complex blocks (ThetaHat),
and their compact counterparts SO/(SO x unitary blocks) (Gamma) and
U/unitary blocks (Theta). This module evaluates their dimensions,
component counts and homotopy ranks with exact integer arithmetic; no
floating point enters any formula here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branches import (
    MultiIndexSet,
    SkewMultiIndexSet,
    check_admissible,
    check_skew_admissible,
)
from .errors import InvalidBranchError, InvalidInputError
from .spectra import OrthoSpectralData, SpectralData

GAMMA_KINDS = ("GammaHat", "Gamma")
THETA_KINDS = ("ThetaHat", "Theta")

SINGLETON = "singleton"
COUNTABLY_INFINITE = "countably_infinite"
UNCOUNTABLE = "uncountable"


def _delta(a, b) -> int:
    return 1 if a == b else 0


@dataclass(frozen=True)
class HomSpace:
    """A homogeneous-space factor; ``zeta`` is the order of the untouched
    real block (Gamma kinds only) and ``nu`` the complex block orders."""

    kind: str
    zeta: int = 0
    nu: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in GAMMA_KINDS + THETA_KINDS:
            raise InvalidInputError(f"unknown homogeneous space kind {self.kind!r}")
        if self.zeta < 0 or any(x < 1 for x in self.nu):
            raise InvalidInputError("block orders must be positive (zeta may be 0)")
        if self.kind in THETA_KINDS and not self.nu:
            raise InvalidInputError(f"{self.kind} requires at least one block")
        if self.kind in THETA_KINDS and self.zeta:
            raise InvalidInputError(f"{self.kind} carries no real block")

    @property
    def nu_total(self) -> int:
        return sum(self.nu)


@dataclass(frozen=True)
class TopologyReport:
    """Structure of one branch: factor spaces, dimension, component count,
    per-component homotopy data, and the cardinality class of the ambient
    logarithm set."""

    factors: tuple[HomSpace, ...]
    dimension: int
    components: int
    simply_connected: bool
    pi2_rank: int
    pi_alpha: tuple[str, ...] | None
    cardinality_class: str


def homspace_dim(hs: HomSpace) -> int:
    """Real dimension; the empty Gamma-kind quotient is a point."""
    nu = hs.nu_total
    squares = sum(x * x for x in hs.nu)
    if hs.kind == "GammaHat":
        return 4 * nu * (nu + hs.zeta) - 2 * squares
    if hs.kind == "ThetaHat":
        return 2 * nu * nu - 2 * squares
    if hs.kind == "Gamma":
        return nu * (2 * nu + 2 * hs.zeta - 1) - squares
    return nu * nu - squares


def homspace_pi2_rank(hs: HomSpace) -> int:
    """Rank of the (free abelian) second homotopy group; the fundamental
    group of all four kinds is trivial. Gamma kinds need zeta + s >= 1."""
    s = len(hs.nu)
    if hs.kind in THETA_KINDS:
        return s - 1
    if hs.zeta + s < 1:
        raise InvalidInputError("Gamma-kind rank formula needs zeta + s >= 1")
    rank = s - _delta(hs.zeta, 0) * _delta(s, 1) * _delta(hs.nu[0] if s else 0, 1)
    rank += _delta(hs.zeta, 2) * (1 - _delta(s, 0))
    return rank


def ambient_quotient_components(hs: HomSpace) -> int:
    """Components of the quotient taken in the full (both-determinant-sign)
    group: 2 exactly for Gamma kinds with zeta = 0 and s >= 1, else 1."""
    if hs.kind in GAMMA_KINDS and hs.zeta == 0 and hs.nu:
        return 2
    return 1


def log_set_cardinality_class(spec: SpectralData) -> str:
    """Cardinality of the full logarithm set: a single point exactly when
    the spectrum is real, positive and simple; countable when all
    eigenvalues are simple and none negative; uncountable otherwise."""
    all_simple = all(h == 1 for _, h in spec.positive) and all(
        m == 1 for _, _, m in spec.pairs
    )
    if spec.negative or not all_simple:
        return UNCOUNTABLE
    return SINGLETON if not spec.nonreal else COUNTABLY_INFINITE


def skew_log_set_cardinality_class(spec: OrthoSpectralData) -> str:
    """Cardinality of the skew-symmetric logarithm set; never finite."""
    if spec.n < 2:
        raise InvalidInputError("skew logarithms need order >= 2")
    if all(m == 1 for _, m in spec.rotations) and spec.h <= 2 and spec.k <= 1:
        return COUNTABLY_INFINITE
    return UNCOUNTABLE


def _pi_alpha_general(spec: SpectralData, branch: MultiIndexSet) -> tuple[str, ...] | None:
    """Higher homotopy factors, present when all non-real multiplicities
    are 1 and every real-eigenvalue multiplicity of the branch is <= 2."""
    unit_mults = (
        all(x == 1 for grp in branch.u for x in grp[1:])
        and all(x == 1 for grp in branch.mu for x in grp)
        and all(x == 1 for grp in branch.v for x in grp)
    )
    if not unit_mults or any(branch.g(i) > 2 for i in range(len(branch.u))):
        return None
    factors = [f"SO({h})" for _, h in spec.positive]
    factors += [f"U({m})" for _, _, m in spec.pairs]
    factors += [f"SO({2 * k})" for _, k in spec.negative]
    return tuple(factors)


def branch_topology(spec: SpectralData, branch: MultiIndexSet) -> TopologyReport:
    """Classify one branch of the logarithm set of a semi-simple matrix."""
    if not check_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    factors = [
        HomSpace("GammaHat", zeta=branch.g(i), nu=branch.u[i][1:]) for i in branch.set_i
    ]
    factors += [HomSpace("ThetaHat", nu=grp) for grp in branch.mu]
    factors += [HomSpace("GammaHat", zeta=0, nu=grp) for grp in branch.v]

    p = len(spec.positive)
    q = len(spec.negative)
    pi2 = (
        sum(branch.b(i) for i in range(p))
        - len(branch.set_k)
        + len(branch.set_j_hat)
        + sum(len(grp) for grp in branch.tau)
        - spec.a_total
        + sum(len(grp) for grp in branch.sigma)
        - len(branch.set_l)
    )
    return TopologyReport(
        factors=tuple(factors),
        dimension=sum(homspace_dim(f) for f in factors),
        components=2 ** (len(branch.set_j) + q),
        simply_connected=True,
        pi2_rank=pi2,
        pi_alpha=_pi_alpha_general(spec, branch),
        cardinality_class=log_set_cardinality_class(spec),
    )


def _pi_alpha_skew(spec: OrthoSpectralData, branch: SkewMultiIndexSet) -> tuple[str, ...] | None:
    unit_mults = (
        all(x == 1 for x in branch.u[1:])
        and all(x == 1 for grp in branch.mu for x in grp)
        and all(x == 1 for x in branch.v)
    )
    if not unit_mults or branch.g > 2:
        return None
    factors = [f"SO({spec.h})"] if spec.h else []
    factors += [f"U({m})" for _, m in spec.rotations]
    if spec.k:
        factors.append(f"SO({2 * spec.k})")
    return tuple(factors)


def skew_branch_topology(spec: OrthoSpectralData, branch: SkewMultiIndexSet) -> TopologyReport:
    """Classify one branch of the skew-symmetric logarithm set."""
    if not check_skew_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    factors = []
    if spec.h:
        factors.append(HomSpace("Gamma", zeta=branch.g, nu=branch.u[1:]))
    factors += [HomSpace("Theta", nu=grp) for grp in branch.mu]
    if spec.k:
        factors.append(HomSpace("Gamma", zeta=0, nu=branch.v))

    # doubling factors: the identity block only when its sign class is not
    # absorbed (g = 0), the -1 block always
    doublings = _delta(branch.g, 0) * (1 if spec.h else 0) + (1 if spec.k else 0)
    r = len(spec.rotations)
    pi2 = (
        branch.b
        - _delta(branch.g, 0) * _delta(branch.b, 1) * _delta(branch.u[1] if branch.b else 0, 1)
        + _delta(branch.g, 2) * (1 - _delta(branch.b, 0))
        + sum(len(grp) for grp in branch.tau)
        - r
        + branch.c
        - (_delta(branch.c, 1) * _delta(branch.v[0] if branch.c else 0, 1))
    )
    return TopologyReport(
        factors=tuple(factors),
        dimension=sum(homspace_dim(f) for f in factors),
        components=2**doublings,
        simply_connected=True,
        pi2_rank=pi2,
        pi_alpha=_pi_alpha_skew(spec, branch),
        cardinality_class=skew_log_set_cardinality_class(spec),
    )


def principal_topology(spec: SpectralData) -> TopologyReport:
    """Structure of the set of generalized principal logarithms: a point
    when no eigenvalue is negative, else 2^q components whose shared
    diffeomorphism type is the product over the negative eigenvalues."""
    q = len(spec.negative)
    factors = tuple(HomSpace("GammaHat", zeta=0, nu=(k,)) for _, k in spec.negative)
    pi_alpha = None
    if all(m == 1 for _, _, m in spec.pairs) and all(k == 1 for _, k in spec.negative) and all(
        h <= 2 for _, h in spec.positive
    ):
        pi_alpha = tuple(
            [f"SO({h})" for _, h in spec.positive]
            + [f"U({m})" for _, _, m in spec.pairs]
            + [f"SO({2 * k})" for _, k in spec.negative]
        )
    return TopologyReport(
        factors=factors,
        dimension=sum(homspace_dim(f) for f in factors),
        components=2**q,
        simply_connected=True,
        pi2_rank=sum(1 for _, k in spec.negative if k >= 2),
        pi_alpha=pi_alpha,
        cardinality_class=log_set_cardinality_class(spec),
    )


def principal_skew_topology(spec: OrthoSpectralData) -> TopologyReport:
    """Structure of the set of principal skew-symmetric logarithms: a
    point when -1 is not an eigenvalue, else two components of the
    single compact quotient attached to the -1 block."""
    if spec.k == 0:
        factors: tuple[HomSpace, ...] = ()
        components = 1
        pi2 = 0
    else:
        factors = (HomSpace("Gamma", zeta=0, nu=(spec.k,)),)
        components = 2
        pi2 = 0 if spec.k == 1 else 1
    pi_alpha = None
    if all(m == 1 for _, m in spec.rotations) and spec.h <= 2 and spec.k <= 1:
        names = [f"SO({spec.h})"] if spec.h else []
        names += [f"U({m})" for _, m in spec.rotations]
        if spec.k:
            names.append(f"SO({2 * spec.k})")
        pi_alpha = tuple(names)
    return TopologyReport(
        factors=factors,
        dimension=sum(homspace_dim(f) for f in factors),
        components=components,
        simply_connected=True,
        pi2_rank=pi2,
        pi_alpha=pi_alpha,
        cardinality_class=skew_log_set_cardinality_class(spec),
    )


def centralizer_dims(spec: SpectralData, branch: MultiIndexSet) -> tuple[int, int]:
    """Dimensions of the centralizer algebras of the canonical form and of
    the canonical logarithm (sums of squares of block orders); their
    difference equals the branch dimension."""
    if not check_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    dim_big = (
        sum(h * h for _, h in spec.positive)
        + 2 * sum(m * m for _, _, m in spec.pairs)
        + sum(4 * k * k for _, k in spec.negative)
    )
    dim_small = sum(
        grp[0] * grp[0] + 2 * sum(x * x for x in grp[1:]) for grp in branch.u
    )
    dim_small += 2 * sum(x * x for grp in branch.mu for x in grp)
    dim_small += 2 * sum(x * x for grp in branch.v for x in grp)
    return dim_big, dim_small


def skew_centralizer_dims(spec: OrthoSpectralData, branch: SkewMultiIndexSet) -> tuple[int, int]:
    """Orthogonal analogue of :func:`centralizer_dims`: dimensions of the
    orthogonal-intersection centralizer algebras."""
    if not check_skew_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    dim_big = (
        spec.h * (spec.h - 1) // 2
        + sum(m * m for _, m in spec.rotations)
        + spec.k * (2 * spec.k - 1)
    )
    dim_small = branch.g * (branch.g - 1) // 2 + sum(x * x for x in branch.u[1:])
    dim_small += sum(x * x for grp in branch.mu for x in grp)
    dim_small += sum(x * x for x in branch.v)
    return dim_big, dim_small


def homspace_to_json(hs: HomSpace) -> dict:
    doc = {"kind": hs.kind, "nu": list(hs.nu)}
    if hs.kind in GAMMA_KINDS:
        doc["zeta"] = hs.zeta
    return doc


def report_to_json(report: TopologyReport) -> dict:
    return {
        "factors": [homspace_to_json(f) for f in report.factors],
        "dimension": report.dimension,
        "components": report.components,
        "simply_connected": report.simply_connected,
        "pi2_rank": report.pi2_rank,
        "pi_alpha": list(report.pi_alpha) if report.pi_alpha is not None else None,
        "cardinality_class": report.cardinality_class,
    }
