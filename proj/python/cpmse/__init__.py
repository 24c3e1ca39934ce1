"""Casimir-Polder potential of a polarizable particle near a rounded dielectric wedge.

Amplitudes are quoted as Upsilon = -U d^4 in units hbar c alpha = 1.
"""

from ._cpmse import (
    MAX_ORDER,
    UPSILON_PEC_PLATE,
    AccelerationReport,
    ConfigError,
    IntegrationSpec,
    MediaPair,
    Medium,
    MseOptions,
    PlateAmplitude,
    PotentialResult,
    SharpFrameCoords,
    ShanksValue,
    SingularEvaluation,
    WedgeConfig,
    accelerate,
    compute_potential,
    d_perp,
    particle_position,
    pec_wedge_upsilon,
    pfa_upsilon,
    plate_upsilon,
    reduced_pec_upsilon,
    shanks,
    sharp_frame,
    surface_point,
    validate,
)


def vacuum_over(epsilon1: float, mu1: float = 1.0) -> MediaPair:
    """Dielectric body in vacuum."""
    return MediaPair(Medium(epsilon1, mu1), Medium())


__all__ = [name for name in dir() if not name.startswith("_")]
