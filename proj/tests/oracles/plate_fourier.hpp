#pragma once

#include <vector>

namespace oracle {

/// Scattering orders of the planar half-space computed in the in-plane Fourier
/// representation, where every surface operator becomes a 6x6 matrix per
/// (kappa, k). Returned in amplitude units, delta Upsilon_l = -delta U_l d^4.
/// Gauss-Legendre on s / (1 - s) maps in both kappa and k.
std::vector<double> plate_fourier_orders(double epsilon1, int max_order, int nodes = 100);

/// Lifshitz amplitude through the one-dimensional polar reduction
///   Upsilon = 3/(16 pi) int_0^{pi/2} dt sin t [(1 + sin^2 t) r_TM - cos^2 t r_TE],
/// with w = sqrt(eps1 cos^2 t + sin^2 t), r_TM = (eps1 - w)/(eps1 + w),
/// r_TE = (1 - w)/(1 + w).
double plate_polar(double epsilon1);

}  // namespace oracle
