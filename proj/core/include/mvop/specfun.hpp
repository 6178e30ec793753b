#pragma once

#include <vector>

#include "mvop/linalg.hpp"

namespace mvop {

/// Modified Bessel function of the second kind (MacDonald function) K_nu(z)
/// for real order and z > 0. K is even in nu, so negative orders are folded.
///
/// Temme's series handles the fractional order |mu| <= 1/2 for z <= 2 and
/// Steed's continued fraction for z > 2; integer steps in the order then use
/// the forward recurrence K_{mu+1} = K_{mu-1} + (2 mu / z) K_mu, which is
/// stable for K.
Real bessel_k(Real nu, Real z);

/// Integral of x^{sigma-1} e^{-x-s/x} over (0, inf):
/// 2 s^{sigma/2} K_sigma(2 sqrt(s)) for s > 0 and Gamma(sigma) for s = 0.
Real scalar_moment(Real sigma, Real s);

/// Rising factorial (a)_k.
Real pochhammer(Real a, int k);

/// Coefficients c_0..c_n (ascending powers) of the monic Laguerre polynomial
/// of degree n and parameter a; c_n == 1 exactly.
std::vector<Real> monic_laguerre(int n, Real a);

/// Integral of Lhat_n^{(a1)} Lhat_m^{(a2)} x^{sigma-1} e^{-x} over (0, inf),
/// evaluated from the Pochhammer double sum.
Real laguerre_overlap(int n, int m, Real a1, Real a2, Real sigma);

}  // namespace mvop
