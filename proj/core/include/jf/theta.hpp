#ifndef JF_THETA_HPP
#define JF_THETA_HPP

#include "jf/types.hpp"

namespace jf {

/// Jacobi theta function for the lattice Z + tau*Z, Im(tau) > 0:
///
///   theta1(v,tau) = 2 sum_{n>=0} (-1)^n e^{pi i tau (n+1/2)^2} sin((2n+1) pi v)
///
/// so that theta1(v+1) = -theta1(v) and
/// theta1(v+tau) = -e^{-2 pi i (v + tau/2)} theta1(v).
/// The partial sum stops once three consecutive terms fall below
/// tol * max(1, |sum|); the q-powers decay geometrically once
/// Im(tau) >= im_tau_min.
cplx theta1(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// v-derivative of theta1 of the given order (1, 2 or 3), by term-wise
/// differentiation of the defining series. Orders outside {1,2,3} are a
/// usage error (std::invalid_argument).
cplx theta1_dv(cplx v, cplx tau, int order, const SeriesConfig& cfg = {});

/// tau-derivative of theta1, term-wise. Kept independent of the heat
/// equation theta1'' = 4 pi i d_tau theta1, which is checked in tests.
cplx theta1_dtau(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// General term-wise derivative d^{v_order}/dv^{v_order} d^{tau_order}/dtau^{tau_order}
/// of theta1. v_order in [0,4], tau_order in [0,3]. Used by the closed-form
/// metric entries, which need mixed derivatives such as d_tau theta1'.
cplx theta1_deriv(cplx v, cplx tau, int v_order, int tau_order, const SeriesConfig& cfg = {});

/// Logarithmic derivative of the Dedekind eta function,
/// g1(tau) = eta'(tau)/eta(tau) = (1/3) d_tau theta1'(0,tau) / theta1'(0,tau)
///         = (pi i / 12) E2(tau).
cplx g1(cplx tau, const SeriesConfig& cfg = {});

/// Quasi-modular Eisenstein series E2(tau) = 1 - 24 sum_{n>=1} sigma_1(n) q^n,
/// q = e^{2 pi i tau}.
cplx eisenstein_e2(cplx tau, const SeriesConfig& cfg = {});

/// Weierstrass P-function for the lattice Z + tau*Z, via the theta
/// representation  wp = -theta1''/theta1 + (theta1'/theta1)^2 + 4 pi i g1.
/// Throws PoleError within pole_guard of a lattice point.
cplx wp(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// d/dv of wp.
cplx wp_dv(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// Weierstrass zeta function, zeta = theta1'/theta1 - 4 pi i g1 v.
/// Satisfies zeta' = -wp and sigma'/sigma = zeta.
cplx wzeta(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// Weierstrass sigma function,
/// sigma = theta1(v)/theta1'(0) * exp(-2 pi i g1 v^2).
cplx wsigma(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// theta1 with its argument reduced to the fundamental cell first and the
/// value restored through the exact quasi-periodicity factor. Same function,
/// better conditioned far from the cell; zeros on the lattice are exact.
cplx theta1_reduced(cplx v, cplx tau, const SeriesConfig& cfg = {});

/// Distance from v to the nearest point of Z + tau*Z (nearest in the sense
/// of rounded lattice coordinates; adequate as a pole guard).
double lattice_distance(cplx v, cplx tau);

}  // namespace jf

#endif
