#ifndef JF_FORMS_HPP
#define JF_FORMS_HPP

#include "jf/group.hpp"
#include "jf/types.hpp"

namespace jf {

/// Weight/order/index signature of a form family.
struct FormSignature {
    int weight = 0;
    int order = 0;
    int index = 0;
};

inline constexpr FormSignature kPhi1Signature{-1, 0, 1};
inline constexpr FormSignature kPhi0Signature{0, 0, 1};

/// Fundamental form of index 1, weight -1, order 0:
///   phi1 = e^{-2 pi i u} theta1(v0+v2) theta1(-v0+v2) / (theta1'(0) theta1(2 v2)).
/// PoleError when 2 v2 is within guard distance of the lattice.
cplx phi1(const DomainPoint& p, const SeriesConfig& cfg = {});

/// Companion form of weight 0:
///   phi0 = -phi1 * [zeta(v0-v2) - zeta(v0+v2) + 2 zeta(v2)],
/// equal to e^{-2 pi i u} theta1(v0)^2 / theta1(v2)^2 (kept as a cross-check
/// in tests, not as the implementation).
cplx phi0(const DomainPoint& p, const SeriesConfig& cfg = {});

/// Degree-two elliptic map with zeros at +-v0 and simple poles at +-v2:
///   lambda(v) = e^{-2 pi i u} theta1(v-v0) theta1(v+v0) / (theta1(v-v2) theta1(v+v2)).
cplx superpotential(cplx v, const DomainPoint& p, const SeriesConfig& cfg = {});

/// Relative defect of superpotential invariance under g, with the probe
/// transported by the gamma part: v -> v/(c tau + d).
/// Returns |lambda(v'; g.p) - lambda(v; p)| / max(1, |lambda(v; p)|).
double invariance_residual(const GroupElement& g, const DomainPoint& p, cplx v,
                           const SeriesConfig& cfg = {});

/// Closed form of the shift-operator generating function,
///   e^{-2 pi i (u + i g1(tau) z^2)} theta1(z-v0+v2) theta1(z+v0+v2)
///     / (theta1'(0) theta1(z+2 v2)).
/// Its value at z = 0 is phi1; the z-coefficient is phi0 + phi1*(2 zeta(v2) - zeta(2 v2)).
cplx generating_function(cplx z, const DomainPoint& p, const SeriesConfig& cfg = {});

}  // namespace jf

#endif
