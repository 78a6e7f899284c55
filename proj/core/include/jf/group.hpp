#ifndef JF_GROUP_HPP
#define JF_GROUP_HPP

#include <array>
#include <cstdint>
#include <string>

#include "jf/types.hpp"

namespace jf {

/// A point (u, v0, v2, tau) of C + C^2 + H, Im(tau) > 0.
struct DomainPoint {
    cplx u{};
    cplx v0{};
    cplx v2{};
    cplx tau{0.0, 1.0};
};

/// Element (w, lambda, mu, k, gamma) of the extended affine Jacobi group:
/// a sign w, two integer translation vectors, a central integer k and an
/// SL2(Z) matrix gamma = (a,b,c,d) with a*d - b*c = 1.
///
/// A stored element acts as reflection . translation . gamma, i.e. gamma
/// is applied to the point first. compose() is the group product for this
/// order; the action-homomorphism property act(compose(g,h),p) =
/// act(g,act(h,p)) is enforced by tests.
struct GroupElement {
    int w = 1;                               // +1 or -1
    std::array<std::int64_t, 2> lambda{0, 0};
    std::array<std::int64_t, 2> mu{0, 0};
    std::int64_t k = 0;
    std::array<std::int64_t, 4> gamma{1, 0, 0, 1};  // (a, b, c, d)

    static GroupElement identity() { return {}; }
    void validate() const;
};

/// Invariant quadratic form <v,v> = 2 v0^2 - 2 v2^2.
cplx quadratic_form(cplx v0, cplx v2);

/// Integer polarization <a,b> = 2 a0 b0 - 2 a2 b2 on translation vectors.
std::int64_t pairing(const std::array<std::int64_t, 2>& a, const std::array<std::int64_t, 2>& b);

/// Group action on the domain. Applies gamma, then the translation
/// (u, v, tau) -> (u - <lambda,v> - <lambda,lambda> tau/2 + k,
///                 v + lambda tau + mu, tau),
/// then the reflection v0 -> w * v0.
DomainPoint act(const GroupElement& g, const DomainPoint& p);

/// Group product (same order convention as act).
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

/// Group inverse: compose(g, inverse(g)) == identity.
GroupElement inverse(const GroupElement& g);

/// Conformal factor of the pulled-back metric 2dv0^2 - 2dv2^2 + 2du dtau:
/// (c tau + d)^{-2} from the gamma part, 1 for pure translations and
/// reflections.
cplx conformal_factor(const GroupElement& g, const DomainPoint& p);

/// JSON round-trip for group elements:
/// {"w":1,"lambda":[l0,l2],"mu":[m0,m2],"k":0,"gamma":[a,b,c,d]}.
std::string to_json(const GroupElement& g);
GroupElement group_element_from_json(const std::string& text);

}  // namespace jf

#endif
