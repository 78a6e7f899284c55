#include "jf/forms.hpp"

#include "jf/theta.hpp"

#include <cmath>
#include <numbers>

namespace jf {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

void guard_pole(cplx v, cplx tau, double guard, const char* what) {
    if (lattice_distance(v, tau) < guard) {
        throw PoleError(std::string(what) + ": evaluation within guard distance of a pole");
    }
}

}  // namespace

cplx phi1(const DomainPoint& p, const SeriesConfig& cfg) {
    guard_pole(2.0 * p.v2, p.tau, cfg.pole_guard, "phi1");
    return std::exp(-2.0 * kPi * kI * p.u)
         * theta1(p.v0 + p.v2, p.tau, cfg) * theta1(-p.v0 + p.v2, p.tau, cfg)
         / (theta1_dv(0.0, p.tau, 1, cfg) * theta1(2.0 * p.v2, p.tau, cfg));
}

cplx phi0(const DomainPoint& p, const SeriesConfig& cfg) {
    guard_pole(p.v0 - p.v2, p.tau, cfg.pole_guard, "phi0");
    guard_pole(p.v0 + p.v2, p.tau, cfg.pole_guard, "phi0");
    const cplx comb = wzeta(p.v0 - p.v2, p.tau, cfg) - wzeta(p.v0 + p.v2, p.tau, cfg)
                    + 2.0 * wzeta(p.v2, p.tau, cfg);
    return -phi1(p, cfg) * comb;
}

cplx superpotential(cplx v, const DomainPoint& p, const SeriesConfig& cfg) {
    guard_pole(v - p.v2, p.tau, cfg.pole_guard, "superpotential");
    guard_pole(v + p.v2, p.tau, cfg.pole_guard, "superpotential");
    return std::exp(-2.0 * kPi * kI * p.u)
         * theta1(v - p.v0, p.tau, cfg) * theta1(v + p.v0, p.tau, cfg)
         / (theta1(v - p.v2, p.tau, cfg) * theta1(v + p.v2, p.tau, cfg));
}

double invariance_residual(const GroupElement& g, const DomainPoint& p, cplx v,
                           const SeriesConfig& cfg) {
    const cplx cd = static_cast<double>(g.gamma[2]) * p.tau + static_cast<double>(g.gamma[3]);
    const cplx base = superpotential(v, p, cfg);
    const cplx moved = superpotential(v / cd, act(g, p), cfg);
    return std::abs(moved - base) / std::max(1.0, std::abs(base));
}

cplx generating_function(cplx z, const DomainPoint& p, const SeriesConfig& cfg) {
    guard_pole(z + 2.0 * p.v2, p.tau, cfg.pole_guard, "generating_function");
    return std::exp(-2.0 * kPi * kI * (p.u + kI * g1(p.tau, cfg) * z * z))
         * theta1(z - p.v0 + p.v2, p.tau, cfg) * theta1(z + p.v0 + p.v2, p.tau, cfg)
         / (theta1_dv(0.0, p.tau, 1, cfg) * theta1(z + 2.0 * p.v2, p.tau, cfg));
}

}  // namespace jf
