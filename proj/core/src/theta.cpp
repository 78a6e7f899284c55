#include "jf/theta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jf {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

void check_tau(cplx tau, const SeriesConfig& cfg) {
    cfg.validate();
    if (!is_finite(tau) || tau.imag() < cfg.im_tau_min) {
        throw DomainError("theta1: Im(tau) below im_tau_min");
    }
}

}  // namespace

double lattice_distance(cplx v, cplx tau) {
    const double y = v.imag() / tau.imag();
    const double x = v.real() - y * tau.real();
    const double rx = x - std::round(x);
    const double ry = y - std::round(y);
    return std::abs(cplx{rx, 0.0} + ry * tau);
}

cplx theta1_deriv(cplx v, cplx tau, int v_order, int tau_order, const SeriesConfig& cfg) {
    if (v_order < 0 || v_order > 4 || tau_order < 0 || tau_order > 3) {
        throw std::invalid_argument("theta1_deriv: derivative order out of range");
    }
    check_tau(tau, cfg);
    if (!is_finite(v)) throw DomainError("theta1: non-finite v");

    cplx sum = 0.0;
    int below = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        const double m = n + 0.5;
        cplx coef = std::exp(kPi * kI * tau * (m * m));
        if (n % 2 == 1) coef = -coef;
        for (int k = 0; k < tau_order; ++k) coef *= kPi * kI * (m * m);
        const double w = 2.0 * kPi * m;
        for (int k = 0; k < v_order; ++k) coef *= w;
        const cplx arg = w * v;
        cplx trig;
        switch (v_order % 4) {
            case 0: trig = std::sin(arg); break;
            case 1: trig = std::cos(arg); break;
            case 2: trig = -std::sin(arg); break;
            default: trig = -std::cos(arg); break;
        }
        const cplx term = 2.0 * coef * trig;
        sum += term;
        if (std::abs(term) < cfg.tol * std::max(1.0, std::abs(sum))) {
            if (++below >= 3) {
                if (!is_finite(sum)) throw DomainError("theta1: non-finite result");
                return sum;
            }
        } else {
            below = 0;
        }
    }
    throw ConvergenceError("theta1: series did not meet stopping criterion");
}

cplx theta1(cplx v, cplx tau, const SeriesConfig& cfg) {
    return theta1_deriv(v, tau, 0, 0, cfg);
}

cplx theta1_dv(cplx v, cplx tau, int order, const SeriesConfig& cfg) {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("theta1_dv: order must be 1, 2 or 3");
    }
    return theta1_deriv(v, tau, order, 0, cfg);
}

cplx theta1_dtau(cplx v, cplx tau, const SeriesConfig& cfg) {
    return theta1_deriv(v, tau, 0, 1, cfg);
}

cplx g1(cplx tau, const SeriesConfig& cfg) {
    return theta1_deriv(0.0, tau, 1, 1, cfg) / theta1_deriv(0.0, tau, 1, 0, cfg) / 3.0;
}

cplx eisenstein_e2(cplx tau, const SeriesConfig& cfg) {
    check_tau(tau, cfg);
    const cplx q = std::exp(2.0 * kPi * kI * tau);
    cplx qn = 1.0;
    cplx sum = 1.0;
    int below = 0;
    for (int n = 1; n < cfg.max_terms; ++n) {
        qn *= q;
        // sigma_1(n) q^n written as sum over divisors folded into a
        // Lambert-style term: n q^n / (1 - q^n) summed over n gives the
        // same total, term decay is still geometric.
        const cplx term = -24.0 * static_cast<double>(n) * qn / (1.0 - qn);
        sum += term;
        if (std::abs(term) < cfg.tol * std::max(1.0, std::abs(sum))) {
            if (++below >= 3) return sum;
        } else {
            below = 0;
        }
    }
    throw ConvergenceError("eisenstein_e2: series did not meet stopping criterion");
}

cplx wp(cplx v, cplx tau, const SeriesConfig& cfg) {
    check_tau(tau, cfg);
    if (lattice_distance(v, tau) < cfg.pole_guard) {
        throw PoleError("wp: v within guard distance of a lattice point");
    }
    const cplx t0 = theta1_deriv(v, tau, 0, 0, cfg);
    const cplx t1 = theta1_deriv(v, tau, 1, 0, cfg);
    const cplx t2 = theta1_deriv(v, tau, 2, 0, cfg);
    const cplx r = t1 / t0;
    return -t2 / t0 + r * r + 4.0 * kPi * kI * g1(tau, cfg);
}

cplx wp_dv(cplx v, cplx tau, const SeriesConfig& cfg) {
    check_tau(tau, cfg);
    if (lattice_distance(v, tau) < cfg.pole_guard) {
        throw PoleError("wp_dv: v within guard distance of a lattice point");
    }
    const cplx t0 = theta1_deriv(v, tau, 0, 0, cfg);
    const cplx t1 = theta1_deriv(v, tau, 1, 0, cfg);
    const cplx t2 = theta1_deriv(v, tau, 2, 0, cfg);
    const cplx t3 = theta1_deriv(v, tau, 3, 0, cfg);
    const cplx r = t1 / t0;
    return -t3 / t0 + t2 * t1 / (t0 * t0) + 2.0 * r * (t2 / t0 - r * r);
}

cplx wzeta(cplx v, cplx tau, const SeriesConfig& cfg) {
    check_tau(tau, cfg);
    if (lattice_distance(v, tau) < cfg.pole_guard) {
        throw PoleError("wzeta: v within guard distance of a lattice point");
    }
    return theta1_deriv(v, tau, 1, 0, cfg) / theta1_deriv(v, tau, 0, 0, cfg)
         - 4.0 * kPi * kI * g1(tau, cfg) * v;
}

cplx wsigma(cplx v, cplx tau, const SeriesConfig& cfg) {
    check_tau(tau, cfg);
    return theta1_deriv(v, tau, 0, 0, cfg) / theta1_deriv(0.0, tau, 1, 0, cfg)
         * std::exp(-2.0 * kPi * kI * g1(tau, cfg) * v * v);
}

cplx theta1_reduced(cplx v, cplx tau, const SeriesConfig& cfg) {
    check_tau(tau, cfg);
    // Shift v by the nearest lattice vector and restore the value through
    // the exact quasi-periodicity factor; lattice zeros come out exact.
    const double lam = std::round(v.imag() / tau.imag());
    cplx r = v - lam * tau;
    const double mu = std::round(r.real());
    r -= mu;
    const double sign = (static_cast<long long>(lam + mu) % 2 == 0) ? 1.0 : -1.0;
    const cplx factor = sign * std::exp(-2.0 * kPi * kI * (lam * r + 0.5 * lam * lam * tau));
    return factor * theta1_deriv(r, tau, 0, 0, cfg);
}

}  // namespace jf
