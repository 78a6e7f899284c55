#include "jf/frobenius.hpp"

#include "jf/forms.hpp"
#include "jf/theta.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace jf {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// Log-derivative bundle of theta1 at a fixed argument: everything the
// closed-form metric and third derivatives need at x and 2x.
struct ThetaRatios {
    cplx t0, t1, t2, t3;      // theta1 and v-derivatives
    cplx dt0, dt1, dt2;       // tau-derivatives of the above
    cplx r;                   // t1/t0
    cplx a2;                  // d/dx (t1/t0) = t2/t0 - r^2
    cplx a3;                  // d^2/dx^2 (t1/t0)
    cplx dr;                  // d/dtau (t1/t0)
};

ThetaRatios ratios(cplx x, cplx tau, const SeriesConfig& cfg) {
    ThetaRatios q;
    q.t0 = theta1_deriv(x, tau, 0, 0, cfg);
    q.t1 = theta1_deriv(x, tau, 1, 0, cfg);
    q.t2 = theta1_deriv(x, tau, 2, 0, cfg);
    q.t3 = theta1_deriv(x, tau, 3, 0, cfg);
    q.dt0 = theta1_deriv(x, tau, 0, 1, cfg);
    q.dt1 = theta1_deriv(x, tau, 1, 1, cfg);
    q.dt2 = theta1_deriv(x, tau, 2, 1, cfg);
    q.r = q.t1 / q.t0;
    q.a2 = q.t2 / q.t0 - q.r * q.r;
    q.a3 = q.t3 / q.t0 - 3.0 * q.t1 * q.t2 / (q.t0 * q.t0) + 2.0 * q.r * q.r * q.r;
    q.dr = q.dt1 / q.t0 - q.t1 * q.dt0 / (q.t0 * q.t0);
    return q;
}

// d^k/dtau^k log theta1'(0,tau), k = 1..3.
cplx dtau_log_theta_prime0(cplx tau, int k, const SeriesConfig& cfg) {
    const cplx f0 = theta1_deriv(0.0, tau, 1, 0, cfg);
    const cplx f1 = theta1_deriv(0.0, tau, 1, 1, cfg);
    if (k == 1) return f1 / f0;
    const cplx f2 = theta1_deriv(0.0, tau, 1, 2, cfg);
    if (k == 2) return f2 / f0 - (f1 / f0) * (f1 / f0);
    const cplx f3 = theta1_deriv(0.0, tau, 1, 3, cfg);
    const cplx r = f1 / f0;
    return f3 / f0 - 3.0 * f1 * f2 / (f0 * f0) + 2.0 * r * r * r;
}

// d^k/dtau^k log theta1(x,tau), k = 1..3.
cplx dtau_log_theta(cplx x, cplx tau, int k, const SeriesConfig& cfg) {
    const cplx f0 = theta1_deriv(x, tau, 0, 0, cfg);
    const cplx f1 = theta1_deriv(x, tau, 0, 1, cfg);
    if (k == 1) return f1 / f0;
    const cplx f2 = theta1_deriv(x, tau, 0, 2, cfg);
    if (k == 2) return f2 / f0 - (f1 / f0) * (f1 / f0);
    const cplx f3 = theta1_deriv(x, tau, 0, 3, cfg);
    const cplx r = f1 / f0;
    return f3 / f0 - 3.0 * f1 * f2 / (f0 * f0) + 2.0 * r * r * r;
}

void guard_flat(const FlatPoint& t, const SeriesConfig& cfg) {
    if (!(t.t4.imag() >= cfg.im_tau_min)) throw DomainError("flat point: Im(t4) too small");
    if (lattice_distance(2.0 * t.t3, t.t4) < cfg.pole_guard) {
        throw PoleError("flat point: 2 t3 within guard distance of the lattice");
    }
}

// 4th-order central first derivative with one Richardson step (h, h/2).
template <typename F>
cplx fd_deriv(const F& f, double h) {
    auto stencil = [&](double s) {
        return (-f(2.0 * s) + 8.0 * f(s) - 8.0 * f(-s) + f(-2.0 * s)) / (12.0 * s);
    };
    const cplx d1 = stencil(h);
    const cplx d2 = stencil(h / 2.0);
    return (16.0 * d2 - d1) / 15.0;
}

}  // namespace

FlatPoint flat_from_domain(const DomainPoint& p, const SeriesConfig& cfg) {
    const cplx t2 = phi1(p, cfg);
    const cplx ratio = theta1_dv(p.v2, p.tau, 1, cfg) / theta1(p.v2, p.tau, cfg);
    return {phi0(p, cfg) + 2.0 * t2 * ratio, t2, p.v2, p.tau};
}

DomainPoint domain_from_flat(const FlatPoint& t, const DomainPoint& guess,
                             const SeriesConfig& cfg) {
    guard_flat(t, cfg);
    DomainPoint cur{guess.u, guess.v0, t.t3, t.t4};
    const cplx tau = t.t4;
    const cplx v2 = t.t3;
    const cplx ratio2 = theta1_dv(v2, tau, 1, cfg) / theta1(v2, tau, cfg);

    for (int it = 0; it < 50; ++it) {
        const FlatPoint cand = flat_from_domain(cur, cfg);
        const cplx r1 = cand.t1 - t.t1;
        const cplx r2 = cand.t2 - t.t2;
        if (std::max(std::abs(r1), std::abs(r2)) < 1e-10) return cur;

        // Analytic 2x2 Jacobian of (t1, t2) with respect to (u, v0).
        const cplx A = std::exp(-2.0 * kPi * kI * cur.u)
                     * theta1(cur.v0, tau, cfg) * theta1(cur.v0, tau, cfg)
                     / (theta1(v2, tau, cfg) * theta1(v2, tau, cfg));
        const cplx t2v = cand.t2;
        const cplx dt2_dv0 = t2v * (theta1_dv(cur.v0 + v2, tau, 1, cfg) / theta1(cur.v0 + v2, tau, cfg)
                                  + theta1_dv(cur.v0 - v2, tau, 1, cfg) / theta1(cur.v0 - v2, tau, cfg));
        const cplx dt2_du = -2.0 * kPi * kI * t2v;
        const cplx dt1_dv0 = 2.0 * theta1_dv(cur.v0, tau, 1, cfg) / theta1(cur.v0, tau, cfg) * A
                           + dt2_dv0 * 2.0 * ratio2;
        const cplx dt1_du = -2.0 * kPi * kI * A + dt2_du * 2.0 * ratio2;

        const cplx det = dt1_du * dt2_dv0 - dt1_dv0 * dt2_du;
        const double scale = std::max({std::abs(dt1_du), std::abs(dt1_dv0),
                                       std::abs(dt2_du), std::abs(dt2_dv0)});
        if (std::abs(det) < 1e-8 * scale * scale) {
            throw JacobianSingularError("domain_from_flat: Jacobian singular (v0 near a root of the discriminant)");
        }
        const cplx du = (r1 * dt2_dv0 - r2 * dt1_dv0) / det;
        const cplx dv = (r2 * dt1_du - r1 * dt2_du) / det;
        if (std::max(std::abs(du), std::abs(dv)) > 10.0) {
            throw NoConvergenceError("domain_from_flat: Newton step left the basin");
        }
        cur.u -= du;
        cur.v0 -= dv;
    }
    throw NoConvergenceError("domain_from_flat: no convergence after 50 iterations");
}

Metric4 intersection_form_domain() {
    Metric4 g;
    g(0, 3) = g(3, 0) = 1.0;   // u-tau
    g(1, 1) = 0.5;             // v0
    g(2, 2) = -0.5;            // v2
    return g;
}

Metric4 intersection_form_flat(const FlatPoint& t, const SeriesConfig& cfg) {
    guard_flat(t, cfg);
    const cplx t1 = t.t1, t2 = t.t2, t4 = t.t4;
    const ThetaRatios q2 = ratios(2.0 * t.t3, t4, cfg);
    const ThetaRatios q1 = ratios(t.t3, t4, cfg);
    const cplx dlogC = dtau_log_theta_prime0(t4, 1, cfg) - q2.dt0 / q2.t0;

    Metric4 g;
    g(2, 2) = -0.5;
    g(1, 3) = g(3, 1) = -2.0 * kPi * kI * t2;
    g(0, 3) = g(3, 0) = -2.0 * kPi * kI * t1;
    g(1, 2) = g(2, 1) = -0.5 * t1 + t2 * q2.r;
    g(0, 2) = g(2, 0) = -2.0 * kPi * kI * t2 * dlogC;
    g(1, 1) = 2.0 * t2 * t2 * q2.a2;
    // d^2/dt3 dtau log(theta1'(0)/theta1(2 t3)) = -2 d/dx (dtau theta1/theta1)|_{2 t3}
    const cplx mixed = -2.0 * (q2.dt1 / q2.t0 - q2.dt0 * q2.t1 / (q2.t0 * q2.t0));
    g(0, 1) = g(1, 0) = -2.0 * kPi * kI * t2 * t2 * mixed;
    g(0, 0) = -4.0 * t2 * t2 * q1.r * q1.a2 * (2.0 * q1.r - 2.0 * q2.r)
            + 8.0 * q1.r * q1.r * t2 * t2 * q2.a2
            - 2.0 * t2 * t2 * q1.a2 * q1.a2
            - 16.0 * kPi * kI * t2 * t2 * q1.r * q1.dr;
    return g;
}

Metric4 intersection_form_pushforward(const DomainPoint& p, const SeriesConfig& cfg) {
    // J[a][j] = dt^a/dx^j, x = (u, v0, v2, tau)
    std::array<std::array<cplx, 4>, 4> J{};
    const double h = 1e-5;
    for (int j = 0; j < 4; ++j) {
        for (int a = 0; a < 4; ++a) {
            auto f = [&](double s) {
                DomainPoint q = p;
                switch (j) {
                    case 0: q.u += s; break;
                    case 1: q.v0 += s; break;
                    case 2: q.v2 += s; break;
                    default: q.tau += s; break;
                }
                return flat_from_domain(q, cfg)[a];
            };
            J[a][j] = fd_deriv(f, h);
        }
    }
    Metric4 g;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            g(a, b) = 0.5 * J[a][1] * J[b][1] - 0.5 * J[a][2] * J[b][2]
                    + J[a][0] * J[b][3] + J[a][3] * J[b][0];
        }
    }
    return g;
}

Metric4 saito_metric() {
    Metric4 e;
    e(0, 3) = e(3, 0) = -2.0 * kPi * kI;
    e(1, 2) = e(2, 1) = -0.5;
    return e;
}

Metric4 saito_metric_lowered() {
    Metric4 e;
    e(0, 3) = e(3, 0) = kI / (2.0 * kPi);
    e(1, 2) = e(2, 1) = -2.0;
    return e;
}

cplx free_energy(const FlatPoint& t, const SeriesConfig& cfg) {
    guard_flat(t, cfg);
    const cplx arg = t.t2 * theta1_dv(0.0, t.t4, 1, cfg) / theta1(2.0 * t.t3, t.t4, cfg);
    if (std::abs(arg) == 0.0) throw DomainError("free_energy: log argument is zero");
    return kI / (4.0 * kPi) * t.t1 * t.t1 * t.t4 - 2.0 * t.t1 * t.t2 * t.t3
         - t.t2 * t.t2 * std::log(arg);
}

std::array<cplx, 4> free_energy_grad(const FlatPoint& t, const SeriesConfig& cfg) {
    guard_flat(t, cfg);
    const cplx logarg = t.t2 * theta1_dv(0.0, t.t4, 1, cfg) / theta1(2.0 * t.t3, t.t4, cfg);
    const cplx L = std::log(logarg);
    const ThetaRatios q2 = ratios(2.0 * t.t3, t.t4, cfg);
    const cplx dlogC = dtau_log_theta_prime0(t.t4, 1, cfg) - q2.dt0 / q2.t0;
    return {kI / (2.0 * kPi) * t.t1 * t.t4 - 2.0 * t.t2 * t.t3,
            -2.0 * t.t1 * t.t3 - 2.0 * t.t2 * L - t.t2,
            -2.0 * t.t1 * t.t2 + 2.0 * t.t2 * t.t2 * q2.r,
            kI / (4.0 * kPi) * t.t1 * t.t1 - t.t2 * t.t2 * dlogC};
}

Metric4 free_energy_hessian(const FlatPoint& t, const SeriesConfig& cfg) {
    guard_flat(t, cfg);
    const cplx logarg = t.t2 * theta1_dv(0.0, t.t4, 1, cfg) / theta1(2.0 * t.t3, t.t4, cfg);
    const ThetaRatios q2 = ratios(2.0 * t.t3, t.t4, cfg);
    const cplx dlogC = dtau_log_theta_prime0(t.t4, 1, cfg) - q2.dt0 / q2.t0;
    const cplx d2logC = dtau_log_theta_prime0(t.t4, 2, cfg) - dtau_log_theta(2.0 * t.t3, t.t4, 2, cfg);

    Metric4 h;
    h(0, 0) = kI / (2.0 * kPi) * t.t4;
    h(0, 1) = h(1, 0) = -2.0 * t.t3;
    h(0, 2) = h(2, 0) = -2.0 * t.t2;
    h(0, 3) = h(3, 0) = kI / (2.0 * kPi) * t.t1;
    h(1, 1) = -2.0 * std::log(logarg) - 3.0;
    h(1, 2) = h(2, 1) = -2.0 * t.t1 + 4.0 * t.t2 * q2.r;
    h(1, 3) = h(3, 1) = -2.0 * t.t2 * dlogC;
    h(2, 2) = 4.0 * t.t2 * t.t2 * q2.a2;
    h(2, 3) = h(3, 2) = 2.0 * t.t2 * t.t2 * q2.dr;
    h(3, 3) = -t.t2 * t.t2 * d2logC;
    return h;
}

ThirdDerivTensor third_derivatives(const FlatPoint& t, const SeriesConfig& cfg) {
    guard_flat(t, cfg);
    const cplx t2 = t.t2, t4 = t.t4;
    const cplx x = 2.0 * t.t3;
    const ThetaRatios q = ratios(x, t4, cfg);
    const cplx dlogC = dtau_log_theta_prime0(t4, 1, cfg) - q.dt0 / q.t0;
    const cplx d2logC = dtau_log_theta_prime0(t4, 2, cfg) - dtau_log_theta(x, t4, 2, cfg);
    const cplx d3logC = dtau_log_theta_prime0(t4, 3, cfg) - dtau_log_theta(x, t4, 3, cfg);
    // dtau of a2 and of r at x, and d^2/dtau^2 of r.
    const cplx da2 = (q.dt2 / q.t0 - q.t2 * q.dt0 / (q.t0 * q.t0)) - 2.0 * q.r * q.dr;
    const cplx dt2_00 = theta1_deriv(x, t4, 0, 2, cfg);
    const cplx dt2_10 = theta1_deriv(x, t4, 1, 2, cfg);
    const cplx d2r = dt2_10 / q.t0 - 2.0 * q.dt1 * q.dt0 / (q.t0 * q.t0)
                   - q.t1 * dt2_00 / (q.t0 * q.t0)
                   + 2.0 * q.t1 * q.dt0 * q.dt0 / (q.t0 * q.t0 * q.t0);

    ThirdDerivTensor c;
    auto set = [&c](int a, int b, int g, cplx val) {
        c(a, b, g) = c(a, g, b) = c(b, a, g) = c(b, g, a) = c(g, a, b) = c(g, b, a) = val;
    };
    set(0, 0, 3, kI / (2.0 * kPi));
    set(0, 1, 2, -2.0);
    set(1, 1, 1, -2.0 / t2);
    set(1, 1, 2, 4.0 * q.r);
    set(1, 1, 3, -2.0 * dlogC);
    set(1, 2, 2, 8.0 * t2 * q.a2);
    set(1, 2, 3, 4.0 * t2 * q.dr);
    set(1, 3, 3, -2.0 * t2 * d2logC);
    set(2, 2, 2, 8.0 * t2 * t2 * q.a3);
    set(2, 2, 3, 4.0 * t2 * t2 * da2);
    set(2, 3, 3, 2.0 * t2 * t2 * d2r);
    set(3, 3, 3, -t2 * t2 * d3logC);
    return c;
}

StructureConstants structure_constants(const FlatPoint& t, const SeriesConfig& cfg) {
    const ThirdDerivTensor c = third_derivatives(t, cfg);
    const Metric4 eu = saito_metric();
    StructureConstants s;
    for (int up = 0; up < 4; ++up) {
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                cplx acc = 0.0;
                for (int d = 0; d < 4; ++d) acc += eu(up, d) * c(a, b, d);
                s(up, a, b) = acc;
            }
        }
    }
    return s;
}

double wdvv_residual(const FlatPoint& t, const SeriesConfig& cfg) {
    const StructureConstants s = structure_constants(t, cfg);
    double worst = 0.0;
    double scale = 1.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int g = 0; g < 4; ++g) {
                for (int d = 0; d < 4; ++d) {
                    cplx s1 = 0.0, s2 = 0.0;
                    for (int m = 0; m < 4; ++m) {
                        s1 += s(m, a, b) * s(d, m, g);
                        s2 += s(m, g, b) * s(d, m, a);
                    }
                    worst = std::max(worst, std::abs(s1 - s2));
                    scale = std::max(scale, std::abs(s1));
                }
            }
        }
    }
    return worst / scale;
}

double euler_residual(const FlatPoint& t, const SeriesConfig& cfg) {
    const auto grad = free_energy_grad(t, cfg);
    const cplx F = free_energy(t, cfg);
    return std::abs(t.t1 * grad[0] + t.t2 * grad[1] - 2.0 * F + t.t2 * t.t2);
}

cplx det_jacobian(const DomainPoint& p, const SeriesConfig& cfg) {
    if (lattice_distance(2.0 * p.v2, p.tau) < cfg.pole_guard) {
        throw PoleError("det_jacobian: 2 v2 within guard distance of the lattice");
    }
    return -2.0 * kPi * kI * std::exp(-4.0 * kPi * kI * p.u)
         * theta1_reduced(2.0 * p.v0, p.tau, cfg) / theta1_reduced(2.0 * p.v2, p.tau, cfg);
}

std::array<cplx, 4> canonical_spectrum(const FlatPoint& t, const SeriesConfig& cfg) {
    const Metric4 g = intersection_form_flat(t, cfg);
    const Metric4 el = saito_metric_lowered();
    Eigen::Matrix4cd M;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            cplx acc = 0.0;
            for (int m = 0; m < 4; ++m) acc += el(a, m) * g(m, b);
            M(a, b) = acc;
        }
    }
    // Characteristic quartic u^4 + p3 u^3 + p2 u^2 + p1 u + p0 by
    // Faddeev-LeVerrier, then its companion matrix.
    Eigen::Matrix4cd A = M;
    cplx coef[4];  // coef[k] multiplies u^{3-k}
    Eigen::Matrix4cd Id = Eigen::Matrix4cd::Identity();
    cplx cprev = 1.0;
    Eigen::Matrix4cd Mk = Eigen::Matrix4cd::Zero();
    for (int k = 1; k <= 4; ++k) {
        Mk = A * Mk + cprev * Id;
        const Eigen::Matrix4cd AM = A * Mk;
        cprev = -AM.trace() / static_cast<double>(k);
        coef[k - 1] = cprev;
    }
    Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
    for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < 4; ++i) comp(i, 3) = -coef[3 - i];
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(comp, false);
    std::array<cplx, 4> ev;
    for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

double metric_potential_residual(const FlatPoint& t, const SeriesConfig& cfg) {
    const Metric4 g = intersection_form_flat(t, cfg);
    const Metric4 h = free_energy_hessian(t, cfg);
    const Metric4 eu = saito_metric();
    const int deg[4] = {1, 1, 0, 0};
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int d = deg[a] + deg[b];
            if (d == 0) continue;
            cplx F_ab = 0.0;
            for (int x = 0; x < 4; ++x) {
                for (int y = 0; y < 4; ++y) F_ab += eu(a, x) * eu(b, y) * h(x, y);
            }
            worst = std::max(worst, std::abs(g(a, b) - static_cast<double>(d) * F_ab)
                                        / std::max(1.0, std::abs(g(a, b))));
        }
    }
    return worst;
}

}  // namespace jf
