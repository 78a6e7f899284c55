#include "jf/verify.hpp"

#include "jf/forms.hpp"
#include "jf/theta.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace jf {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

cplx sample_tau(SplitMix64& rng) {
    return {rng.uniform(-0.4, 0.4), rng.uniform(0.8, 2.0)};
}

// Generic probe in v, kept away from theta zeros so relative residuals
// stay meaningful.
cplx sample_v(SplitMix64& rng, cplx tau) {
    for (;;) {
        const cplx v{rng.uniform(-0.45, 0.45), rng.uniform(-0.25, 0.25)};
        if (lattice_distance(v, tau) >= 0.05) return v;
    }
}

struct Check {
    std::string name;
    std::string identity;
    int base_samples;
    double tolerance;
    std::function<double(SplitMix64&, int, const SeriesConfig&)> run;  // -> max residual
};

double rel(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// ---- individual checks ---------------------------------------------------

double check_quasi_periodicity(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx tau = sample_tau(rng);
        const cplx v = sample_v(rng, tau);
        for (int lam = -2; lam <= 2; ++lam) {
            for (int mu = -2; mu <= 2; ++mu) {
                const cplx lhs = theta1(v + static_cast<double>(mu) + static_cast<double>(lam) * tau, tau, cfg);
                const double sign = ((lam + mu) % 2 == 0) ? 1.0 : -1.0;
                const cplx rhs = sign * std::exp(-2.0 * kPi * kI *
                                     (static_cast<double>(lam) * v + 0.5 * static_cast<double>(lam * lam) * tau))
                               * theta1(v, tau, cfg);
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            }
        }
    }
    return worst;
}

double check_modularity(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    // gamma in {T, S, TS, ST}
    const std::array<std::array<std::int64_t, 4>, 4> words{{{1, 1, 0, 1},
                                                            {0, -1, 1, 0},
                                                            {1, -1, 1, 0},
                                                            {0, -1, 1, 1}}};
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx tau = sample_tau(rng);
        const cplx v = sample_v(rng, tau);
        for (const auto& g : words) {
            const double a = static_cast<double>(g[0]), b = static_cast<double>(g[1]);
            const double c = static_cast<double>(g[2]), d = static_cast<double>(g[3]);
            const cplx cd = c * tau + d;
            const cplx gt = (a * tau + b) / cd;
            const cplx lhs = theta1(v / cd, gt, cfg) / theta1_dv(0.0, gt, 1, cfg);
            const cplx rhs = std::exp(kPi * kI * c * v * v / cd) / cd
                           * theta1(v, tau, cfg) / theta1_dv(0.0, tau, 1, cfg);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    return worst;
}

double check_heat(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx tau = sample_tau(rng);
        const cplx v{rng.uniform(-0.45, 0.45), rng.uniform(-0.25, 0.25)};
        const cplx lhs = theta1_dv(v, tau, 2, cfg);
        const cplx rhs = 4.0 * kPi * kI * theta1_dtau(v, tau, cfg);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return worst;
}

// For x + y + z = 0:
// th''(x)/th(x) + th''(y)/th(y) - 2 th'(x)/th(x) th'(y)/th(y)
//   = 4 pi i dtau log(th'(0)/th(x-y)) + 2 th'(x-y)/th(x-y) (th'(x)/th(x) - th'(y)/th(y)).
double triple_zeta_residual(cplx x, cplx y, cplx tau, const SeriesConfig& cfg) {
    auto lr = [&](cplx w, int p) { return theta1_deriv(w, tau, p, 0, cfg) / theta1(w, tau, cfg); };
    const cplx lhs = lr(x, 2) + lr(y, 2) - 2.0 * lr(x, 1) * lr(y, 1);
    const cplx dt = theta1_deriv(0.0, tau, 1, 1, cfg) / theta1_deriv(0.0, tau, 1, 0, cfg)
                  - theta1_deriv(x - y, tau, 0, 1, cfg) / theta1(x - y, tau, cfg);
    const cplx rhs = 4.0 * kPi * kI * dt + 2.0 * lr(x - y, 1) * (lr(x, 1) - lr(y, 1));
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double check_triple_zeta(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx tau = sample_tau(rng);
        cplx x, y;
        for (;;) {
            x = sample_v(rng, tau);
            y = sample_v(rng, tau);
            if (lattice_distance(x - y, tau) >= 0.05 && lattice_distance(x + y, tau) >= 0.05) break;
        }
        worst = std::max(worst, triple_zeta_residual(x, y, tau, cfg));
    }
    return worst;
}

// v2-derivative of the x = v2, y = -v2 specialization.
double triple_zeta_derivative_residual(cplx v2, cplx tau, const SeriesConfig& cfg) {
    auto t = [&](int p, int k = 0) { return theta1_deriv(v2, tau, p, k, cfg); };
    auto t2 = [&](int p, int k = 0) { return theta1_deriv(2.0 * v2, tau, p, k, cfg); };
    const cplx r = t(1) / t(0);
    const cplx lhs = 2.0 * t(3) / t(0) + 2.0 * t(2) * t(1) / (t(0) * t(0)) - 4.0 * r * r * r;
    const cplx mix = t2(1, 1) / t2(0) - t2(0, 1) * t2(1) / (t2(0) * t2(0));
    const cplx rhs = 4.0 * kPi * kI * (-2.0 * mix)
                   + 8.0 * t2(2) / t2(0) * r - 8.0 * (t2(1) / t2(0)) * (t2(1) / t2(0)) * r
                   + 4.0 * t2(1) / t2(0) * (t(2) / t(0)) - 4.0 * t2(1) / t2(0) * r * r;
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double check_triple_zeta_derivative(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx tau = sample_tau(rng);
        cplx v2;
        for (;;) {
            v2 = sample_v(rng, tau);
            if (lattice_distance(2.0 * v2, tau) >= 0.1) break;
        }
        worst = std::max(worst, triple_zeta_derivative_residual(v2, tau, cfg));
    }
    return worst;
}

double check_superpotential_invariance(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const DomainPoint p = sample_domain_point(rng);
        const GroupElement g = sample_group_element(rng);
        cplx v;
        for (;;) {
            v = sample_v(rng, p.tau);
            if (lattice_distance(v - p.v2, p.tau) >= 0.05 &&
                lattice_distance(v + p.v2, p.tau) >= 0.05) break;
        }
        worst = std::max(worst, invariance_residual(g, p, v, cfg));
    }
    return worst;
}

double check_superpotential_expansion(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const DomainPoint p = sample_domain_point(rng);
        cplx v;
        for (;;) {
            v = sample_v(rng, p.tau);
            if (lattice_distance(v - p.v2, p.tau) >= 0.05 &&
                lattice_distance(v + p.v2, p.tau) >= 0.05) break;
        }
        const cplx lam = superpotential(v, p, cfg);
        const cplx comb = wzeta(v - p.v2, p.tau, cfg) - wzeta(v + p.v2, p.tau, cfg)
                        + 2.0 * wzeta(p.v2, p.tau, cfg);
        const cplx rhs = phi1(p, cfg) * comb + phi0(p, cfg);
        worst = std::max(worst, std::abs(lam - rhs) / std::max(1.0, std::abs(lam)));
    }
    return worst;
}

double check_metric_equivalence(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const DomainPoint p = sample_domain_point(rng);
        const FlatPoint t = flat_from_domain(p, cfg);
        const Metric4 gf = intersection_form_flat(t, cfg);
        const Metric4 gp = intersection_form_pushforward(p, cfg);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                worst = std::max(worst, rel(gp(a, b), gf(a, b)));
            }
        }
    }
    return worst;
}

double check_saito_constancy(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    const Metric4 eta = saito_metric();
    double worst = 0.0;
    const double h = 1e-3;
    for (int i = 0; i < n; ++i) {
        const FlatPoint t = sample_flat_point(rng);
        FlatPoint tp = t, tm = t;
        tp.t1 += h;
        tm.t1 -= h;
        const Metric4 gp = intersection_form_flat(tp, cfg);
        const Metric4 gm = intersection_form_flat(tm, cfg);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const cplx d = (gp(a, b) - gm(a, b)) / (2.0 * h);
                worst = std::max(worst, std::abs(d - eta(a, b)));
            }
        }
    }
    return worst;
}

double check_normalization(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    // c_{1ab} by central difference of the Hessian of F in t1 (exact for the
    // affine dependence), compared against the constant eta matrix.
    const Metric4 etal = saito_metric_lowered();
    double worst = 0.0;
    const double h = 1e-3;
    for (int i = 0; i < n; ++i) {
        const FlatPoint t = sample_flat_point(rng);
        FlatPoint tp = t, tm = t;
        tp.t1 += h;
        tm.t1 -= h;
        const Metric4 hp = free_energy_hessian(tp, cfg);
        const Metric4 hm = free_energy_hessian(tm, cfg);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const cplx d = (hp(a, b) - hm(a, b)) / (2.0 * h);
                worst = std::max(worst, std::abs(d - etal(a, b)));
            }
        }
    }
    return worst;
}

double check_associativity(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, wdvv_residual(sample_flat_point(rng), cfg));
    }
    return worst;
}

double check_quasi_homogeneity(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, euler_residual(sample_flat_point(rng), cfg));
    }
    return worst;
}

double check_euler_intersection(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    const Metric4 etal = saito_metric_lowered();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const FlatPoint t = sample_flat_point(rng);
        const StructureConstants s = structure_constants(t, cfg);
        const Metric4 g = intersection_form_flat(t, cfg);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const cplx lhs = t.t1 * s(b, 0, a) + t.t2 * s(b, 1, a);
                cplx rhs = 0.0;
                for (int m = 0; m < 4; ++m) rhs += etal(a, m) * g(m, b);
                worst = std::max(worst, rel(lhs, rhs));
            }
        }
    }
    return worst;
}

double check_spectrum_distinct(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    // residual = (required gap)/(observed min gap); pass while <= 1.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ev = canonical_spectrum(sample_flat_point(rng), cfg);
        double min_gap = 1e300;
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                min_gap = std::min(min_gap, std::abs(ev[a] - ev[b]));
            }
        }
        worst = std::max(worst, 1e-6 / min_gap);
    }
    return worst;
}

double check_detjac_roots(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        DomainPoint p = sample_domain_point(rng);
        const std::array<cplx, 4> roots{cplx{0.0, 0.0}, cplx{0.5, 0.0}, p.tau / 2.0,
                                        (1.0 + p.tau) / 2.0};
        for (const cplx& r : roots) {
            p.v0 = r;
            worst = std::max(worst, std::abs(det_jacobian(p, cfg)));
        }
    }
    return worst;
}

double check_potential(SplitMix64& rng, int n, const SeriesConfig& cfg) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, metric_potential_residual(sample_flat_point(rng), cfg));
    }
    return worst;
}

std::vector<Check> make_checks() {
    return {
        {"detjac.roots",
         "det d(phi0,phi1,v2,tau)/d(v0,v2,tau,u) = 0 at v0 in {0, 1/2, tau/2, (1+tau)/2}",
         50, 1e-10, check_detjac_roots},
        {"euler.intersection",
         "t^1 c^b_{1a} + t^2 c^b_{2a} = eta_{am} g^{mb}",
         20, 1e-6, check_euler_intersection},
        {"metric.equivalence",
         "closed-form g^{ab}(t) equals pushforward of 2dv0^2 - 2dv2^2 + 2du dtau",
         20, 1e-6, check_metric_equivalence},
        {"metric.saito_constancy",
         "d g^{ab}/dt1 is constant with entries eta^{14} = -2 pi i, eta^{23} = -1/2",
         10, 1e-7, check_saito_constancy},
        {"potential.hessian",
         "g^{ab} = deg(g^{ab}) eta^{aa'} eta^{bb'} d_{a'} d_{b'} F for deg != 0",
         20, 1e-6, check_potential},
        {"spectrum.distinct",
         "eigenvalues of eta^{-1} g are pairwise distinct (gap > 1e-6); residual = 1e-6/min gap",
         50, 1.0, check_spectrum_distinct},
        {"superpotential.expansion",
         "lambda(v) = phi1 [zeta(v-v2) - zeta(v+v2) + 2 zeta(v2)] + phi0",
         100, 1e-8, check_superpotential_expansion},
        {"superpotential.invariance",
         "lambda(v/(c tau+d); g.p) = lambda(v; p) for random group elements",
         100, 1e-8, check_superpotential_invariance},
        {"theta.heat_equation",
         "theta1'' = 4 pi i dtau theta1",
         100, 1e-10, check_heat},
        {"theta.modularity",
         "theta1(v/(c tau+d), g tau)/theta1'(0, g tau) = (c tau+d)^{-1} e^{pi i c v^2/(c tau+d)} theta1(v,tau)/theta1'(0,tau)",
         100, 1e-8, check_modularity},
        {"theta.quasi_periodicity",
         "theta1(v+mu+lambda tau) = (-1)^{lambda+mu} e^{-2 pi i (lambda v + lambda^2 tau/2)} theta1(v)",
         100, 1e-8, check_quasi_periodicity},
        {"theta.triple_zeta",
         "x+y+z=0 log-derivative identity for theta1 (squared zeta sums against wp sums)",
         100, 1e-7, check_triple_zeta},
        {"theta.triple_zeta_derivative",
         "v2-derivative of the x=v2, y=-v2 specialization of the triple identity",
         100, 1e-7, check_triple_zeta_derivative},
        {"wdvv.associativity",
         "sum_m (c^m_{ab} c^d_{mg} - c^m_{gb} c^d_{ma}) = 0",
         50, 1e-5, check_associativity},
        {"wdvv.normalization",
         "d^3 F/dt1 dt^a dt^b = eta_{ab}",
         50, 1e-8, check_normalization},
        {"wdvv.quasi_homogeneity",
         "t1 d1 F + t2 d2 F = 2F - (t2)^2  [the inhomogeneous term is (t2)^2, "
         "confirmed by direct differentiation; a linear 2 t2 term does not close]",
         50, 1e-7, check_quasi_homogeneity},
    };
}

}  // namespace

DomainPoint sample_domain_point(SplitMix64& rng) {
    DomainPoint p;
    p.tau = sample_tau(rng);
    p.u = rng.disk(0.3);
    for (;;) {
        p.v2 = {rng.uniform(-0.45, 0.45), rng.uniform(-0.2, 0.2)};
        if (lattice_distance(2.0 * p.v2, p.tau) >= 0.1) break;
    }
    for (;;) {
        p.v0 = rng.disk(0.4);
        if (std::abs(p.v0) < 0.05) continue;
        if (lattice_distance(2.0 * p.v0, p.tau) < 0.05) continue;
        if (lattice_distance(p.v0 - p.v2, p.tau) < 0.05) continue;
        if (lattice_distance(p.v0 + p.v2, p.tau) < 0.05) continue;
        return p;
    }
}

FlatPoint sample_flat_point(SplitMix64& rng) {
    FlatPoint t;
    t.t4 = sample_tau(rng);
    t.t1 = rng.disk(1.0);
    const double r = rng.uniform(0.5, 2.0);
    const double ang = 2.0 * kPi * rng.next_double();
    t.t2 = {r * std::cos(ang), r * std::sin(ang)};
    for (;;) {
        t.t3 = {rng.uniform(-0.35, 0.35), rng.uniform(-0.25, 0.25)};
        if (std::abs(t.t3) >= 0.07 && lattice_distance(2.0 * t.t3, t.t4) >= 0.1) break;
    }
    return t;
}

GroupElement sample_group_element(SplitMix64& rng, int max_word_len) {
    GroupElement g;
    g.w = rng.next_double() < 0.5 ? 1 : -1;
    for (int i = 0; i < 2; ++i) {
        g.lambda[i] = rng.uniform_int(-2, 2);
        g.mu[i] = rng.uniform_int(-2, 2);
    }
    g.k = rng.uniform_int(-2, 2);
    const int len = static_cast<int>(rng.uniform_int(0, max_word_len));
    std::array<std::int64_t, 4> m{1, 0, 0, 1};
    for (int i = 0; i < len; ++i) {
        // letters: S = (0,-1;1,0), T = (1,1;0,1)
        const bool s = rng.next_double() < 0.5;
        const std::array<std::int64_t, 4> l = s ? std::array<std::int64_t, 4>{0, -1, 1, 0}
                                                : std::array<std::int64_t, 4>{1, 1, 0, 1};
        m = {m[0] * l[0] + m[1] * l[2], m[0] * l[1] + m[1] * l[3],
             m[2] * l[0] + m[3] * l[2], m[2] * l[1] + m[3] * l[3]};
    }
    g.gamma = m;
    return g;
}

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& c : make_checks()) names.push_back(c.name);
    return names;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    for (const auto& [name, tol] : cfg.tol_overrides) {
        bool known = false;
        for (const auto& c : make_checks()) known = known || c.name == name;
        if (!known) throw std::invalid_argument("unknown check name in tolerance override: " + name);
    }

    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.seed = cfg.seed;
    report.samples = cfg.samples;
    report.version = kVersion;
    report.pass = true;

    for (const auto& check : make_checks()) {
        CheckResult r;
        r.name = check.name;
        r.identity = check.identity;
        r.samples = std::max(1, check.base_samples * cfg.samples / 50);
        r.tolerance = check.tolerance;
        if (auto it = cfg.tol_overrides.find(check.name); it != cfg.tol_overrides.end()) {
            r.tolerance = it->second;
        }
        SplitMix64 rng(cfg.seed ^ fnv1a(check.name));
        try {
            r.max_residual = check.run(rng, r.samples, cfg.series);
        } catch (const std::exception&) {
            // A throwing check still yields a (failed) entry so the report
            // stays complete.
            r.max_residual = std::numeric_limits<double>::infinity();
        }
        r.pass = r.max_residual <= r.tolerance;
        report.pass = report.pass && r.pass;
        report.checks.push_back(std::move(r));
    }
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"version\": \"" << report.version << "\",\n";
    os << "  \"seed\": " << report.seed << ",\n";
    os << "  \"samples\": " << report.samples << ",\n";
    os << "  \"wall_time_seconds\": " << fmt17(report.wall_time_seconds) << ",\n";
    os << "  \"pass\": " << (report.pass ? "true" : "false") << ",\n";
    os << "  \"checks\": [\n";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        os << "    {\"name\": \"" << c.name << "\", "
           << "\"identity\": \"" << c.identity << "\", "
           << "\"samples\": " << c.samples << ", "
           << "\"max_residual\": " << fmt17(c.max_residual) << ", "
           << "\"tolerance\": " << fmt17(c.tolerance) << ", "
           << "\"pass\": " << (c.pass ? "true" : "false") << "}";
        os << (i + 1 < report.checks.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

}  // namespace jf
