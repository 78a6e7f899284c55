#ifndef JF_TYPES_HPP
#define JF_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace jf {

using cplx = std::complex<double>;

/// Thrown when an input lies outside a function's guarded domain
/// (e.g. Im(tau) below the series floor).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Thrown when a truncated series reaches max_terms without meeting
/// the stopping criterion.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when an evaluation point is within the guard distance of a pole.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& msg) : std::domain_error(msg) {}
};

/// Newton inversion failed to reach the residual target.
struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Newton inversion hit a (near-)singular Jacobian.
struct JacobianSingularError : std::runtime_error {
    explicit JacobianSingularError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Truncation and domain-guard parameters shared by all series evaluations.
struct SeriesConfig {
    double tol = 1e-14;       // absolute truncation target, relative to max(1,|sum|)
    int max_terms = 256;
    double im_tau_min = 0.05;
    double pole_guard = 1e-6; // minimum distance from a lattice point

    void validate() const {
        if (!(tol > 0.0)) throw std::invalid_argument("SeriesConfig: tol must be > 0");
        if (max_terms < 8) throw std::invalid_argument("SeriesConfig: max_terms must be >= 8");
        if (!(im_tau_min > 0.0)) throw std::invalid_argument("SeriesConfig: im_tau_min must be > 0");
    }
};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace jf

#endif
