#ifndef JF_FROBENIUS_HPP
#define JF_FROBENIUS_HPP

#include <array>

#include "jf/group.hpp"
#include "jf/types.hpp"

namespace jf {

/// Flat coordinates (t1, t2, t3, t4) of the Saito metric.
/// Invariants: Im(t4) > 0, t2 != 0, 2*t3 away from the lattice Z + t4*Z.
struct FlatPoint {
    cplx t1{}, t2{}, t3{}, t4{};
    cplx operator[](int i) const {
        return i == 0 ? t1 : i == 1 ? t2 : i == 2 ? t3 : t4;
    }
};

/// Symmetric 4x4 complex matrix (intersection form, Saito metric, Hessians).
/// Indices follow the coordinate order of the space it lives on.
struct Metric4 {
    std::array<std::array<cplx, 4>, 4> m{};
    cplx& operator()(int i, int j) { return m[i][j]; }
    const cplx& operator()(int i, int j) const { return m[i][j]; }
};

/// Totally symmetric rank-3 tensor c[a][b][c] of third derivatives.
struct ThirdDerivTensor {
    std::array<std::array<std::array<cplx, 4>, 4>, 4> c{};
    cplx& operator()(int a, int b, int g) { return c[a][b][g]; }
    const cplx& operator()(int a, int b, int g) const { return c[a][b][g]; }
};

/// Rank-3 structure constants c^g_{ab} (first index raised).
struct StructureConstants {
    std::array<std::array<std::array<cplx, 4>, 4>, 4> c{};
    cplx& operator()(int up, int a, int b) { return c[up][a][b]; }
    const cplx& operator()(int up, int a, int b) const { return c[up][a][b]; }
};

/// Flat coordinates from a domain point:
/// t1 = phi0 + 2 t2 theta1'(v2)/theta1(v2), t2 = phi1, t3 = v2, t4 = tau.
FlatPoint flat_from_domain(const DomainPoint& p, const SeriesConfig& cfg = {});

/// Newton inversion of flat_from_domain in (u, v0) with (v2, tau) = (t3, t4)
/// fixed. The guess must lie in the basin (take a forward-evaluated
/// neighbour). Residual target 1e-10; NoConvergenceError after 50
/// iterations; JacobianSingularError near the v0 = 0 degeneration.
DomainPoint domain_from_flat(const FlatPoint& t, const DomainPoint& guess,
                             const SeriesConfig& cfg = {});

/// Constant contravariant intersection form in domain coordinates
/// (u, v0, v2, tau): g^{u tau} = 1, g^{v0 v0} = 1/2, g^{v2 v2} = -1/2.
Metric4 intersection_form_domain();

/// Closed-form contravariant intersection form in flat coordinates.
/// The mixed d^2/dt3 dtau entry is evaluated through term-wise theta
/// derivatives, never by double finite differences.
Metric4 intersection_form_flat(const FlatPoint& t, const SeriesConfig& cfg = {});

/// Independent route: push 2dv0^2 - 2dv2^2 + 2du dtau forward through the
/// finite-difference Jacobian of flat_from_domain (4th-order stencils,
/// step 1e-5, one Richardson step).
Metric4 intersection_form_pushforward(const DomainPoint& p, const SeriesConfig& cfg = {});

/// Saito metric eta^{ab} = d g^{ab}/dt1: constant, eta^{14} = -2 pi i,
/// eta^{23} = -1/2, all other entries zero.
Metric4 saito_metric();

/// Lowered Saito metric eta_{ab} (matrix inverse of saito_metric()):
/// eta_{14} = i/(2 pi), eta_{23} = -2.
Metric4 saito_metric_lowered();

/// Free energy
///   F = (i/4 pi) t1^2 t4 - 2 t1 t2 t3 - t2^2 log(t2 theta1'(0,t4)/theta1(2 t3,t4))
/// with the principal log branch. Third derivatives are branch-independent.
cplx free_energy(const FlatPoint& t, const SeriesConfig& cfg = {});

/// Analytic gradient and Hessian of F (closed forms).
std::array<cplx, 4> free_energy_grad(const FlatPoint& t, const SeriesConfig& cfg = {});
Metric4 free_energy_hessian(const FlatPoint& t, const SeriesConfig& cfg = {});

/// All third derivatives of F in closed form (polynomial part plus
/// log/theta part through term-wise theta derivatives). The
/// finite-difference oracle for every entry lives in the test suite.
ThirdDerivTensor third_derivatives(const FlatPoint& t, const SeriesConfig& cfg = {});

/// c^g_{ab} = eta^{gd} c_{abd}.
StructureConstants structure_constants(const FlatPoint& t, const SeriesConfig& cfg = {});

/// max_{a,b,g,d} |sum_m (c^m_{ab} c^d_{mg} - c^m_{gb} c^d_{ma})|,
/// normalized by the largest associator-product magnitude.
double wdvv_residual(const FlatPoint& t, const SeriesConfig& cfg = {});

/// |t1 dF/dt1 + t2 dF/dt2 - 2F + t2^2| (quasi-homogeneity defect).
double euler_residual(const FlatPoint& t, const SeriesConfig& cfg = {});

/// Determinant of the Jacobian of (phi0, phi1, v2, tau) with respect to
/// (v0, v2, tau, u):  -2 pi i e^{-4 pi i u} theta1(2 v0)/theta1(2 v2).
/// Vanishes exactly at v0 in {0, 1/2, tau/2, (1+tau)/2} mod the lattice.
cplx det_jacobian(const DomainPoint& p, const SeriesConfig& cfg = {});

/// Eigenvalues of the Euler multiplication operator eta_{am} g^{mb},
/// computed from the characteristic quartic via a companion-matrix
/// eigensolve, sorted lexicographically by (re, im).
std::array<cplx, 4> canonical_spectrum(const FlatPoint& t, const SeriesConfig& cfg = {});

/// max over index pairs (a,b) with deg = deg t^a + deg t^b != 0 (degrees
/// 1,1,0,0) of |g^{ab} - deg * eta^{aa'} eta^{bb'} d_a' d_b' F| relative.
double metric_potential_residual(const FlatPoint& t, const SeriesConfig& cfg = {});

}  // namespace jf

#endif
