#pragma once
#include "magscan/tridiag.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace magscan {

// Universal spectral constants of the two 1D model operators that control
// every boundary/well asymptotic formula downstream:
//   half-line de Gennes oscillator  -u'' + (rho - xi)^2 u, Neumann at 0
//   whole-line Montgomery operator  -u'' + (rho^3/3 - alpha)^2 u
struct ModelConstants {
    double theta0 = 0;      // min over xi of the de Gennes ground energy
    double xi0 = 0;         // the minimizer (= sqrt(theta0))
    double phi0sq = 0;      // ground state boundary value squared at xi0
    double ddlambda_xi = 0; // curvature of the de Gennes curve at xi0
    double Xi = 0;          // Montgomery ground energy at alpha = 0
    double c0 = 0;          // curvature of the Montgomery curve at alpha = 0

    struct GridMeta {
        std::size_t n = 0;
        double half_width = 0;
        int extrapolation_order = 0;
    };
    GridMeta degennes_meta, montgomery_meta;

    // throws numerical_error when a universal identity fails its tolerance
    void validate() const;
};

// Ground energy of the de Gennes operator on [0, L], Neumann at 0,
// Dirichlet at L, cell-centered grid with n nodes.
double degennes_curve(double xi, std::size_t n, double L);

double montgomery_curve(double alpha, std::size_t n, double L);

// One converged model ground state (kept for moment/resolvent identities).
struct ModelSolution {
    SymmetricTridiagonal T;
    std::vector<double> rho;
    std::vector<double> psi;
    double lambda = 0;
    double param = 0; // xi or alpha
};
ModelSolution degennes_solution(double xi, std::size_t n, double L);
ModelSolution montgomery_solution(double alpha, std::size_t n, double L);

// Boundary value psi(0) by one-sided quadratic extrapolation from the first
// three half-cell nodes.
double boundary_value(const ModelSolution& s);

struct DeGennesResult {
    double theta0 = 0, xi0 = 0, phi0sq = 0, ddlambda_xi = 0;
    ModelConstants::GridMeta meta;
    ModelSolution fine; // ground pair at xi0 on the fine (2n) grid
    std::array<double, 7> moment_residuals{};
};

// Minimizes the de Gennes curve (golden section to width 1e-10, then a
// first-moment Feynman-Hellmann polish that reaches the discrete minimum to
// rounding), Richardson-extrapolated over grids n and 2n.
DeGennesResult degennes_constants(std::size_t n, double L);

// Deviations of the seven ground-state moments from their closed forms:
//  <p,p>=1, <p,(rho-xi0)p>=0, <p,(rho-xi0)^2 p>=xi0^2/2,
//  <p,(rho-xi0)^3 p>=phi0^2/6, <p,rho p>=xi0,
//  <p,rho^3 p>=phi0^2/6+5 xi0^3/2, <p,p'>=-phi0^2/2.
std::array<double, 7> degennes_moments(const DeGennesResult& r);

struct SecondDGIdentity {
    double value = 0;    // 1 - 4 <(rho-xi0)p, reg[(rho-xi0)p]>
    double residual = 0; // |value - xi0 phi0^2|
};
SecondDGIdentity seconddG_identity(const DeGennesResult& r);

struct MontgomeryResult {
    double Xi = 0, c0 = 0;
    double c0_resolvent = 0;     // 2 - 8 <(rho^3/3)u, reg[(rho^3/3)u]>
    double lambda2_scan_inf = 0; // inf of the second eigenvalue over the alpha scan
    double scan_argmin = 0;
    ModelConstants::GridMeta meta;
};

// Xi with Richardson over n and 2n; c0 by central second differences
// (step 1e-2, Richardson over two steps); minimality verified by an alpha
// scan over [-2,2] step 0.05 (a scan value below Xi - 1e-9 signals a
// discretization bug and throws).
MontgomeryResult montgomery_constants(std::size_t n, double L);

// Convenience: both families with the default grids.
ModelConstants compute_model_constants(std::size_t degennes_n = 6000, double degennes_L = 12.0,
                                       std::size_t montgomery_n = 4000,
                                       double montgomery_L = 8.0);

} // namespace magscan
