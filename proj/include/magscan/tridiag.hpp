#pragma once
#include <cstddef>
#include <vector>

namespace magscan {

// Symmetric tridiagonal representation of a discretized fiber operator.
//
// diag/offdiag describe the symmetrized matrix T acting on "hat" vectors
// y_i = sqrt(weight_i) * u_i, where u is the physical eigenfunction sampled
// at the grid nodes and weight_i is the node mass (r_i*h for the radial
// measure r dr, plain h for flat half-line/line model operators). The
// eigenvalues of T are the generalized eigenvalues of the underlying
// stiffness/mass pair, and Euclidean orthonormality of hat vectors is
// weighted orthonormality of the u's.
//
// edge/pot_mass, when present, store the quadratic-form decomposition
//   q[u] = edge[0]*u_0^2 + sum_{j=1}^{n-1} edge[j]*(u_j - u_{j-1})^2
//        + edge[n]*u_{n-1}^2 + sum_i pot_mass[i]*u_i^2
// (edge[0]/edge[n] are Dirichlet wall closures; zero for natural ends).
// All terms are non-negative for the operators built here, so the form
// evaluates Rayleigh quotients without the catastrophic cancellation the
// assembled matrix suffers from. Builders fill these; hand-made matrices
// may leave them empty.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::vector<double> weight;

    std::vector<double> edge;     // size n+1 when present
    std::vector<double> pot_mass; // size n when present

    std::size_t size() const { return diag.size(); }
    bool has_form() const { return !edge.empty(); }

    // max row sum of |entries|
    double inf_norm() const;

    // q[u] for a physical-space vector u (requires has_form()).
    double form_value(const std::vector<double>& u) const;

    // throws std::invalid_argument on inconsistent lengths / non-positive weights
    void validate() const;
};

SymmetricTridiagonal make_tridiagonal(std::vector<double> diag,
                                      std::vector<double> offdiag,
                                      std::vector<double> weight = {});

} // namespace magscan
