#pragma once
#include "magscan/tridiag.hpp"

#include <cstddef>
#include <vector>

namespace magscan {

struct EigenPair {
    double value = 0;
    std::vector<double> vector;  // physical-space u, weighted norm 1
    double residual_norm = 0;    // ||(T - value I) y||_2 / (||T||_inf) in hat space
};

// Number of eigenvalues of T strictly below x (Sturm sequence count).
std::size_t sturm_count(const SymmetricTridiagonal& T, double x);

// k smallest eigenvalues, ascending, by Sturm bisection from the
// Gershgorin bracket. Absolute accuracy is limited by the usual
// eps*||T|| floor of the symmetric eigenproblem.
std::vector<double> smallest_eigenvalues(const SymmetricTridiagonal& T, std::size_t k);

// Inverse iteration at the given (already accurate) eigenvalue estimate.
// The returned vector has unit weighted norm and its largest-magnitude
// entry is positive. Throws numerical_error when the iteration does not
// converge within 50 sweeps (value far from the spectrum).
EigenPair eigenvector(const SymmetricTridiagonal& T, double value);

// Ground-state energy. Bisection for the smallest eigenvalue, then (when
// the quadratic-form decomposition is available and the eigenvalue is
// isolated) polished by a form-based Rayleigh quotient of the inverse
// iteration vector. The polish removes the eps*||T|| noise floor, which
// the curve second-differences downstream depend on.
double ground_energy(const SymmetricTridiagonal& T);

// Same, also returning the eigenvector.
EigenPair ground_pair(const SymmetricTridiagonal& T);

// Regularized resolvent at an eigenvalue: solves (T - value) x = P b on
// {ground}^perp, where P projects off the ground vector and everything is
// expressed in physical space with the weighted inner product. ground
// must be the (weighted-normalized) eigenvector belonging to value.
std::vector<double> regularized_solve(const SymmetricTridiagonal& T, double value,
                                      const std::vector<double>& ground,
                                      const std::vector<double>& b);

// Weighted inner product sum_i a_i b_i w_i.
double weighted_dot(const SymmetricTridiagonal& T, const std::vector<double>& a,
                    const std::vector<double>& b);

} // namespace magscan
