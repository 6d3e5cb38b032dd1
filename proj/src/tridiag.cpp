#include "magscan/tridiag.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace magscan {

double SymmetricTridiagonal::inf_norm() const {
    const std::size_t n = size();
    double nrm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::fabs(diag[i]);
        if (i > 0) row += std::fabs(offdiag[i - 1]);
        if (i + 1 < n) row += std::fabs(offdiag[i]);
        nrm = std::max(nrm, row);
    }
    return nrm;
}

double SymmetricTridiagonal::form_value(const std::vector<double>& u) const {
    const std::size_t n = size();
    double q = edge[0] * u[0] * u[0] + edge[n] * u[n - 1] * u[n - 1];
    for (std::size_t j = 1; j < n; ++j) {
        const double du = u[j] - u[j - 1];
        q += edge[j] * du * du;
    }
    for (std::size_t i = 0; i < n; ++i) q += pot_mass[i] * u[i] * u[i];
    return q;
}

void SymmetricTridiagonal::validate() const {
    const std::size_t n = size();
    if (n == 0) throw std::invalid_argument("tridiagonal: empty matrix");
    if (offdiag.size() + 1 != n)
        throw std::invalid_argument("tridiagonal: offdiag length must be n-1");
    if (weight.size() != n)
        throw std::invalid_argument("tridiagonal: weight length must be n");
    for (double w : weight)
        if (!(w > 0)) throw std::invalid_argument("tridiagonal: weights must be positive");
    if (!edge.empty() && (edge.size() != n + 1 || pot_mass.size() != n))
        throw std::invalid_argument("tridiagonal: malformed form decomposition");
}

SymmetricTridiagonal make_tridiagonal(std::vector<double> diag, std::vector<double> offdiag,
                                      std::vector<double> weight) {
    SymmetricTridiagonal T;
    T.diag = std::move(diag);
    T.offdiag = std::move(offdiag);
    if (weight.empty()) weight.assign(T.diag.size(), 1.0);
    T.weight = std::move(weight);
    T.validate();
    return T;
}

} // namespace magscan
