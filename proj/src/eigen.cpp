#include "magscan/eigen.hpp"
#include "magscan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace magscan {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// LU factorization of (T - shift*I) with partial pivoting. Row swaps fill a
// second superdiagonal, which is all a tridiagonal needs.
struct ShiftedLU {
    std::vector<double> dl, d, du, du2;
    std::vector<int> pivot;

    ShiftedLU(const SymmetricTridiagonal& T, double shift) {
        const std::size_t n = T.size();
        dl.assign(n, 0.0);
        d.assign(n, 0.0);
        du.assign(n, 0.0);
        du2.assign(n, 0.0);
        pivot.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) d[i] = T.diag[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            dl[i] = T.offdiag[i];
            du[i] = T.offdiag[i];
        }
        // pivot floor scaled by the matrix so the singular direction is
        // amplified without overflowing
        const double tiny = std::max(std::numeric_limits<double>::min() * 4.0,
                                     kEps * kEps * T.inf_norm());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::fabs(d[i]) >= std::fabs(dl[i])) {
                pivot[i] = 0;
                if (std::fabs(d[i]) < tiny) d[i] = (d[i] < 0 ? -tiny : tiny);
                const double m = dl[i] / d[i];
                d[i + 1] -= m * du[i];
                dl[i] = m; // store multiplier
                if (i + 2 < n) du2[i] = 0.0;
            } else {
                pivot[i] = 1;
                const double m = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = m;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - m * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
            }
        }
        if (std::fabs(d[n - 1]) < tiny) d[n - 1] = (d[n - 1] < 0 ? -tiny : tiny);
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (pivot[i] == 0) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                std::swap(b[i], b[i + 1]);
                b[i + 1] -= dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t j = n; j-- > 2;) {
            const std::size_t i = j - 2;
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
    }
};

void apply(const SymmetricTridiagonal& T, const std::vector<double>& x, std::vector<double>& y) {
    const std::size_t n = T.size();
    for (std::size_t i = 0; i < n; ++i) {
        double v = T.diag[i] * x[i];
        if (i > 0) v += T.offdiag[i - 1] * x[i - 1];
        if (i + 1 < n) v += T.offdiag[i] * x[i + 1];
        y[i] = v;
    }
}

double norm2(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

struct SturmData {
    std::vector<double> e2;
    double pivmin;
};

SturmData sturm_data(const SymmetricTridiagonal& T) {
    SturmData s;
    const std::size_t n = T.size();
    s.e2.resize(n > 0 ? n - 1 : 0);
    double maxe2 = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s.e2[i] = T.offdiag[i] * T.offdiag[i];
        maxe2 = std::max(maxe2, s.e2[i]);
    }
    s.pivmin = std::numeric_limits<double>::min() * maxe2;
    return s;
}

std::size_t count_below(const SymmetricTridiagonal& T, const SturmData& s, double x) {
    const std::size_t n = T.size();
    std::size_t cnt = 0;
    double q = T.diag[0] - x;
    if (q < 0) ++cnt;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::fabs(q) < s.pivmin) q = (q < 0) ? -s.pivmin : s.pivmin;
        q = (T.diag[i] - x) - s.e2[i - 1] / q;
        if (q < 0) ++cnt;
    }
    return cnt;
}

std::pair<double, double> gershgorin(const SymmetricTridiagonal& T) {
    const std::size_t n = T.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0;
        if (i > 0) r += std::fabs(T.offdiag[i - 1]);
        if (i + 1 < n) r += std::fabs(T.offdiag[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    const double pad = kEps * std::max({std::fabs(lo), std::fabs(hi), 1.0});
    return {lo - pad, hi + pad};
}

// Bisect until the bracket is at rounding level relative to the eigenvalue
// itself (not to ||T||): counts stay valid arbitrarily deep, so small
// eigenvalues of huge-norm matrices still come out with full precision.
double bisect_eigenvalue(const SymmetricTridiagonal& T, const SturmData& s, double lo,
                         double hi, std::size_t index) {
    for (int it = 0; it < 210; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(T, s, mid) > index)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::size_t sturm_count(const SymmetricTridiagonal& T, double x) {
    T.validate();
    return count_below(T, sturm_data(T), x);
}

std::vector<double> smallest_eigenvalues(const SymmetricTridiagonal& T, std::size_t k) {
    T.validate();
    const std::size_t n = T.size();
    if (k > n) throw std::invalid_argument("smallest_eigenvalues: k exceeds matrix size");
    if (k == 0) return {};
    const SturmData s = sturm_data(T);
    auto [glo, ghi] = gershgorin(T);
    // locate the k-th smallest as a common upper bound, then peel individually
    std::vector<double> out(k);
    double lo = glo;
    for (std::size_t idx = 0; idx < k; ++idx) {
        out[idx] = bisect_eigenvalue(T, s, lo, ghi, idx);
        lo = out[idx]; // eigenvalues ascend; brackets never overlap
    }
    return out;
}

EigenPair eigenvector(const SymmetricTridiagonal& T, double value) {
    T.validate();
    const std::size_t n = T.size();
    const double tnorm = std::max(T.inf_norm(), 1.0);
    ShiftedLU lu(T, value);
    std::vector<double> y(n), ty(n);
    // deterministic start with no special symmetry
    for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 + 1e-3 * static_cast<double>(i % 17);
    double resid = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 50; ++it) {
        lu.solve(y);
        const double nrm = norm2(y);
        if (!(nrm > 0) || !std::isfinite(nrm))
            throw numerical_error("eigenvector: inverse iteration diverged");
        for (double& v : y) v /= nrm;
        apply(T, y, ty);
        double r = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = ty[i] - value * y[i];
            r += d * d;
        }
        resid = std::sqrt(r) / tnorm;
        if (resid <= 1e-12) break;
        if (it == 49 && resid > 1e-10)
            throw numerical_error("eigenvector: no convergence after 50 iterations, residual " +
                                  std::to_string(resid));
    }
    EigenPair p;
    p.value = value;
    p.residual_norm = resid;
    p.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.vector[i] = y[i] / std::sqrt(T.weight[i]);
    // weighted norm of p.vector equals ||y||_2 = 1 already; fix sign
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(p.vector[i]) > std::fabs(p.vector[imax])) imax = i;
    if (p.vector[imax] < 0)
        for (double& v : p.vector) v = -v;
    return p;
}

EigenPair ground_pair(const SymmetricTridiagonal& T) {
    const std::size_t n = T.size();
    std::vector<double> evs = smallest_eigenvalues(T, std::min<std::size_t>(2, n));
    EigenPair p = eigenvector(T, evs[0]);
    const bool isolated = evs.size() < 2 || (evs[1] - evs[0]) > 1e-8 * std::max(T.inf_norm(), 1.0);
    if (T.has_form() && isolated) {
        const double num = T.form_value(p.vector);
        double den = 0;
        for (std::size_t i = 0; i < n; ++i) den += p.vector[i] * p.vector[i] * T.weight[i];
        p.value = num / den;
    }
    return p;
}

double ground_energy(const SymmetricTridiagonal& T) { return ground_pair(T).value; }

double weighted_dot(const SymmetricTridiagonal& T, const std::vector<double>& a,
                    const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < T.size(); ++i) s += a[i] * b[i] * T.weight[i];
    return s;
}

std::vector<double> regularized_solve(const SymmetricTridiagonal& T, double value,
                                      const std::vector<double>& ground,
                                      const std::vector<double>& b) {
    T.validate();
    const std::size_t n = T.size();
    if (ground.size() != n || b.size() != n)
        throw std::invalid_argument("regularized_solve: size mismatch");
    std::vector<double> sw(n), g(n), bh(n);
    for (std::size_t i = 0; i < n; ++i) {
        sw[i] = std::sqrt(T.weight[i]);
        g[i] = ground[i] * sw[i];
        bh[i] = b[i] * sw[i];
    }
    const double gn = norm2(g);
    if (!(gn > 0)) throw std::invalid_argument("regularized_solve: zero ground vector");
    for (double& v : g) v /= gn;

    const double tnorm = std::max(T.inf_norm(), 1.0);
    std::vector<double> tg(n);
    apply(T, g, tg);
    double gres = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = tg[i] - value * g[i];
        gres += d * d;
    }
    if (std::sqrt(gres) > 1e-6 * tnorm)
        throw numerical_error("regularized_solve: value/ground is not an eigenpair");

    auto project = [&](std::vector<double>& v) {
        double c = 0;
        for (std::size_t i = 0; i < n; ++i) c += g[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * g[i];
    };

    std::vector<double> rhs = bh;
    project(rhs);
    const double rhsn = std::max(norm2(rhs), kEps * norm2(bh));

    // Detuned shift keeps the factorization definite on the deflated space;
    // projected residual refinement removes the detuning error.
    const double tau = 1e-9 * std::max(std::fabs(value), 1.0);
    ShiftedLU lu(T, value - tau);
    std::vector<double> x(n, 0.0), r(n), corr(n);
    bool converged = rhsn <= kEps; // b parallel to ground -> x = 0
    for (int it = 0; it < 60 && !converged; ++it) {
        // r = P(rhs - (T - value) x)
        apply(T, x, r);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - (r[i] - value * x[i]);
        project(r);
        const double rn = norm2(r);
        const double tol = 1e-13 * rhsn + 30.0 * kEps * tnorm * norm2(x);
        if (rn <= tol) {
            converged = true;
            break;
        }
        corr = r;
        lu.solve(corr);
        project(corr);
        for (std::size_t i = 0; i < n; ++i) x[i] += corr[i];
        project(x);
    }
    if (!converged)
        throw numerical_error("regularized_solve: projected refinement did not converge");

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] / sw[i];
    return out;
}

} // namespace magscan
