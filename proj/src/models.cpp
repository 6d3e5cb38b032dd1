#include "magscan/models.hpp"
#include "magscan/eigen.hpp"
#include "magscan/errors.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace magscan {

namespace {

// Cell-centered tridiagonal for -u'' + V(rho) on [a,b] with the given wall
// conditions (flat measure).
SymmetricTridiagonal line_operator(const std::function<double(double)>& V, double a, double b,
                                   std::size_t n, bool left_dirichlet, bool right_dirichlet,
                                   std::vector<double>* nodes_out) {
    const double h = (b - a) / static_cast<double>(n);
    SymmetricTridiagonal T;
    T.weight.assign(n, h);
    T.edge.assign(n + 1, 1.0 / h);
    T.edge[0] = left_dirichlet ? 2.0 / h : 0.0;
    T.edge[n] = right_dirichlet ? 2.0 / h : 0.0;
    T.pot_mass.resize(n);
    T.diag.resize(n);
    T.offdiag.assign(n - 1, -1.0 / (h * h));
    if (nodes_out) nodes_out->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = a + (static_cast<double>(i) + 0.5) * h;
        if (nodes_out) (*nodes_out)[i] = rho;
        T.pot_mass[i] = V(rho) * h;
        T.diag[i] = (T.edge[i] + T.edge[i + 1] + T.pot_mass[i]) / h;
    }
    return T;
}

double first_moment(const ModelSolution& s) {
    double acc = 0;
    for (std::size_t i = 0; i < s.psi.size(); ++i)
        acc += (s.rho[i] - s.param) * s.psi[i] * s.psi[i] * s.T.weight[i];
    return acc;
}

double moment(const ModelSolution& s, const std::function<double(double)>& f) {
    double acc = 0;
    for (std::size_t i = 0; i < s.psi.size(); ++i)
        acc += f(s.rho[i]) * s.psi[i] * s.psi[i] * s.T.weight[i];
    return acc;
}

// <psi, psi'> with centered differences (one-sided second order at the ends)
double derivative_moment(const ModelSolution& s) {
    const std::size_t n = s.psi.size();
    const double h = s.T.weight[0];
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dp;
        if (i == 0)
            dp = (-1.5 * s.psi[0] + 2.0 * s.psi[1] - 0.5 * s.psi[2]) / h;
        else if (i + 1 == n)
            dp = (1.5 * s.psi[n - 1] - 2.0 * s.psi[n - 2] + 0.5 * s.psi[n - 3]) / h;
        else
            dp = (s.psi[i + 1] - s.psi[i - 1]) / (2.0 * h);
        acc += s.psi[i] * dp * s.T.weight[i];
    }
    return acc;
}

struct DeGennesGridQuantities {
    double xi0, theta0, phi0sq, dd;
    std::array<double, 7> moments;
};

DeGennesGridQuantities degennes_on_grid(std::size_t n, double L) {
    auto curve = [&](double xi) { return degennes_curve(xi, n, L); };

    // golden-section bracket [0.5, 1.1] to width 1e-10
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.5, b = 1.1;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = curve(x1), f2 = curve(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = curve(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = curve(x2);
        }
    }
    double xi = 0.5 * (a + b);

    // The curve evaluations carry an eps*||T|| staircase, so the golden
    // bracket localizes the minimizer only to ~1e-5. Polish with the
    // Feynman-Hellmann derivative lambda'(xi) = -2 <psi,(rho-xi)psi>, whose
    // evaluation is smooth: secant iteration on the first moment.
    auto fm = [&](double x) { return first_moment(degennes_solution(x, n, L)); };
    double x_prev = xi - 1e-4, x_cur = xi;
    double g_prev = fm(x_prev), g_cur = fm(x_cur);
    for (int it = 0; it < 40; ++it) {
        if (g_cur == g_prev) break;
        const double x_next = x_cur - g_cur * (x_cur - x_prev) / (g_cur - g_prev);
        x_prev = x_cur; g_prev = g_cur;
        x_cur = x_next; g_cur = fm(x_cur);
        if (std::fabs(x_cur - x_prev) < 1e-13 * std::max(1.0, std::fabs(x_cur))) break;
    }
    if (!(x_cur > 0.5 && x_cur < 1.1))
        throw numerical_error("degennes: minimizer polish left the bracket");
    xi = x_cur;

    DeGennesGridQuantities q;
    q.xi0 = xi;
    const ModelSolution sol = degennes_solution(xi, n, L);
    q.theta0 = sol.lambda;
    q.phi0sq = boundary_value(sol) * boundary_value(sol);

    const double s = 1e-3;
    q.dd = (curve(xi + s) - 2.0 * sol.lambda + curve(xi - s)) / (s * s);

    q.moments[0] = moment(sol, [](double) { return 1.0; });
    q.moments[1] = first_moment(sol);
    q.moments[2] = moment(sol, [&](double r) { return (r - xi) * (r - xi); });
    q.moments[3] = moment(sol, [&](double r) { return (r - xi) * (r - xi) * (r - xi); });
    q.moments[4] = moment(sol, [](double r) { return r; });
    q.moments[5] = moment(sol, [](double r) { return r * r * r; });
    q.moments[6] = derivative_moment(sol);
    return q;
}

} // namespace

double degennes_curve(double xi, std::size_t n, double L) {
    if (n < 1000) throw std::invalid_argument("degennes_curve: n must be >= 1000");
    if (L < xi + 8.0)
        throw resolution_error("degennes_curve: window too small, need L >= xi + 8");
    auto T = line_operator([xi](double r) { return (r - xi) * (r - xi); }, 0.0, L, n,
                           /*left_dirichlet=*/false, /*right_dirichlet=*/true, nullptr);
    return ground_energy(T);
}

ModelSolution degennes_solution(double xi, std::size_t n, double L) {
    if (n < 1000) throw std::invalid_argument("degennes_solution: n must be >= 1000");
    if (L < xi + 8.0)
        throw resolution_error("degennes_solution: window too small, need L >= xi + 8");
    ModelSolution s;
    s.param = xi;
    s.T = line_operator([xi](double r) { return (r - xi) * (r - xi); }, 0.0, L, n, false, true,
                        &s.rho);
    EigenPair p = ground_pair(s.T);
    s.lambda = p.value;
    s.psi = std::move(p.vector);
    return s;
}

double montgomery_curve(double alpha, std::size_t n, double L) {
    if (n < 2000) throw std::invalid_argument("montgomery_curve: n must be >= 2000");
    if (L < 6.0 + std::cbrt(std::fabs(3.0 * alpha)))
        throw resolution_error("montgomery_curve: window too small, need L >= 6 + |3a|^(1/3)");
    auto T = line_operator(
        [alpha](double r) {
            const double p = r * r * r / 3.0 - alpha;
            return p * p;
        },
        -L, L, n, true, true, nullptr);
    return ground_energy(T);
}

ModelSolution montgomery_solution(double alpha, std::size_t n, double L) {
    if (n < 2000) throw std::invalid_argument("montgomery_solution: n must be >= 2000");
    if (L < 6.0 + std::cbrt(std::fabs(3.0 * alpha)))
        throw resolution_error("montgomery_solution: window too small");
    ModelSolution s;
    s.param = alpha;
    s.T = line_operator(
        [alpha](double r) {
            const double p = r * r * r / 3.0 - alpha;
            return p * p;
        },
        -L, L, n, true, true, &s.rho);
    EigenPair p = ground_pair(s.T);
    s.lambda = p.value;
    s.psi = std::move(p.vector);
    return s;
}

double boundary_value(const ModelSolution& s) {
    // nodes sit at h/2, 3h/2, 5h/2: quadratic extrapolation to 0
    return (15.0 * s.psi[0] - 10.0 * s.psi[1] + 3.0 * s.psi[2]) / 8.0;
}

DeGennesResult degennes_constants(std::size_t n, double L) {
    const DeGennesGridQuantities c = degennes_on_grid(n, L);
    const DeGennesGridQuantities f = degennes_on_grid(2 * n, L);
    auto rich = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };
    DeGennesResult r;
    r.theta0 = rich(c.theta0, f.theta0);
    r.xi0 = rich(c.xi0, f.xi0);
    r.phi0sq = rich(c.phi0sq, f.phi0sq);
    r.ddlambda_xi = rich(c.dd, f.dd);
    for (int i = 0; i < 7; ++i) r.moment_residuals[i] = rich(c.moments[i], f.moments[i]);
    r.meta = {2 * n, L, 2};
    r.fine = degennes_solution(f.xi0, 2 * n, L);

    // turn extrapolated moments into deviations from the closed forms
    const double x = r.xi0, p = r.phi0sq;
    const double targets[7] = {1.0, 0.0, x * x / 2.0, p / 6.0, x, p / 6.0 + 2.5 * x * x * x,
                               -p / 2.0};
    for (int i = 0; i < 7; ++i) r.moment_residuals[i] = std::fabs(r.moment_residuals[i] - targets[i]);
    return r;
}

std::array<double, 7> degennes_moments(const DeGennesResult& r) { return r.moment_residuals; }

SecondDGIdentity seconddG_identity(const DeGennesResult& r) {
    const ModelSolution& s = r.fine;
    std::vector<double> b(s.psi.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = (s.rho[i] - s.param) * s.psi[i];
    const std::vector<double> x = regularized_solve(s.T, s.lambda, s.psi, b);
    SecondDGIdentity out;
    out.value = 1.0 - 4.0 * weighted_dot(s.T, b, x);
    out.residual = std::fabs(out.value - r.xi0 * r.phi0sq);
    return out;
}

MontgomeryResult montgomery_constants(std::size_t n, double L) {
    MontgomeryResult r;
    const double xi_c = montgomery_curve(0.0, n, L);
    const double xi_f = montgomery_curve(0.0, 2 * n, L);
    r.Xi = (4.0 * xi_f - xi_c) / 3.0;
    r.meta = {2 * n, L, 2};

    // curvature at 0: central second difference, Richardson over steps s, s/2
    auto curve_fine = [&](double a) { return montgomery_curve(a, 2 * n, L); };
    const double l0 = xi_f;
    auto secdiff = [&](double s) { return (curve_fine(s) - 2.0 * l0 + curve_fine(-s)) / (s * s); };
    const double d1 = secdiff(1e-2), d2 = secdiff(5e-3);
    r.c0 = (4.0 * d2 - d1) / 3.0;

    // resolvent form of the curvature
    const ModelSolution sol = montgomery_solution(0.0, 2 * n, L);
    std::vector<double> b(sol.psi.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = (sol.rho[i] * sol.rho[i] * sol.rho[i] / 3.0) * sol.psi[i];
    const std::vector<double> x = regularized_solve(sol.T, sol.lambda, sol.psi, b);
    r.c0_resolvent = 2.0 - 8.0 * weighted_dot(sol.T, b, x);

    // minimality scan, also tracking the second eigenvalue; compared against
    // the same grid's alpha=0 value so h^2 bias cancels
    double best = 1e300, best_alpha = 0, l2inf = 1e300, scan_at_zero = 0;
    for (int i = -40; i <= 40; ++i) {
        const double alpha = 0.05 * i;
        auto T = montgomery_solution(alpha, n, L).T;
        const auto ev = smallest_eigenvalues(T, 2);
        if (i == 0) scan_at_zero = ev[0];
        if (ev[0] < best) {
            best = ev[0];
            best_alpha = alpha;
        }
        l2inf = std::min(l2inf, ev[1]);
    }
    if (best < scan_at_zero - 1e-9)
        throw numerical_error(
            "montgomery: scan found an interior value below Xi (discretization bug): " +
            std::to_string(best));
    r.scan_argmin = best_alpha;
    r.lambda2_scan_inf = l2inf;
    return r;
}

void ModelConstants::validate() const {
    if (!(theta0 > 0 && theta0 < 1))
        throw numerical_error("model constants: theta0 outside (0,1)");
    if (std::fabs(xi0 * xi0 - theta0) > 1e-8)
        throw numerical_error("model constants: xi0^2 != theta0 beyond 1e-8");
    if (std::fabs(ddlambda_xi - 2.0 * xi0 * phi0sq) > 1e-3 * std::fabs(ddlambda_xi))
        throw numerical_error("model constants: curve curvature != 2 xi0 phi0^2");
    if (!(Xi > 0.618 && Xi < 0.664))
        throw numerical_error("model constants: Xi outside (0.618, 0.664)");
}

ModelConstants compute_model_constants(std::size_t degennes_n, double degennes_L,
                                       std::size_t montgomery_n, double montgomery_L) {
    const DeGennesResult dg = degennes_constants(degennes_n, degennes_L);
    const MontgomeryResult mg = montgomery_constants(montgomery_n, montgomery_L);
    ModelConstants mc;
    mc.theta0 = dg.theta0;
    mc.xi0 = dg.xi0;
    mc.phi0sq = dg.phi0sq;
    mc.ddlambda_xi = dg.ddlambda_xi;
    mc.Xi = mg.Xi;
    mc.c0 = mg.c0;
    mc.degennes_meta = dg.meta;
    mc.montgomery_meta = mg.meta;
    mc.validate();
    return mc;
}

} // namespace magscan
