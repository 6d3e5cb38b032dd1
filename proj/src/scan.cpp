#include "magscan/scan.hpp"
#include "magscan/errors.hpp"
#include "magscan/pool.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace magscan {

namespace {

// Window-center heuristic only; the adaptive search does not depend on its
// precision.
constexpr double kXi0 = 0.768183653;

constexpr double kMaxB = 2.0e4;          // desk-scale cap
constexpr std::size_t kMaxFiberN = 200000;
constexpr std::size_t kMaxFibers = 10000; // runaway guard per ground_state

double dist_to_integers(double x) { return std::fabs(x - std::round(x)); }

double fiber_lambda(const RadialFieldSpec& field, const DomainSpec& domain, long m, double B,
                    std::size_t n) {
    return ground_energy(build_fiber(domain, field, m, B, n));
}

} // namespace

std::pair<long, long> m_window(const RadialFieldSpec& field, const DomainSpec& domain,
                               double B) {
    if (B < 0) throw std::domain_error("m_window: B must be >= 0");
    const double phiB = field.flux() * B;
    double center = phiB;
    if (field.delta() > 0) {
        const double shift = kXi0 * std::sqrt(field.delta() * B);
        if (domain.kind == DomainKind::Disc) center = phiB - shift;
        else if (domain.kind == DomainKind::ExteriorDisc) center = phiB + shift;
    }
    const long mc = std::lround(center);
    const long half = std::max<long>(8, std::lround(std::ceil(4.0 * std::pow(B, 0.25))));
    return {mc - half, mc + half};
}

SpectralPoint ground_state(const RadialFieldSpec& field, const DomainSpec& domain, double B,
                           const ScanParams& params) {
    if (B < 0) throw std::domain_error("ground_state: B must be >= 0");
    if (B > kMaxB)
        throw std::invalid_argument("ground_state: B exceeds the desk-scale cap 2e4");
    std::size_t n = params.grid_n ? params.grid_n : default_fiber_n(domain, field, B);
    n = std::min(n, kMaxFiberN);

    auto [lo, hi] = m_window(field, domain, B);
    std::map<long, double> lambdas;
    auto eval = [&](long m) {
        auto it = lambdas.find(m);
        if (it != lambdas.end()) return it->second;
        const double v = fiber_lambda(field, domain, m, B, n);
        lambdas.emplace(m, v);
        return v;
    };

    long m_best = lo;
    for (int round = 0;; ++round) {
        double best = eval(lo);
        m_best = lo;
        for (long m = lo + 1; m <= hi; ++m) {
            const double v = eval(m);
            if (v < best) {
                best = v;
                m_best = m;
            }
        }
        const bool left_ok = m_best - lo >= 3;
        const bool right_ok = hi - m_best >= 3;
        if (left_ok && right_ok) break;
        if (!left_ok) lo -= 8;
        if (!right_ok) hi += 8;
        if (lambdas.size() + static_cast<std::size_t>(hi - lo + 1) > kMaxFibers)
            throw numerical_error("ground_state: window expansion ran away (check flux/grid)");
    }

    SpectralPoint pt;
    pt.B = B;
    pt.m_lo = lo;
    pt.m_hi = hi;
    pt.lambda1 = lambdas.at(m_best);
    pt.m_star = m_best;

    // tie handling: report the smaller m, remember the partner
    const double tie_tol = 1e-10 * std::max(1.0, std::fabs(pt.lambda1));
    for (const auto& [m, v] : lambdas) {
        if (m != m_best && std::fabs(v - pt.lambda1) <= tie_tol) {
            pt.tie = true;
            pt.m_tie = std::max(m, m_best);
            pt.m_star = std::min(m, m_best);
            break;
        }
    }

    const FiberSolution fiber = solve_fiber(domain, field, pt.m_star, B, n);
    pt.lambda1 = fiber.lambda;
    pt.localization_metric = localization_profile(field, pt, fiber);
    return pt;
}

SweepTable sweep(const RadialFieldSpec& field, const DomainSpec& domain,
                 const std::vector<double>& B_grid, const ScanParams& params) {
    for (std::size_t i = 0; i + 1 < B_grid.size(); ++i)
        if (!(B_grid[i] < B_grid[i + 1]))
            throw std::invalid_argument("sweep: B grid must be strictly increasing");
    SweepTable table;
    table.domain = domain;
    table.field = field;
    table.grid_n = params.grid_n;
    table.points.resize(B_grid.size());
    parallel_for(B_grid.size(), params.workers, [&](std::size_t i) {
        ScanParams p = params;
        p.workers = 1;
        table.points[i] = ground_state(field, domain, B_grid[i], p);
    });
    return table;
}

std::pair<double, long> limit_operator_lambda(double Ri, double B) {
    if (!(Ri > 0)) throw std::domain_error("limit operator: Ri must be > 0");
    if (B < 0) throw std::domain_error("limit operator: B must be >= 0");
    const double x = B * Ri * Ri / 2.0;
    const long mf = static_cast<long>(std::floor(x));
    double best = 1e300;
    long m_best = mf;
    for (long m : {mf, mf + 1}) { // visiting the smaller m first settles ties
        const double v = static_cast<double>(m) / Ri - B * Ri / 2.0;
        const double val = v * v;
        if (val < best) {
            best = val;
            m_best = m;
        }
    }
    return {best, m_best};
}

std::vector<double> annulus_limit_error(double Ri, const std::vector<double>& Ro_sequence,
                                        double B, const ScanParams& params) {
    for (std::size_t i = 0; i + 1 < Ro_sequence.size(); ++i)
        if (!(Ro_sequence[i] > Ro_sequence[i + 1]))
            throw std::invalid_argument("annulus_limit_error: Ro must decrease toward Ri");
    for (double ro : Ro_sequence)
        if (!(ro > Ri)) throw std::invalid_argument("annulus_limit_error: Ro must exceed Ri");
    const auto field = RadialFieldSpec::constant(1.0);
    const double limit = limit_operator_lambda(Ri, B).first;
    std::vector<double> errors(Ro_sequence.size());
    parallel_for(Ro_sequence.size(), params.workers, [&](std::size_t i) {
        ScanParams p = params;
        p.workers = 1;
        const auto pt = ground_state(field, DomainSpec::annulus(Ri, Ro_sequence[i]), B, p);
        errors[i] = std::fabs(pt.lambda1 - limit);
    });
    return errors;
}

std::vector<std::pair<double, double>> monotonicity_breaks(const SweepTable& table) {
    const auto& pts = table.points;
    if (pts.size() < 3)
        throw std::invalid_argument("monotonicity_breaks: need at least 3 points");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].lambda1 > pts[j].lambda1) out.emplace_back(pts[i].B, pts[j].B);
    return out;
}

namespace {

double leading_term(const SweepTable& t, FitModel model, const ModelConstants& mc, double B) {
    const double delta = t.field.delta();
    const double k = t.field.k();
    switch (model) {
        case FitModel::Exterior:
            return mc.theta0 * delta * B + mc.phi0sq / 3.0 * std::sqrt(delta * B);
        case FitModel::Interior:
            return mc.theta0 * delta * B - mc.phi0sq / 3.0 * std::sqrt(delta * B);
        case FitModel::PlaneDeltaPos: return delta * B + k / (4.0 * delta);
        case FitModel::PlaneDeltaZero: return std::sqrt(k / 2.0) * mc.Xi * std::sqrt(B);
        case FitModel::AnnulusLimit:
            return limit_operator_lambda(t.domain.r_inner, B).first;
    }
    return 0;
}

// B-dependent phase whose distance to the integers drives the oscillation
double phase_argument(const SweepTable& t, FitModel model, const ModelConstants& mc, double B,
                      double C0) {
    const double delta = t.field.delta();
    const double phiB = t.field.flux() * B;
    switch (model) {
        case FitModel::Exterior: return phiB + mc.xi0 * std::sqrt(delta * B) + C0;
        case FitModel::Interior: return phiB - mc.xi0 * std::sqrt(delta * B) + C0;
        case FitModel::PlaneDeltaZero: return phiB + C0;
        default: return 0;
    }
}

double theoretical_amplitude(FitModel model, const ModelConstants& mc) {
    if (model == FitModel::PlaneDeltaZero) return mc.c0 / 2.0;
    return mc.xi0 * mc.phi0sq;
}

double estimate_period(const std::vector<double>& B, const std::vector<double>& resid) {
    std::vector<double> minima;
    for (std::size_t i = 1; i + 1 < resid.size(); ++i)
        if (resid[i] < resid[i - 1] && resid[i] < resid[i + 1]) minima.push_back(B[i]);
    if (minima.size() < 2)
        throw resolution_error("asymptotic_fit: oscillation period unresolved by the grid");
    double acc = 0;
    for (std::size_t i = 0; i + 1 < minima.size(); ++i) acc += minima[i + 1] - minima[i];
    return acc / static_cast<double>(minima.size() - 1);
}

} // namespace

AsymptoticFit asymptotic_fit(const SweepTable& table, FitModel model,
                             const ModelConstants& constants) {
    const auto& pts = table.points;
    if (pts.empty()) throw std::invalid_argument("asymptotic_fit: empty table");
    const bool oscillatory = model == FitModel::Exterior || model == FitModel::Interior ||
                             model == FitModel::PlaneDeltaZero;
    const double min_B = model == FitModel::PlaneDeltaZero ? 5000.0 : 200.0;
    if (model != FitModel::AnnulusLimit && pts.front().B < min_B)
        throw std::invalid_argument("asymptotic_fit: table starts below the asymptotic regime");

    AsymptoticFit fit;
    fit.model = model;
    const std::size_t N = pts.size();
    std::vector<double> B(N), resid(N);
    for (std::size_t i = 0; i < N; ++i) {
        B[i] = pts[i].B;
        resid[i] = pts[i].lambda1 - leading_term(table, model, constants, pts[i].B);
    }
    fit.residual = resid;

    if (!oscillatory) {
        double mean = 0;
        for (double v : resid) mean += v;
        mean /= static_cast<double>(N);
        fit.offset = mean;
        double ss = 0;
        for (double v : resid) ss += v * v;
        fit.rms = std::sqrt(ss / static_cast<double>(N));
        return fit;
    }

    // outer scan of the nonlinear phase, inner least squares for
    // amplitude and offset against [dist^2, 1]
    double best_sse = 1e300;
    for (int j = 0; j < 200; ++j) {
        const double C0 = static_cast<double>(j) / 200.0;
        double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double d = dist_to_integers(phase_argument(table, model, constants, B[i], C0));
            const double d2 = d * d;
            s11 += d2 * d2;
            s12 += d2;
            s22 += 1.0;
            b1 += d2 * resid[i];
            b2 += resid[i];
        }
        const double det = s11 * s22 - s12 * s12;
        if (std::fabs(det) < 1e-14 * std::max(1.0, s11 * s22)) continue;
        const double amp = (b1 * s22 - b2 * s12) / det;
        const double off = (s11 * b2 - s12 * b1) / det;
        double sse = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double d = dist_to_integers(phase_argument(table, model, constants, B[i], C0));
            const double e = resid[i] - (amp * d * d + off);
            sse += e * e;
        }
        if (sse < best_sse) {
            best_sse = sse;
            fit.phase = C0;
            fit.amplitude = amp;
        }
    }
    if (best_sse == 1e300)
        throw resolution_error("asymptotic_fit: degenerate design (grid too coarse)");

    // Nyquist-style check: the grid must sample each oscillation period
    const double slope = (phase_argument(table, model, constants, B.back(), 0.0) -
                          phase_argument(table, model, constants, B.front(), 0.0)) /
                         (B.back() - B.front());
    const double predicted_period = 1.0 / std::fabs(slope);
    const double step = (B.back() - B.front()) / static_cast<double>(N - 1);
    if (step > predicted_period / 4.0)
        throw resolution_error("asymptotic_fit: grid step " + std::to_string(step) +
                               " cannot resolve the oscillation period " +
                               std::to_string(predicted_period));

    // offset normalized by the theoretical amplitude, as in the expansions
    const double amp_th = theoretical_amplitude(model, constants);
    double mean_resid = 0, mean_d2 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const double d =
            dist_to_integers(phase_argument(table, model, constants, B[i], fit.phase));
        mean_d2 += d * d;
        mean_resid += resid[i];
    }
    mean_d2 /= static_cast<double>(N);
    mean_resid /= static_cast<double>(N);
    fit.offset = mean_resid / amp_th - mean_d2;
    fit.rms = std::sqrt(best_sse / static_cast<double>(N));
    fit.period = estimate_period(B, resid);
    return fit;
}

double localization_profile(const RadialFieldSpec& field, const SpectralPoint& point,
                            const FiberSolution& fiber) {
    if (point.B <= 0) return 0.0; // no localization claim at zero field
    const double d = field.delta() > 0 ? 10.0 / std::sqrt(point.B)
                                       : 10.0 * std::pow(point.B, -0.25);
    double outside = 0;
    for (std::size_t i = 0; i < fiber.u.size(); ++i) {
        const double r = fiber.grid.node(i);
        if (std::fabs(r - 1.0) > d) outside += fiber.u[i] * fiber.u[i] * r * fiber.grid.h;
    }
    return outside;
}

} // namespace magscan
