#include "magscan/field.hpp"
#include "magscan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magscan {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (symmetric half listed).
constexpr double kGKNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GKResult {
    double value;
    double error;
};

GKResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double kron = 0, gauss = 0;
    for (int i = 0; i < 8; ++i) {
        const double x = hw * kGKNodes[i];
        const double fs = (i == 7) ? f(c) : f(c - x) + f(c + x);
        kron += kKronrodW[i] * fs;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * fs;
    }
    return {kron * hw, std::fabs(kron - gauss) * hw};
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b, double tol,
                   int depth) {
    const GKResult r = gk15(f, a, b);
    if (r.error <= tol || depth >= 48) return r.value;
    const double c = 0.5 * (a + b);
    return adaptive_gk(f, a, c, 0.5 * tol, depth + 1) +
           adaptive_gk(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol) {
    if (a == b) return 0.0;
    return adaptive_gk(f, a, b, abs_tol, 0);
}

void RadialFieldSpec::finish_construction() {
    // beta must be non-negative on the working domain and flat at r=1
    constexpr int kSamples = 600;
    for (int i = 0; i <= kSamples; ++i) {
        const double r = 3.0 * i / kSamples;
        if (eval(r) < -1e-12)
            throw std::domain_error("field: beta(r) negative at r=" + std::to_string(r));
    }
    const double e = 1e-6;
    const double slope = (eval(1.0 + e) - eval(1.0 - e)) / (2.0 * e);
    if (std::fabs(slope) > 1e-8)
        throw std::domain_error("field: beta'(1) != 0 (central difference " +
                                std::to_string(slope) + ")");

    // Spectral-gap hypotheses: sampled, advisory only (scans outside them are
    // still numerically meaningful).
    constexpr double theta0_approx = 0.5901; // de Gennes ground-energy minimum
    double inf_beta = eval(1e-3);
    for (int i = 1; i <= kSamples; ++i)
        inf_beta = std::min(inf_beta, eval(3.0 * i / kSamples));
    if (theta0_approx * delta_ >= inf_beta && delta_ > 0)
        warnings_.push_back("theta0*delta >= inf beta on the sampled grid; "
                            "boundary-well localization is not guaranteed");
    // unique non-degenerate interior minimum at r=1 (whole-plane hypothesis)
    bool interior_min_ok = true;
    for (int i = 1; i <= kSamples; ++i) {
        const double r = 3.0 * i / kSamples;
        if (std::fabs(r - 1.0) > 0.05 && eval(r) <= delta_ + 1e-12) interior_min_ok = false;
    }
    strict_min_at_one_ = interior_min_ok;
    if (!interior_min_ok)
        warnings_.push_back("beta does not have a strict minimum at r=1 on the sampled "
                            "grid; whole-plane asymptotics may not apply");
}

RadialFieldSpec RadialFieldSpec::constant(double level) {
    if (level < 0) throw std::domain_error("field: constant level must be >= 0");
    RadialFieldSpec f;
    f.kind_ = FieldKind::Constant;
    f.level_ = level;
    f.delta_ = level;
    f.k_ = f.c_ = f.d_ = 0.0;
    f.describe_ = "constant:" + std::to_string(level);
    f.finish_construction();
    return f;
}

RadialFieldSpec RadialFieldSpec::parabolic_well(double delta) {
    if (delta < 0) throw std::domain_error("field: parabolic well delta must be >= 0");
    RadialFieldSpec f;
    f.kind_ = FieldKind::ParabolicWell;
    f.delta_ = delta;
    f.k_ = 2.0;
    f.c_ = f.d_ = 0.0;
    f.describe_ = "parabolic:" + std::to_string(delta);
    f.finish_construction();
    return f;
}

RadialFieldSpec RadialFieldSpec::custom(std::function<double(double)> profile, double delta,
                                        double k, double c, double d) {
    RadialFieldSpec f;
    f.kind_ = FieldKind::Custom;
    f.profile_ = std::move(profile);
    f.delta_ = delta;
    f.k_ = k;
    f.c_ = c;
    f.d_ = d;
    f.describe_ = "custom";
    f.finish_construction();
    return f;
}

RadialFieldSpec RadialFieldSpec::from_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("field: cannot open profile file " + path);
    std::string header;
    std::getline(in, header);
    double delta = 0, k = 0, c = 0, d = 0;
    int seen = 0;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            double val = 0;
            try {
                val = std::stod(tok.substr(eq + 1));
            } catch (const std::exception&) {
                throw config_error("field: bad header value in " + path + ": " + tok);
            }
            if (key == "delta") { delta = val; ++seen; }
            else if (key == "k") { k = val; ++seen; }
            else if (key == "c") { c = val; ++seen; }
            else if (key == "d") { d = val; ++seen; }
        }
    }
    if (seen != 4)
        throw config_error("field: profile header must carry delta/k/c/d: " + path);
    std::vector<double> rs, bs;
    double r, b;
    while (in >> r >> b) {
        rs.push_back(r);
        bs.push_back(b);
    }
    if (rs.size() < 4 || !std::is_sorted(rs.begin(), rs.end()))
        throw config_error("field: profile file needs >= 4 increasing samples: " + path);

    // natural cubic spline coefficients (second derivatives at the knots)
    const std::size_t n = rs.size();
    std::vector<double> m(n, 0.0), u(n, 0.0), z(n, 0.0);
    std::vector<double> hseg(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) hseg[i] = rs[i + 1] - rs[i];
    std::vector<double> l(n, 1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        l[i] = 2.0 * (rs[i + 1] - rs[i - 1]) - hseg[i - 1] * u[i - 1];
        u[i] = hseg[i] / l[i];
        const double alpha = 6.0 * ((bs[i + 1] - bs[i]) / hseg[i] - (bs[i] - bs[i - 1]) / hseg[i - 1]);
        z[i] = (alpha - hseg[i - 1] * z[i - 1]) / l[i];
    }
    for (std::size_t j = n - 1; j-- > 1;) m[j] = z[j] - u[j] * m[j + 1];

    auto spline = [rs, bs, m, hseg](double x) {
        // clamp outside the sample range to the end values
        if (x <= rs.front()) return bs.front();
        if (x >= rs.back()) return bs.back();
        std::size_t i = std::upper_bound(rs.begin(), rs.end(), x) - rs.begin() - 1;
        const double t = x - rs[i], h = hseg[i];
        const double a3 = (m[i + 1] - m[i]) / (6.0 * h);
        const double a2 = m[i] / 2.0;
        const double a1 = (bs[i + 1] - bs[i]) / h - h * (m[i + 1] + 2.0 * m[i]) / 6.0;
        return bs[i] + t * (a1 + t * (a2 + t * a3));
    };
    auto f = custom(spline, delta, k, c, d);
    f.describe_ = "custom:" + path;
    return f;
}

double RadialFieldSpec::eval(double r) const {
    if (r < 0) throw std::domain_error("field: beta(r) needs r >= 0");
    switch (kind_) {
        case FieldKind::Constant: return level_;
        case FieldKind::ParabolicWell: return delta_ + (1.0 - r) * (1.0 - r);
        case FieldKind::Custom: return profile_(r);
    }
    return 0.0;
}

double RadialFieldSpec::flux_line(double r) const {
    if (r < 0) throw std::domain_error("field: r a(r) needs r >= 0");
    switch (kind_) {
        case FieldKind::Constant:
            return level_ * r * r / 2.0;
        case FieldKind::ParabolicWell:
            // int_0^r [delta + (1-s)^2] s ds
            return delta_ * r * r / 2.0 + r * r / 2.0 - 2.0 * r * r * r / 3.0 +
                   r * r * r * r / 4.0;
        case FieldKind::Custom:
            return adaptive_quadrature([this](double s) { return profile_(s) * s; }, 0.0, r);
    }
    return 0.0;
}

double RadialFieldSpec::flux_potential(double r) const {
    if (r <= 0) throw std::domain_error("field: a(r) needs r > 0");
    return flux_line(r) / r;
}

double RadialFieldSpec::flux() const { return flux_line(1.0); }

std::vector<double> RadialFieldSpec::flux_line_grid(const std::vector<double>& nodes) const {
    std::vector<double> out(nodes.size());
    if (kind_ != FieldKind::Custom) {
        for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = flux_line(nodes[i]);
        return out;
    }
    double acc = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        acc += adaptive_quadrature([this](double s) { return profile_(s) * s; }, prev, nodes[i]);
        prev = nodes[i];
        out[i] = acc;
    }
    return out;
}

double RadialFieldSpec::rar_expansion_residual(double r) const {
    if (std::fabs(r - 1.0) > 0.2)
        throw std::domain_error("field: expansion residual valid only for |r-1| <= 0.2");
    const double t = r - 1.0;
    const double model = flux() + delta_ * t + delta_ / 2.0 * t * t + k_ / 6.0 * t * t * t +
                         (c_ / 24.0 + k_ / 8.0) * t * t * t * t;
    return std::fabs(flux_line(r) - model);
}

std::string RadialFieldSpec::describe() const { return describe_; }

} // namespace magscan
