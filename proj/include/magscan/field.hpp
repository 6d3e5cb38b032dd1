#pragma once
#include <functional>
#include <string>
#include <vector>

namespace magscan {

enum class FieldKind { Constant, ParabolicWell, Custom };

// A radial magnetic-field profile beta(r) >= 0 together with its local data
// at r = 1: delta = beta(1), k = beta''(1), c = beta'''(1), d = beta''''(1)
// (beta'(1) = 0 is required). Immutable after construction; all evaluation
// is pure, so instances can be shared freely across scan workers.
class RadialFieldSpec {
public:
    static RadialFieldSpec constant(double level);
    // delta + (1-r)^2
    static RadialFieldSpec parabolic_well(double delta);
    static RadialFieldSpec custom(std::function<double(double)> profile, double delta,
                                  double k, double c, double d);
    // Two-column sampled profile (r, beta) with a header line
    // "# delta=<v> k=<v> c=<v> d=<v>"; interpolated by a natural cubic spline.
    static RadialFieldSpec from_profile_file(const std::string& path);

    FieldKind kind() const { return kind_; }
    double delta() const { return delta_; }
    double k() const { return k_; }
    double c() const { return c_; }
    double d() const { return d_; }

    // beta(r); r < 0 is a domain error
    double eval(double r) const;

    // a(r) = (1/r) int_0^r beta(s) s ds; closed form for the built-in kinds,
    // adaptive quadrature (abs tol 1e-13) for Custom. r <= 0 is a domain error.
    double flux_potential(double r) const;

    // Phi = a(1) = int_0^1 beta(s) s ds, the flux through the unit disc
    double flux() const;

    // r * a(r); same accuracy contract as flux_potential but also valid at r=0
    double flux_line(double r) const;

    // r*a(r) on an increasing node list (single quadrature sweep for Custom)
    std::vector<double> flux_line_grid(const std::vector<double>& nodes) const;

    // | r a(r) - [Phi + delta(r-1) + delta/2 (r-1)^2 + k/6 (r-1)^3
    //            + (c/24 + k/8)(r-1)^4] |, valid for |r-1| <= 0.2
    double rar_expansion_residual(double r) const;

    // Advisory notes from construction-time sampling (spectral-gap hypotheses
    // that are useful but not required for a numerical scan).
    const std::vector<std::string>& warnings() const { return warnings_; }

    // Sampled check that beta has a strict minimum at r=1 (whole-plane runs
    // need the well somewhere to confine the ground state radially).
    bool strict_minimum_at_one() const { return strict_min_at_one_; }

    std::string describe() const;

    // zero constant field; useful as a container default
    RadialFieldSpec() = default;

private:
    void finish_construction();

    FieldKind kind_ = FieldKind::Constant;
    double level_ = 0.0;
    double delta_ = 0.0, k_ = 0.0, c_ = 0.0, d_ = 0.0;
    std::function<double(double)> profile_;
    std::vector<std::string> warnings_;
    bool strict_min_at_one_ = true;
    std::string describe_ = "constant:0";
};

// Adaptive Gauss-Kronrod (7,15) quadrature, absolute tolerance driven.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-13);

} // namespace magscan
