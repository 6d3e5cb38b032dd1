#include "magscan/discretize.hpp"
#include "magscan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace magscan {

DomainSpec DomainSpec::annulus(double ri, double ro) {
    DomainSpec d;
    d.kind = DomainKind::Annulus;
    d.r_inner = ri;
    d.r_outer = ro;
    d.validate();
    return d;
}

DomainSpec DomainSpec::disc() {
    DomainSpec d;
    d.kind = DomainKind::Disc;
    return d;
}

DomainSpec DomainSpec::exterior_disc() {
    DomainSpec d;
    d.kind = DomainKind::ExteriorDisc;
    return d;
}

DomainSpec DomainSpec::plane() {
    DomainSpec d;
    d.kind = DomainKind::Plane;
    return d;
}

void DomainSpec::validate() const {
    if (kind == DomainKind::Annulus && !(0 < r_inner && r_inner < r_outer))
        throw config_error("domain: annulus needs 0 < Ri < Ro");
    if (truncation_width_factor < 6.0)
        throw config_error("domain: truncation_width_factor must be >= 6");
    if (kind == DomainKind::Plane && !(inner_cutoff > 0))
        throw config_error("domain: plane inner_cutoff must be > 0");
}

std::string DomainSpec::describe() const {
    switch (kind) {
        case DomainKind::Annulus:
            return "annulus:" + std::to_string(r_inner) + ":" + std::to_string(r_outer);
        case DomainKind::Disc: return "disc";
        case DomainKind::ExteriorDisc: return "exterior";
        case DomainKind::Plane: return "plane";
    }
    return "?";
}

std::vector<double> Grid::nodes() const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = node(i);
    return out;
}

double potential(const RadialFieldSpec& field, long m, double B, double r) {
    if (r <= 0) throw std::domain_error("potential: r must be > 0");
    if (B < 0) throw std::domain_error("potential: B must be >= 0");
    const double q = static_cast<double>(m) - B * field.flux_line(r);
    return q * q / (r * r);
}

double localization_length(const RadialFieldSpec& field, double B) {
    if (B <= 0) throw std::domain_error("localization_length: B must be > 0");
    if (field.delta() > 0) return 1.0 / std::sqrt(field.delta() * B);
    return std::pow(B, -0.25);
}

std::pair<double, double> truncation_window(const DomainSpec& domain,
                                            const RadialFieldSpec& field, double B) {
    domain.validate();
    switch (domain.kind) {
        case DomainKind::Annulus: return {domain.r_inner, domain.r_outer};
        case DomainKind::Disc: return {0.0, 1.0};
        default: break;
    }
    if (B <= 0) throw std::domain_error("truncation_window: B must be > 0 on unbounded domains");
    const double scale = field.delta() > 0 ? 1.0 / std::sqrt(B) : std::pow(B, -0.25);
    const double half = domain.truncation_width_factor * scale;
    if (domain.kind == DomainKind::ExteriorDisc) return {1.0, 1.0 + half};
    return {std::max(domain.inner_cutoff, 1.0 - half), 1.0 + half};
}

std::size_t default_fiber_n(const DomainSpec& domain, const RadialFieldSpec& field, double B) {
    double width;
    if (domain.kind == DomainKind::Annulus)
        width = domain.r_outer - domain.r_inner;
    else if (domain.kind == DomainKind::Disc)
        width = 1.0;
    else {
        auto [lo, hi] = truncation_window(domain, field, B);
        width = hi - lo;
    }
    double loc = width;
    if (B > 0) loc = std::min(loc, localization_length(field, B));
    const double n = std::ceil(width / (loc / 200.0));
    return static_cast<std::size_t>(std::clamp(n, 512.0, 200000.0));
}

Grid fiber_grid(const DomainSpec& domain, const RadialFieldSpec& field, double B,
                std::size_t n) {
    auto [lo, hi] = truncation_window(domain, field, B);
    Grid g;
    g.r_min = lo;
    g.r_max = hi;
    g.n = n;
    g.h = (hi - lo) / static_cast<double>(n);
    return g;
}

SymmetricTridiagonal build_fiber(const DomainSpec& domain, const RadialFieldSpec& field,
                                 long m, double B, std::size_t n) {
    domain.validate();
    if (B < 0) throw std::domain_error("build_fiber: B must be >= 0");
    if (n < 16) throw std::invalid_argument("build_fiber: n must be >= 16");
    if (domain.kind == DomainKind::Plane && !field.strict_minimum_at_one())
        throw config_error("build_fiber: whole-plane runs need a field with a strict "
                           "minimum at r=1");
    if (domain.unbounded()) {
        // require at least 16 nodes per localization length, else the layer
        // is unresolved
        const Grid probe = fiber_grid(domain, field, B, n);
        const double loc = localization_length(field, B);
        const std::size_t min_n = static_cast<std::size_t>(
            std::ceil((probe.r_max - probe.r_min) / (loc / 16.0)));
        if (n < min_n)
            throw resolution_error("build_fiber: n=" + std::to_string(n) +
                                       " cannot resolve the localization length; need n >= " +
                                       std::to_string(min_n),
                                   min_n);
    }

    const Grid g = fiber_grid(domain, field, B, n);
    const bool left_dirichlet =
        domain.kind == DomainKind::Plane; // artificial inner wall
    const bool right_dirichlet = domain.unbounded();

    const std::vector<double> nodes = g.nodes();
    const std::vector<double> ra = field.flux_line_grid(nodes);

    SymmetricTridiagonal T;
    T.weight.resize(n);
    T.pot_mass.resize(n);
    T.edge.assign(n + 1, 0.0);
    T.diag.resize(n);
    T.offdiag.resize(n - 1);

    for (std::size_t j = 1; j < n; ++j)
        T.edge[j] = (g.r_min + static_cast<double>(j) * g.h) / g.h;
    // Dirichlet wall closures sit half a cell from the first/last node
    if (left_dirichlet) T.edge[0] = 2.0 * g.r_min / g.h;
    if (right_dirichlet) T.edge[n] = 2.0 * g.r_max / g.h;

    for (std::size_t i = 0; i < n; ++i) {
        const double r = nodes[i];
        const double q = static_cast<double>(m) - B * ra[i];
        const double V = q * q / (r * r);
        T.weight[i] = r * g.h;
        T.pot_mass[i] = V * r * g.h;
        T.diag[i] = (T.edge[i] + T.edge[i + 1] + T.pot_mass[i]) / T.weight[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        T.offdiag[i] = -T.edge[i + 1] / std::sqrt(T.weight[i] * T.weight[i + 1]);
    T.validate();
    return T;
}

FiberSolution solve_fiber(const DomainSpec& domain, const RadialFieldSpec& field, long m,
                          double B, std::size_t n) {
    FiberSolution s;
    s.grid = fiber_grid(domain, field, B, n);
    const SymmetricTridiagonal T = build_fiber(domain, field, m, B, n);
    EigenPair p = ground_pair(T);
    s.lambda = p.value;
    s.u = std::move(p.vector);
    return s;
}

} // namespace magscan
