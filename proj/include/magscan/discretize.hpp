#pragma once
#include "magscan/eigen.hpp"
#include "magscan/field.hpp"
#include "magscan/tridiag.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace magscan {

enum class DomainKind { Annulus, Disc, ExteriorDisc, Plane };

struct DomainSpec {
    DomainKind kind = DomainKind::Disc;
    double r_inner = 0.0;                  // annulus only
    double r_outer = 0.0;                  // annulus only
    double truncation_width_factor = 12.0; // unbounded domains
    double inner_cutoff = 0.05;            // plane only

    static DomainSpec annulus(double ri, double ro);
    static DomainSpec disc();
    static DomainSpec exterior_disc();
    static DomainSpec plane();

    bool unbounded() const {
        return kind == DomainKind::ExteriorDisc || kind == DomainKind::Plane;
    }
    void validate() const;
    std::string describe() const;
};

// Uniform cell-centered grid: interior nodes r_min + (i+1/2)h.
struct Grid {
    double r_min = 0, r_max = 0;
    std::size_t n = 0;
    double h = 0;
    double node(std::size_t i) const { return r_min + (static_cast<double>(i) + 0.5) * h; }
    std::vector<double> nodes() const;
};

// Fiber potential (m/r - B a(r))^2 evaluated through the cancellation form
// (m - B r a(r))^2 / r^2, which stays accurate when m is close to Phi*B.
double potential(const RadialFieldSpec& field, long m, double B, double r);

// Radial solve window. Physical interval for annulus/disc; for the
// unbounded domains a window around r=1 of half-width
// truncation_width_factor * B^{-1/2} (delta>0) or * B^{-1/4} (delta=0),
// clamped to the physical domain and, on the plane, to inner_cutoff.
std::pair<double, double> truncation_window(const DomainSpec& domain,
                                            const RadialFieldSpec& field, double B);

// Characteristic ground-state localization length at field strength B.
double localization_length(const RadialFieldSpec& field, double B);

// Grid size such that h <= localization_length/200, clamped to
// [512, 200000] (per-fiber desk-scale cap).
std::size_t default_fiber_n(const DomainSpec& domain, const RadialFieldSpec& field, double B);

// Second-order discretization of the fiber quadratic form
//   q_m[u] = int_I |u'|^2 + (m/r - B a(r))^2 |u|^2  r dr
// on the weighted space L^2(I, r dr): diagonal mass r_i h, stiffness from
// r-weighted fluxes at the half nodes. Natural (Neumann) conditions at
// physical endpoints, Dirichlet closures at artificial truncation ends.
SymmetricTridiagonal build_fiber(const DomainSpec& domain, const RadialFieldSpec& field,
                                 long m, double B, std::size_t n);

Grid fiber_grid(const DomainSpec& domain, const RadialFieldSpec& field, double B,
                std::size_t n);

// Ground eigenpair of one fiber plus its grid (for localization metrics).
struct FiberSolution {
    double lambda = 0;
    std::vector<double> u; // weighted-normalized
    Grid grid;
};
FiberSolution solve_fiber(const DomainSpec& domain, const RadialFieldSpec& field, long m,
                          double B, std::size_t n);

} // namespace magscan
