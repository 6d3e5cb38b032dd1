#pragma once
#include "magscan/discretize.hpp"
#include "magscan/field.hpp"
#include "magscan/models.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace magscan {

struct SpectralPoint {
    double B = 0;
    double lambda1 = 0;
    long m_star = 0;
    long m_lo = 0, m_hi = 0;          // searched window
    double localization_metric = 0;   // mass fraction outside the Agmon window
    bool tie = false;                 // a second fiber within 1e-10
    long m_tie = 0;
};

struct SweepTable {
    DomainSpec domain;
    RadialFieldSpec field;
    std::size_t grid_n = 0; // 0 = per-B default
    std::vector<SpectralPoint> points;
};

struct ScanParams {
    std::size_t grid_n = 0; // 0 = default_fiber_n per B
    unsigned workers = 1;
};

// Fiber search window: centered at round(Phi B -+ xi0 (delta B)^{1/2})
// (minus on the disc, plus on the exterior; plain Phi B on annulus/plane
// and whenever delta = 0), half-width max(8, 4 B^{1/4}). ground_state
// widens it adaptively, so the window is a starting point, not a contract.
std::pair<long, long> m_window(const RadialFieldSpec& field, const DomainSpec& domain,
                               double B);

// inf over m of the fiber ground energies at a single field strength.
SpectralPoint ground_state(const RadialFieldSpec& field, const DomainSpec& domain, double B,
                           const ScanParams& params = {});

// ground_state over a strictly increasing B grid; fiber solves distributed
// over a worker pool with index-addressed, order-independent output.
SweepTable sweep(const RadialFieldSpec& field, const DomainSpec& domain,
                 const std::vector<double>& B_grid, const ScanParams& params = {});

// Ground energy of the thin-annulus limit operator on the circle of radius
// Ri: min over integer m of (m/Ri - B Ri/2)^2, closed form. Ties report the
// smaller m.
std::pair<double, long> limit_operator_lambda(double Ri, double B);

// |lambda1(H(B)) - lambda1(limit)| for a sequence of outer radii shrinking
// to Ri (constant unit field).
std::vector<double> annulus_limit_error(double Ri, const std::vector<double>& Ro_sequence,
                                        double B, const ScanParams& params = {});

// Every ordered pair (B1, B2), B1 < B2, with lambda1(B1) > lambda1(B2).
// Empty means the table is non-decreasing on its grid.
std::vector<std::pair<double, double>> monotonicity_breaks(const SweepTable& table);

enum class FitModel { Exterior, Interior, PlaneDeltaPos, PlaneDeltaZero, AnnulusLimit };

struct AsymptoticFit {
    FitModel model = FitModel::Exterior;
    double phase = 0;     // C0 (exterior/interior) or C1 (plane delta=0)
    double offset = 0;    // C1 resp. C2, normalized by the theoretical amplitude
    double amplitude = 0; // fitted oscillation amplitude
    double rms = 0;       // rms of the fit residual
    double period = 0;    // oscillation period in B (0 for non-oscillatory models)
    std::vector<double> residual; // lambda1 - closed-form leading terms, per point
};

// Subtracts the closed-form leading terms built from the model constants and
// the field data; for the oscillatory models fits the free constants by a
// 200-sample scan of the phase with an inner least-squares solve for
// amplitude and offset.
AsymptoticFit asymptotic_fit(const SweepTable& table, FitModel model,
                             const ModelConstants& constants);

// Mass fraction of |u|^2 r dr outside |r-1| > 10 B^{-1/2} (delta>0) or
// 10 B^{-1/4} (delta=0).
double localization_profile(const RadialFieldSpec& field, const SpectralPoint& point,
                            const FiberSolution& fiber);

} // namespace magscan
