#pragma once
#include "magscan/scan.hpp"

#include <vector>

namespace magscan {

// Superconducting/normal verdicts over a sigma grid under the linear
// spectral criterion lambda1(H(kappa*sigma)) < kappa^2.
struct GLVerdict {
    double kappa = 0;
    std::vector<double> sigma_grid;
    std::vector<double> lambda1;            // cached per sigma
    std::vector<bool> superconducting;      // same length as sigma_grid
    std::vector<std::pair<double, double>> components; // maximal true runs

    // components reconstruct the boolean sequence exactly
    void validate() const;
};

// Linear criterion at one (kappa, sigma): strict inequality; the threshold
// itself counts as normal.
bool is_superconducting(const RadialFieldSpec& field, const DomainSpec& domain, double kappa,
                        double sigma, const ScanParams& params = {});

GLVerdict n_set(const RadialFieldSpec& field, const DomainSpec& domain, double kappa,
                const std::vector<double>& sigma_grid, const ScanParams& params = {});

// Number of linear-criterion components over sigma = B/kappa for
// B in [b_lo, b_hi], sigma step fine enough to resolve the flux oscillation
// (<= 1/(20 Phi kappa)).
std::size_t multi_component_count(const RadialFieldSpec& field, const DomainSpec& domain,
                                  double kappa, double b_lo, double b_hi,
                                  const ScanParams& params = {});

// Sigma step that resolves the oscillation of lambda1(H(kappa sigma)):
// 1/(20 Phi kappa).
double recommended_sigma_step(const RadialFieldSpec& field, double kappa);

} // namespace magscan
