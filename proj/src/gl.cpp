#include "magscan/gl.hpp"
#include "magscan/errors.hpp"
#include "magscan/pool.hpp"

#include <cmath>
#include <stdexcept>

namespace magscan {

void GLVerdict::validate() const {
    if (sigma_grid.size() != superconducting.size() || sigma_grid.size() != lambda1.size())
        throw std::invalid_argument("gl verdict: length mismatch");
    std::vector<std::pair<double, double>> rebuilt;
    for (std::size_t i = 0; i < superconducting.size(); ++i) {
        if (!superconducting[i]) continue;
        if (rebuilt.empty() || (i > 0 && !superconducting[i - 1]))
            rebuilt.emplace_back(sigma_grid[i], sigma_grid[i]);
        rebuilt.back().second = sigma_grid[i];
    }
    if (rebuilt != components)
        throw numerical_error("gl verdict: components do not reconstruct the sequence");
}

bool is_superconducting(const RadialFieldSpec& field, const DomainSpec& domain, double kappa,
                        double sigma, const ScanParams& params) {
    if (!(kappa > 0)) throw std::domain_error("gl: kappa must be > 0");
    if (sigma < 0) throw std::domain_error("gl: sigma must be >= 0");
    const auto pt = ground_state(field, domain, kappa * sigma, params);
    return pt.lambda1 < kappa * kappa;
}

GLVerdict n_set(const RadialFieldSpec& field, const DomainSpec& domain, double kappa,
                const std::vector<double>& sigma_grid, const ScanParams& params) {
    if (!(kappa > 0)) throw std::domain_error("gl: kappa must be > 0");
    for (std::size_t i = 0; i + 1 < sigma_grid.size(); ++i)
        if (!(sigma_grid[i] < sigma_grid[i + 1]))
            throw std::invalid_argument("gl: sigma grid must be strictly increasing");
    GLVerdict v;
    v.kappa = kappa;
    v.sigma_grid = sigma_grid;
    v.lambda1.resize(sigma_grid.size());
    v.superconducting.resize(sigma_grid.size());
    parallel_for(sigma_grid.size(), params.workers, [&](std::size_t i) {
        ScanParams p = params;
        p.workers = 1;
        const auto pt = ground_state(field, domain, kappa * sigma_grid[i], p);
        v.lambda1[i] = pt.lambda1;
        v.superconducting[i] = pt.lambda1 < kappa * kappa;
    });
    for (std::size_t i = 0; i < v.superconducting.size(); ++i) {
        if (!v.superconducting[i]) continue;
        if (v.components.empty() || (i > 0 && !v.superconducting[i - 1]))
            v.components.emplace_back(sigma_grid[i], sigma_grid[i]);
        v.components.back().second = sigma_grid[i];
    }
    v.validate();
    return v;
}

double recommended_sigma_step(const RadialFieldSpec& field, double kappa) {
    if (!(kappa > 0)) throw std::domain_error("gl: kappa must be > 0");
    return 1.0 / (20.0 * field.flux() * kappa);
}

std::size_t multi_component_count(const RadialFieldSpec& field, const DomainSpec& domain,
                                  double kappa, double b_lo, double b_hi,
                                  const ScanParams& params) {
    if (!(0 <= b_lo && b_lo < b_hi))
        throw std::invalid_argument("gl: need 0 <= b_lo < b_hi");
    const double step = recommended_sigma_step(field, kappa);
    std::vector<double> sigmas;
    for (double s = b_lo / kappa; s <= b_hi / kappa + 1e-12; s += step) sigmas.push_back(s);
    return n_set(field, domain, kappa, sigmas, params).components.size();
}

} // namespace magscan
