#include <doctest.h>

#include "magscan/errors.hpp"
#include "magscan/gl.hpp"

#include <cmath>

using namespace magscan;

TEST_SUITE("gl") {

TEST_CASE("zero field is always superconducting under the linear criterion") {
    auto c1 = RadialFieldSpec::constant(1.0);
    auto ann = DomainSpec::annulus(1.0, 1.1);
    CHECK(is_superconducting(c1, ann, 0.2, 0.0));
    CHECK(is_superconducting(c1, ann, 5.0, 0.0));
}

TEST_CASE("thin annulus at kappa=0.387: normal at B=1, superconducting at B=2") {
    auto c1 = RadialFieldSpec::constant(1.0);
    auto ann = DomainSpec::annulus(1.0, 1.02);
    const double kappa = 0.387; // kappa^2 = 0.149769
    CHECK(is_superconducting(c1, ann, kappa, 2.0 / kappa));
    CHECK_FALSE(is_superconducting(c1, ann, kappa, 1.0 / kappa));
}

TEST_CASE("verdict components reconstruct the sequence and bracket the gaps") {
    auto c1 = RadialFieldSpec::constant(1.0);
    auto ann = DomainSpec::annulus(1.0, 1.02);
    const double kappa = 0.387;
    std::vector<double> sigmas;
    const double smax = 6.0 / kappa;
    for (double s = 0.3; s <= smax - 0.3; s += 0.12 / kappa) sigmas.push_back(s);
    const auto v = n_set(c1, ann, kappa, sigmas);
    CHECK_NOTHROW(v.validate());
    CHECK(v.components.size() >= 2);
    // a normal gap containing kappa*sigma = 1
    bool covered = false;
    for (const auto& [a, b] : v.components)
        if (a <= 1.0 / kappa && 1.0 / kappa <= b) covered = true;
    CHECK_FALSE(covered);
    // monotone in kappa at fixed sigma, from the cached lambda1 values
    for (std::size_t i = 0; i < v.sigma_grid.size(); ++i) {
        const bool small_kappa = v.lambda1[i] < 0.2 * 0.2;
        const bool big_kappa = v.lambda1[i] < 5.0 * 5.0;
        if (small_kappa) CHECK(big_kappa);
    }
}

TEST_CASE("huge kappa gives a single component spanning the grid") {
    auto c1 = RadialFieldSpec::constant(1.0);
    auto ann = DomainSpec::annulus(1.0, 1.02);
    std::vector<double> sigmas;
    for (double s = 0.1; s <= 1.5; s += 0.05) sigmas.push_back(s);
    const auto v = n_set(c1, ann, 40.0, sigmas);
    REQUIRE(v.components.size() == 1);
    CHECK(v.components[0].first == sigmas.front());
    CHECK(v.components[0].second == sigmas.back());
}

TEST_CASE("small kappa on the disc: superconductivity ends before the grid does") {
    auto c1 = RadialFieldSpec::constant(1.0);
    auto disc = DomainSpec::disc();
    const double kappa = 0.5;
    std::vector<double> sigmas;
    for (double s = 0.5; s <= 40.0; s += 1.0) sigmas.push_back(s);
    const auto v = n_set(c1, disc, kappa, sigmas, {});
    REQUIRE(!v.components.empty());
    CHECK(v.components.back().second < sigmas.back());
    CHECK(v.superconducting.front());
    CHECK_FALSE(v.superconducting.back());
}

TEST_CASE("argument validation") {
    auto c1 = RadialFieldSpec::constant(1.0);
    auto ann = DomainSpec::annulus(1.0, 1.1);
    CHECK_THROWS_AS((void)is_superconducting(c1, ann, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)is_superconducting(c1, ann, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS((void)n_set(c1, ann, 1.0, {2.0, 1.0}), std::invalid_argument);
}

} // TEST_SUITE
