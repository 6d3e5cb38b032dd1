#include <doctest.h>

#include "magscan/discretize.hpp"
#include "magscan/eigen.hpp"
#include "magscan/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace magscan;

TEST_SUITE("discretize") {

TEST_CASE("potential values and stability") {
    auto c1 = RadialFieldSpec::constant(1.0);
    CHECK(std::fabs(potential(c1, 1, 2.0, 1.0)) <= 1e-14);
    CHECK(potential(c1, 0, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    auto pw = RadialFieldSpec::parabolic_well(0.05);
    CHECK(std::fabs(potential(pw, 0, 0.0, 0.5)) <= 1e-14);
    CHECK_THROWS_AS((void)potential(c1, 1, 2.0, 0.0), std::domain_error);

    // cancellation form agrees with the naive form when well-conditioned
    for (double r : {0.7, 1.0, 1.4}) {
        const long m = 7;
        const double B = 3.0;
        const double naive = std::pow(static_cast<double>(m) / r - B * c1.flux_potential(r), 2);
        CHECK(potential(c1, m, B, r) == doctest::Approx(naive).epsilon(1e-9));
    }
}

TEST_CASE("truncation windows") {
    auto pw = RadialFieldSpec::parabolic_well(0.05);
    auto ext = DomainSpec::exterior_disc();
    auto w = truncation_window(ext, pw, 400.0);
    CHECK(w.first == doctest::Approx(1.0));
    CHECK(w.second == doctest::Approx(1.6).epsilon(1e-13));

    auto pw0 = RadialFieldSpec::parabolic_well(0.0); // delta=0, k=2
    auto pl = DomainSpec::plane();
    auto wp = truncation_window(pl, pw0, 10000.0);
    CHECK(wp.first == doctest::Approx(0.05));
    CHECK(wp.second == doctest::Approx(2.2).epsilon(1e-13));

    auto ann = DomainSpec::annulus(1.0, 1.5);
    auto wa = truncation_window(ann, pw, 100.0);
    CHECK(wa.first == doctest::Approx(1.0));
    CHECK(wa.second == doctest::Approx(1.5));

    CHECK_THROWS_AS((void)truncation_window(ext, pw, 0.0), std::domain_error);
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS((void)DomainSpec::annulus(1.5, 1.0), config_error);
    CHECK_THROWS_AS((void)DomainSpec::annulus(0.0, 1.0), config_error);
    auto d = DomainSpec::exterior_disc();
    d.truncation_width_factor = 4.0;
    CHECK_THROWS_AS(d.validate(), config_error);
}

TEST_CASE("free Neumann annulus fiber has ground energy zero, constant mode") {
    auto ann = DomainSpec::annulus(1.0, 1.5);
    auto c1 = RadialFieldSpec::constant(1.0);
    auto T = build_fiber(ann, c1, 0, 0.0, 500);
    auto p = ground_pair(T); // Rayleigh polish beats the eps*||T|| bisection floor
    CHECK(std::fabs(p.value) <= 1e-12);
    const double ref = p.vector[0];
    for (double v : p.vector) CHECK(v == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("hermiticity is structural and matrix matches its form") {
    auto ann = DomainSpec::annulus(1.0, 1.5);
    auto c1 = RadialFieldSpec::constant(1.0);
    auto T = build_fiber(ann, c1, 2, 3.0, 64);
    // q[u] computed from the form equals u' K u assembled from diag/offdiag
    std::vector<double> u(T.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.1 * static_cast<double>(i) + 0.3);
    std::vector<double> y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) y[i] = u[i] * std::sqrt(T.weight[i]);
    double quad = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double v = T.diag[i] * y[i];
        if (i > 0) v += T.offdiag[i - 1] * y[i - 1];
        if (i + 1 < u.size()) v += T.offdiag[i] * y[i + 1];
        quad += y[i] * v;
    }
    CHECK(quad == doctest::Approx(T.form_value(u)).epsilon(1e-11));
}

TEST_CASE("grid refinement: annulus fiber m=1, B=2 against Richardson oracle") {
    auto ann = DomainSpec::annulus(1.0, 1.5);
    auto c1 = RadialFieldSpec::constant(1.0);
    const double l1 = ground_energy(build_fiber(ann, c1, 1, 2.0, 2000));
    const double l2 = ground_energy(build_fiber(ann, c1, 1, 2.0, 4000));
    const double rich = (4.0 * l2 - l1) / 3.0;
    CHECK(std::fabs(l1 - rich) <= 1e-6);
    // independently frozen continuum value (vertex-FD + LAPACK oracle)
    CHECK(rich == doctest::Approx(0.2726650957).epsilon(2e-7));
}

TEST_CASE("grid convergence order >= 1.9") {
    auto ann = DomainSpec::annulus(1.0, 2.0);
    auto c1 = RadialFieldSpec::constant(1.0);
    // m=0, B=3: potential (3r/2)^2 drives a nontrivial profile
    const double a = ground_energy(build_fiber(ann, c1, 0, 3.0, 250));
    const double b = ground_energy(build_fiber(ann, c1, 0, 3.0, 500));
    const double c = ground_energy(build_fiber(ann, c1, 0, 3.0, 1000));
    const double order = std::log2(std::fabs(a - b) / std::fabs(b - c));
    CHECK(order >= 1.9);
}

TEST_CASE("diamagnetic floor: lambda1 >= min potential") {
    auto ann = DomainSpec::annulus(1.0, 1.5);
    auto c1 = RadialFieldSpec::constant(1.0);
    for (long m : {0L, 1L, 3L}) {
        const double B = 2.5;
        auto T = build_fiber(ann, c1, m, B, 800);
        const double lam = ground_energy(T);
        double vmin = potential(c1, m, B, 1.0);
        for (int i = 0; i <= 400; ++i)
            vmin = std::min(vmin, potential(c1, m, B, 1.0 + 0.5 * i / 400.0));
        CHECK(lam >= vmin - 1e-8 * std::max(1.0, std::fabs(vmin)));
    }
}

TEST_CASE("disc fiber near round(Phi B) lands in the surface-energy bracket") {
    auto disc = DomainSpec::disc();
    auto pw = RadialFieldSpec::parabolic_well(0.05);
    const double B = 500.0;
    const long m = std::lround(pw.flux() * B);
    const double lam = ground_energy(build_fiber(disc, pw, m, B, 3000));
    const double theta0 = 0.590106125;
    CHECK(lam >= theta0 * 0.05 * B * 0.95);
    CHECK(lam <= theta0 * 0.05 * B + 2.0 * std::sqrt(B));
}

TEST_CASE("truncation robustness: doubling the width factor is inert at B=100") {
    auto pw = RadialFieldSpec::parabolic_well(0.05);
    auto ext = DomainSpec::exterior_disc(); // factor 12
    auto ext2 = DomainSpec::exterior_disc();
    ext2.truncation_width_factor = 24.0;
    const double B = 100.0;
    const long m = std::lround(pw.flux() * B + 0.768183653 * std::sqrt(0.05 * B));
    // same h in both windows so the node sets coincide on the overlap
    const double lam1 = ground_energy(build_fiber(ext, pw, m, B, 1200));
    const double lam2 = ground_energy(build_fiber(ext2, pw, m, B, 2400));
    CHECK(std::fabs(lam1 - lam2) <= 1e-8 * std::fabs(lam1));
}

TEST_CASE("resolution and argument errors") {
    auto pw = RadialFieldSpec::parabolic_well(0.05);
    auto ext = DomainSpec::exterior_disc();
    CHECK_THROWS_AS((void)build_fiber(ext, pw, 5, 400.0, 8), std::invalid_argument);
    try {
        (void)build_fiber(ext, pw, 5, 10000.0, 20); // window >> 16 nodes/loc
        FAIL("expected resolution_error");
    } catch (const resolution_error& e) {
        CHECK(e.min_n > 20);
    }
    auto pl = DomainSpec::plane();
    auto c1 = RadialFieldSpec::constant(1.0);
    CHECK_THROWS_AS((void)build_fiber(pl, c1, 5, 400.0, 2000), config_error);
}

TEST_CASE("default grid resolves the localization length") {
    auto pw = RadialFieldSpec::parabolic_well(0.05);
    auto disc = DomainSpec::disc();
    const std::size_t n = default_fiber_n(disc, pw, 500.0);
    const double h = 1.0 / static_cast<double>(n);
    CHECK(h <= localization_length(pw, 500.0) / 200.0);
    CHECK(n <= 200000);
}

} // TEST_SUITE
