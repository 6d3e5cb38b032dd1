#include <doctest.h>

#include "magscan/eigen.hpp"
#include "magscan/errors.hpp"
#include "magscan/models.hpp"

#include <cmath>

using namespace magscan;

// Independently computed reference values (vertex-centered FD + LAPACK,
// Richardson-extrapolated).
namespace ref {
constexpr double theta0 = 0.590106125;
constexpr double xi0 = 0.768183653;
constexpr double phi0sq = 0.762204322;
constexpr double Xi = 0.660952005;
constexpr double c0 = 1.500364;
} // namespace ref

TEST_SUITE("models") {

TEST_CASE("de Gennes curve limits: xi=0 and large xi give the oscillator level") {
    CHECK(degennes_curve(0.0, 2000, 10.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(degennes_curve(10.0, 4000, 18.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS((void)degennes_curve(10.0, 4000, 12.0), resolution_error);
}

TEST_CASE("de Gennes constants against the independent oracle") {
    const auto r = degennes_constants(3000, 12.0);
    CHECK(r.theta0 == doctest::Approx(ref::theta0).epsilon(2e-6));
    CHECK(r.xi0 == doctest::Approx(ref::xi0).epsilon(2e-6));
    CHECK(r.phi0sq == doctest::Approx(ref::phi0sq).epsilon(2e-5));
    CHECK(r.theta0 > 0);
    CHECK(r.theta0 < 1);
    // minimized value sits at the square root of itself
    CHECK(std::fabs(r.xi0 * r.xi0 - r.theta0) <= 1e-8);
    // curvature identity
    CHECK(std::fabs(r.ddlambda_xi - 2.0 * r.xi0 * r.phi0sq) <= 1e-3 * r.ddlambda_xi);
    // curve is convex around the minimum
    for (double s : {0.01, 0.05, 0.1}) {
        CHECK(degennes_curve(r.xi0 + s, 3000, 12.0) >= r.theta0);
        CHECK(degennes_curve(r.xi0 - s, 3000, 12.0) >= r.theta0);
    }
}

TEST_CASE("de Gennes moment identities") {
    const auto r = degennes_constants(3000, 12.0);
    const auto m = degennes_moments(r);
    CHECK(m[0] <= 1e-10); // normalization
    CHECK(m[1] <= 1e-6);  // first moment vanishes at the minimizer
    for (int i = 0; i < 7; ++i) CHECK(m[i] <= 1e-5);
}

TEST_CASE("regularized resolvent identity of the de Gennes operator") {
    const auto r = degennes_constants(3000, 12.0);
    const auto id = seconddG_identity(r);
    CHECK(id.value > 0);
    CHECK(id.residual <= 1e-4);
    // consistency with the curvature: value = ddlambda/2
    CHECK(id.value == doctest::Approx(r.ddlambda_xi / 2.0).epsilon(1e-3));
    // <b, reg b> = (1 - xi0 phi0^2)/4
    const ModelSolution& s = r.fine;
    std::vector<double> b(s.psi.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = (s.rho[i] - s.param) * s.psi[i];
    const auto x = regularized_solve(s.T, s.lambda, s.psi, b);
    CHECK(weighted_dot(s.T, b, x) ==
          doctest::Approx((1.0 - ref::xi0 * ref::phi0sq) / 4.0).epsilon(1e-4));
}

TEST_CASE("Montgomery curve: evenness and value") {
    for (double a : {0.3, 0.7, 1.5})
        CHECK(std::fabs(montgomery_curve(a, 2000, 8.0) - montgomery_curve(-a, 2000, 8.0)) <=
              1e-10);
    CHECK(montgomery_curve(0.0, 4000, 8.0) == doctest::Approx(0.66).epsilon(0.005 / 0.66));
    CHECK_THROWS_AS((void)montgomery_curve(5.0, 2000, 6.0), resolution_error);
}

TEST_CASE("Montgomery constants") {
    const auto r = montgomery_constants(2000, 8.0);
    CHECK(r.Xi > 0.618);
    CHECK(r.Xi < 0.664);
    CHECK(std::fabs(r.Xi - 0.66) <= 0.005);
    CHECK(r.Xi == doctest::Approx(ref::Xi).epsilon(2e-6));
    CHECK(r.c0 > 0);
    CHECK(r.c0 == doctest::Approx(ref::c0).epsilon(1e-3));
    CHECK(std::fabs(r.c0 - r.c0_resolvent) <= 1e-3 * r.c0);
    CHECK(std::fabs(r.scan_argmin) <= 0.05);
    CHECK(r.lambda2_scan_inf == doctest::Approx(2.5049).epsilon(0.01));
}

TEST_CASE("doubling the window changes the curve values below 1e-10") {
    // matched h so the node sets coincide on the overlap
    const double a = degennes_curve(ref::xi0, 2000, 10.0);
    const double b = degennes_curve(ref::xi0, 4000, 20.0);
    CHECK(std::fabs(a - b) <= 1e-10);
    const double xa = montgomery_curve(0.0, 4000, 8.0);
    const double xb = montgomery_curve(0.0, 8000, 16.0);
    CHECK(std::fabs(xa - xb) <= 1e-10);
}

TEST_CASE("combined constants record validates") {
    const auto mc = compute_model_constants(3000, 12.0, 2000, 8.0);
    CHECK(mc.theta0 == doctest::Approx(ref::theta0).epsilon(1e-5));
    CHECK(mc.Xi == doctest::Approx(ref::Xi).epsilon(1e-5));
    CHECK(mc.degennes_meta.extrapolation_order == 2);
    CHECK_NOTHROW(mc.validate());
}

} // TEST_SUITE
