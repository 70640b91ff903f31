#include <cmath>

#include "doctest.h"
#include "fde/quadrature.hpp"

using namespace fde;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    for (int n : {2, 5, 16, 48}) {
        auto [x, w] = gauss_legendre(n);
        REQUIRE(x.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (double wi : w) wsum += wi;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        // degree 2n-1 monomial is exact; odd powers vanish by symmetry
        int k = 2 * n - 2;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], k);
        CHECK(acc == doctest::Approx(2.0 / (k + 1)).epsilon(1e-12));
    }
}

TEST_CASE("adaptive integration of smooth functions") {
    auto r = integrate_gk([](double t) { return std::exp(-t); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));

    r = integrate_gk([](double t) { return std::sin(10.0 * t); }, 0.0, 0.5 * M_PI);
    CHECK(r.value == doctest::Approx((1.0 - std::cos(5.0 * M_PI)) / 10.0).epsilon(1e-12));
}

TEST_CASE("adaptive integration refines near a spike") {
    // sharp but integrable peak at x = 0.3
    auto f = [](double t) { return 1.0 / (1e-4 + (t - 0.3) * (t - 0.3)); };
    auto r = integrate_gk(f, 0.0, 1.0, 1e-12, 4000);
    double exact = (std::atan(0.7 / 1e-2) + std::atan(0.3 / 1e-2)) / 1e-2;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
    CHECK(r.subdivisions > 1);
}

TEST_CASE("non-convergent quadrature throws with context") {
    auto f = [](double t) { return 1.0 / std::fabs(t - 0.5); };  // non-integrable
    CHECK_THROWS_AS(integrate_gk(f, 0.0, 1.0, 1e-12, 20), NumericalError);
}

TEST_CASE("composite panels handle oscillatory integrands") {
    // int_0^10 cos(20 t) dt = sin(200)/20
    auto v = integrate_panels([](double t) { return std::cos(20.0 * t); }, 0.0, 10.0, 64, 12);
    CHECK(v == doctest::Approx(std::sin(200.0) / 20.0).epsilon(1e-10));
}
