#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "fde/scaled.hpp"

using fde::ScaledValue;

namespace {
// deterministic LCG in (0,1)
struct Lcg {
    std::uint64_t s = 12345;
    double next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) / 9007199254740992.0;
    }
};
}  // namespace

TEST_CASE("normal form after construction") {
    Lcg rng;
    for (int i = 0; i < 2000; ++i) {
        double v = (rng.next() - 0.5) * std::pow(10.0, 30.0 * (rng.next() - 0.5));
        auto s = ScaledValue::of(v);
        if (v == 0.0) {
            CHECK(s.is_zero());
            continue;
        }
        double am = std::fabs(s.mantissa);
        CHECK(am >= 1.0);
        CHECK(am < M_E);
    }
}

TEST_CASE("exp/log round-trip exact to 1 ulp of the mantissa") {
    Lcg rng;
    for (int i = 0; i < 2000; ++i) {
        double v = (rng.next() - 0.5) * 2.0e3;
        if (v == 0.0) continue;
        auto s = ScaledValue::of(v);
        double back = s.to_double();
        // one ulp from the log/exp pair plus one from the product
        CHECK(std::fabs(back - v) <= 4.0 * std::fabs(v) * 1.1e-16);
        CHECK(s.log_abs() == doctest::Approx(std::log(std::fabs(v))).epsilon(1e-14));
    }
}

TEST_CASE("arithmetic matches double arithmetic in-range") {
    Lcg rng;
    for (int i = 0; i < 2000; ++i) {
        double a = (rng.next() - 0.5) * 100.0;
        double b = (rng.next() - 0.5) * 100.0;
        auto sa = ScaledValue::of(a), sb = ScaledValue::of(b);
        CHECK((sa * sb).to_double() == doctest::Approx(a * b).epsilon(1e-13));
        CHECK((sa + sb).to_double() == doctest::Approx(a + b).epsilon(1e-12));
        CHECK((sa - sb).to_double() == doctest::Approx(a - b).epsilon(1e-12));
        if (b != 0.0) CHECK((sa / sb).to_double() == doctest::Approx(a / b).epsilon(1e-13));
        CHECK((sa < sb) == (a < b));
    }
}

TEST_CASE("exponents far past double range") {
    auto big = ScaledValue::exp_of(500.0);    // e^500
    auto huge = big * big;                    // e^1000, overflows double
    CHECK(huge.log_abs() == doctest::Approx(1000.0));
    auto ratio = huge / big;
    CHECK(ratio.to_double() == doctest::Approx(std::exp(500.0)).epsilon(1e-13));
    auto tiny = ScaledValue::exp_of(-1000.0);
    CHECK((huge * tiny).to_double() == doctest::Approx(1.0).epsilon(1e-13));
    // addition keeps the dominant term when the other is negligible
    auto sum = huge + ScaledValue::of(1.0);
    CHECK(sum.log_abs() == doctest::Approx(1000.0));
}

TEST_CASE("ordering compares true magnitude, not representation") {
    // e^5 = 148.41 < 2.5 e^{4.2} = 166.84, despite the larger log_scale
    ScaledValue a{1.0, 5.0};
    ScaledValue b{2.5, 4.2};
    CHECK(a < b);
    CHECK(!(b < a));
    CHECK(a <= b);
    // negatives flip
    CHECK(-b < -a);
    // zero sits between signs
    CHECK(ScaledValue::zero() < a);
    CHECK(-a < ScaledValue::zero());
}

TEST_CASE("sign and negation") {
    auto v = ScaledValue::of(-3.5);
    CHECK(v.sign() == -1.0);
    CHECK((-v).sign() == 1.0);
    CHECK(v.abs().to_double() == doctest::Approx(3.5));
    CHECK(ScaledValue::zero().sign() == 0.0);
}
