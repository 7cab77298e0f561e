#include <doctest.h>

#include <cmath>

#include "retal/decay.hpp"

using namespace retal;
using decay::DecayFn;
using decay::Parity;

namespace {

const Rational kTenth(1, 10);

// independent oracle: largest integer of the wanted parity at or below x,
// found by scanning down from ceil(x)
std::int64_t parity_floor_oracle(double x, bool odd) {
    for (std::int64_t k = (std::int64_t)std::ceil(x); ; --k)
        if ((double)k <= x + 1e-12 && (k % 2 != 0) == odd) return k;
}

}  // namespace

TEST_CASE("linear evaluation is exact") {
    auto fn = DecayFn::linear(kTenth);
    CHECK(fn.at(5).rat() == Rational(1, 2));
    CHECK(fn.at(0).rat() == Rational(1));
    CHECK(fn.at(15).rat() == Rational(0));  // clamped past 1/gamma = 10
    CHECK(fn.at(10).rat() == Rational(0));
    CHECK(fn.at_real(Scalar(Rational(13, 2))).rat() == Rational(35, 100));
    CHECK_THROWS_AS(fn.at(-1), std::domain_error);
}

TEST_CASE("geometric evaluation reaches 12 significant digits") {
    auto fn = DecayFn::geometric(kTenth);
    CHECK(fn.at(0).dbl() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fn.at(2).dbl() == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(fn.at(10).dbl() == doctest::Approx(std::pow(0.9, 10)).epsilon(1e-12));
    CHECK(!fn.exact());
}

TEST_CASE("table evaluation is integer-only with a zero tail") {
    auto fn = DecayFn::table({Rational(1), Rational(4, 5), Rational(3, 5), Rational(0)});
    CHECK(fn.at(0).rat() == Rational(1));
    CHECK(fn.at(2).rat() == Rational(3, 5));
    CHECK(fn.at(9).rat() == Rational(0));  // trailing zero extends
    CHECK_THROWS_AS(fn.at_real(Scalar::approx(1.5)), std::domain_error);

    auto positive_end = DecayFn::table({Rational(1), Rational(1, 2)});
    CHECK_THROWS_AS(positive_end.at(5), std::domain_error);

    CHECK_THROWS(DecayFn::table({Rational(1, 2)}));              // must start at 1
    CHECK_THROWS(DecayFn::table({Rational(1), Rational(1)}));    // flat while positive
    CHECK_THROWS(DecayFn::table({Rational(1), Rational(2)}));    // above 1
}

TEST_CASE("inverse picks the smallest preimage") {
    auto lin = DecayFn::linear(kTenth);
    CHECK(lin.inverse(Rational(2, 5)).rat() == Rational(6));
    CHECK(lin.inverse(Rational(1)).rat() == Rational(0));
    CHECK(lin.inverse(Rational(0)).rat() == Rational(10));  // first clamp point

    auto geo = DecayFn::geometric(kTenth);
    CHECK(geo.inverse(Rational(1)).dbl() == doctest::Approx(0.0));
    CHECK(geo.inverse(Rational(81, 100)).dbl() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(geo.inverse(Rational(0)), std::domain_error);

    auto tab = DecayFn::table({Rational(1), Rational(4, 5), Rational(3, 5), Rational(0)});
    CHECK(tab.inverse(Rational(3, 5)).rat() == Rational(2));
    CHECK(tab.inverse(Rational(1)).rat() == Rational(0));
    CHECK_THROWS_AS(tab.inverse(Rational(7, 10)), std::domain_error);  // skipped value

    CHECK_THROWS_AS(lin.inverse(Rational(-1, 10)), std::domain_error);
    CHECK_THROWS_AS(lin.inverse(Rational(11, 10)), std::domain_error);
}

TEST_CASE("inverse round trip across the attained range") {
    auto lin = DecayFn::linear(Rational(3, 100));
    for (int i = 0; i <= 100; ++i) {
        Rational y(i, 100);
        CHECK(lin.at_real(lin.inverse(y)).rat() == y);
    }
    auto geo = DecayFn::geometric(Rational(7, 100));
    for (int i = 1; i <= 100; ++i) {
        Rational y(i, 100);
        CHECK(std::abs(geo.at_real(geo.inverse(y)).dbl() - y.to_double()) < 1e-9);
    }
}

TEST_CASE("phi is monotone, strictly so above the clamp") {
    auto lin = DecayFn::linear(kTenth);
    auto geo = DecayFn::geometric(kTenth);
    for (std::int64_t t = 0; t < 20; ++t) {
        CHECK(lin.at(t).rat() >= lin.at(t + 1).rat());
        if (lin.at(t).rat() > Rational(0)) CHECK(lin.at(t).rat() > lin.at(t + 1).rat());
        CHECK(geo.at(t).dbl() > geo.at(t + 1).dbl());
    }
}

TEST_CASE("break-even times match the hand-worked values") {
    auto times = decay::break_even_times(Rational(10000), Rational(4000), Rational(2000),
                                         DecayFn::linear(kTenth));
    CHECK(times.attacker.rat() == Rational(6));
    REQUIRE(times.defender.has_value());
    CHECK(times.defender->rat() == Rational(8));

    // r > c: the defender never prefers quitting
    auto unbounded = decay::break_even_times(Rational(10000), Rational(4000), Rational(5000),
                                             DecayFn::geometric(kTenth));
    CHECK(!unbounded.defender.has_value());

    auto tight = decay::break_even_times(Rational(10000), Rational(9999), Rational(1),
                                         DecayFn::linear(Rational(1)));
    CHECK(tight.attacker.rat() == Rational(1, 10000));

    CHECK_THROWS_AS(decay::break_even_times(Rational(10000), Rational(10000), Rational(1),
                                            DecayFn::linear(kTenth)),
                    std::domain_error);
    CHECK_THROWS_AS(decay::break_even_times(Rational(100), Rational(200), Rational(1),
                                            DecayFn::linear(kTenth)),
                    std::domain_error);
}

TEST_CASE("attacker breaks even before the defender") {
    for (int cv = 1; cv <= 9; ++cv)
        for (int r = 1; r <= 5; ++r) {
            Rational v(10000), c = Rational(cv, 10) * v;
            Rational rep = Rational(r, 10) * c;  // r < c keeps both finite
            for (auto fn : {DecayFn::linear(kTenth), DecayFn::geometric(kTenth)}) {
                auto times = decay::break_even_times(v, c, rep, fn);
                REQUIRE(times.defender.has_value());
                CHECK(times.attacker < *times.defender);
            }
        }
}

TEST_CASE("linear inverse steps by exactly one when the argument drops by gamma") {
    int checked = 0;
    for (int g = 1; g <= 10 && checked < 200; ++g)
        for (int cv = 1; cv < 50 && checked < 200; ++cv) {
            Rational gamma(g, 20), ratio(cv, 50);
            if (!(ratio - gamma > Rational(0))) continue;
            auto fn = DecayFn::linear(gamma);
            CHECK(fn.inverse(ratio - gamma).rat() == fn.inverse(ratio).rat() + Rational(1));
            ++checked;
        }
    CHECK(checked == 200);
}

TEST_CASE("parity floor agrees with the scan oracle") {
    CHECK(decay::parity_floor(Scalar::approx(6.9), Parity::Odd) == 5);
    CHECK(decay::parity_floor(Scalar(Rational(6)), Parity::Even) == 6);
    CHECK(decay::parity_floor(Scalar(Rational(9)), Parity::Odd) == 9);
    CHECK_THROWS_AS(decay::parity_floor(Scalar(Rational(1, 2)), Parity::Odd),
                    std::domain_error);

    for (int i = 0; i <= 200; ++i) {
        Rational x(i, 7);
        Scalar s(x);
        if (x >= Rational(1))
            CHECK(decay::parity_floor(s, Parity::Odd) == parity_floor_oracle(x.to_double(), true));
        CHECK(decay::parity_floor(s, Parity::Even) == parity_floor_oracle(x.to_double(), false));
    }
}

TEST_CASE("config round trip") {
    for (const char* text : {"linear(0.1)", "geometric(0.05)", "table(1,0.8,0.6,0)"}) {
        auto fn = DecayFn::parse(text);
        CHECK(fn.to_config_string() == text);
        CHECK(DecayFn::parse(fn.to_config_string()) == fn);
    }
    CHECK_THROWS(DecayFn::parse("cubic(0.1)"));
    CHECK_THROWS(DecayFn::parse("linear"));
}
