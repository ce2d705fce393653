#include <capkin/rate.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace capkin;

TEST_CASE("rate spec validation") {
    RateSpec ma;
    ma.kind = RateKind::mass_action;
    ma.k = 1.5;
    CHECK_NOTHROW(validate_rate_spec(ma, "r"));
    ma.k = 0.0;
    CHECK_THROWS_AS(validate_rate_spec(ma, "r"), RateValidationError);
    ma.k = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_rate_spec(ma, "r"), RateValidationError);

    RateSpec sat;
    sat.kind = RateKind::saturating;
    sat.k = 1.0;
    sat.a = 0.5;
    sat.b = 0.5;
    CHECK_NOTHROW(validate_rate_spec(sat, "r"));
    sat.a = -0.5;
    CHECK_THROWS_AS(validate_rate_spec(sat, "r"), RateValidationError);
    sat.a = 0.5;
    sat.b = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_rate_spec(sat, "r"), RateValidationError);

    RateSpec cust;
    cust.kind = RateKind::custom;
    CHECK_THROWS_AS(validate_rate_spec(cust, "r"), RateValidationError);  // empty name
    cust.name = "mine";
    CHECK_NOTHROW(validate_rate_spec(cust, "r"));
}

TEST_CASE("mass action transition rate and partials") {
    RateSpec spec;
    spec.kind = RateKind::mass_action;
    spec.k = 2.5;
    const auto rate = TransitionRate::make(spec);
    CHECK(rate.value(0.3, 0.7) == Catch::Approx(2.5 * 0.3 * 0.7));
    CHECK(rate.value(0.0, 0.7) == 0.0);
    CHECK(rate.value(0.3, 0.0) == 0.0);
    CHECK(rate.dn(0.3, 0.7) == Catch::Approx(2.5 * 0.7));
    CHECK(rate.ds(0.3, 0.7) == Catch::Approx(2.5 * 0.3));
}

TEST_CASE("saturating transition rate and partials match finite differences") {
    RateSpec spec;
    spec.kind = RateKind::saturating;
    spec.k = 1.7;
    spec.a = 0.6;
    spec.b = 1.2;
    const auto rate = TransitionRate::make(spec);
    const double n = 0.45, s = 0.85;
    CHECK(rate.value(n, s) == Catch::Approx(1.7 * (n / (0.6 + n)) * (s / (1.2 + s))));
    CHECK(rate.value(0.0, s) == 0.0);
    const double h = 1e-7;
    const double fdn = (rate.value(n + h, s) - rate.value(n - h, s)) / (2 * h);
    const double fds = (rate.value(n, s + h) - rate.value(n, s - h)) / (2 * h);
    CHECK(rate.dn(n, s) == Catch::Approx(fdn).epsilon(1e-6));
    CHECK(rate.ds(n, s) == Catch::Approx(fds).epsilon(1e-6));
}

TEST_CASE("custom rates resolve through the registry") {
    RateRegistry reg;
    reg.add("bilinear", [](double n, double s) { return 0.5 * n * s; });
    RateSpec spec;
    spec.kind = RateKind::custom;
    spec.name = "bilinear";
    const auto rate = TransitionRate::make(spec, &reg);
    CHECK(rate.value(0.4, 0.5) == Catch::Approx(0.1));
    // numeric partials for custom rates
    CHECK(rate.dn(0.4, 0.5) == Catch::Approx(0.25).epsilon(1e-5));

    RateSpec missing;
    missing.kind = RateKind::custom;
    missing.name = "nope";
    CHECK_THROWS_AS(TransitionRate::make(missing, &reg), RateValidationError);
    CHECK_THROWS_AS(TransitionRate::make(spec, nullptr), RateValidationError);
}

TEST_CASE("kinetic assumptions are enforced on custom rates") {
    RateRegistry reg;
    // violates the vanishing condition: positive flow out of an empty donor
    reg.add("offset", [](double n, double s) { return (n + 0.1) * s; });
    // violates monotonicity in the donor argument
    reg.add("hump", [](double n, double s) { return n * (2.0 - n) * s; });
    // negative values
    reg.add("negative", [](double n, double s) { return -n * s; });
    // fine
    reg.add("good", [](double n, double s) { return 0.7 * n * s * (1.0 + s); });

    auto make = [&](const char* name) {
        RateSpec spec;
        spec.kind = RateKind::custom;
        spec.name = name;
        return TransitionRate::make(spec, &reg);
    };
    CHECK_NOTHROW(validate_transition_rate(make("good"), 1.0, 1.0, "edge"));
    CHECK_THROWS_AS(validate_transition_rate(make("offset"), 1.0, 1.0, "edge"),
                    RateValidationError);
    CHECK_THROWS_AS(validate_transition_rate(make("hump"), 3.0, 1.0, "edge"),
                    RateValidationError);
    CHECK_THROWS_AS(validate_transition_rate(make("negative"), 1.0, 1.0, "edge"),
                    RateValidationError);
}

TEST_CASE("builtin rates pass their own assumption check") {
    RateSpec ma;
    ma.kind = RateKind::mass_action;
    ma.k = 1.9;
    CHECK_NOTHROW(validate_transition_rate(TransitionRate::make(ma), 2.0, 1.5, "edge"));
    RateSpec sat;
    sat.kind = RateKind::saturating;
    sat.k = 1.2;
    sat.a = 0.9;
    sat.b = 0.4;
    CHECK_NOTHROW(validate_transition_rate(TransitionRate::make(sat), 2.0, 1.5, "edge"));
}
