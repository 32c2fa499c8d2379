#include <doctest.h>

#include <cmath>

#include "semrate/scenarios.hpp"

using namespace semrate;

TEST_CASE("example 1 construction") {
    const auto scen = build_example1();
    REQUIRE(scen.prior.size() == 101);
    REQUIRE(scen.semchan.label_count() == 4);

    SUBCASE("adult logistic crosses one half at its center") {
        CHECK(scen.semchan(18, 2) == 0.5);
    }
    SUBCASE("non-adult is the exact complement of adult") {
        for (std::size_t i = 0; i < 101; ++i)
            CHECK(scen.semchan(i, 0) + scen.semchan(i, 2) == 1.0);
    }
    SUBCASE("youth peaks at 22") {
        CHECK(scen.semchan(22, 1) == 1.0);
    }
    SUBCASE("elder logistic crosses one half at 60") {
        CHECK(scen.semchan(60, 3) == 0.5);
    }
    SUBCASE("prior mode sits at age zero") {
        for (std::size_t i = 1; i < 101; ++i) CHECK(scen.prior[0] > scen.prior[i]);
    }
    SUBCASE("grid extent is a knob") {
        CHECK(build_example1(80.0).prior.size() == 81);
    }
}

TEST_CASE("example 2 construction") {
    const auto scen = build_example2();
    REQUIRE(scen.prior.size() == 256);
    REQUIRE(scen.semchan.label_count() == 8);
    CHECK(scen.semchan(2, 0) == 0.5);     // low shoulder center
    CHECK(scen.semchan(52, 3) == 1.0);    // bump with mu=52 peaks at 52
    CHECK(scen.semchan(200, 7) == 0.5);   // high shoulder center
    CHECK(scen.semchan(0, 0) > 0.8);
    CHECK(scen.semchan(255, 7) > 0.99);
}

TEST_CASE("reproduce example1 structural rows hold") {
    ReproduceOptions o;
    const auto rtheta = reproduce("example1", Variant::rtheta, 1.0, o);
    CHECK(rtheta.result.converged);
    CHECK(rtheta.hard_passed());
    CHECK(rtheta.result.label_marginal[3] < 1e-3);

    const auto rg = reproduce("example1", Variant::rg, 1.0, o);
    CHECK(rg.result.converged);
    CHECK(rg.hard_passed());
    CHECK(rg.result.rate_bits > rtheta.result.rate_bits);
    CHECK(rg.result.label_marginal[1] > rtheta.result.label_marginal[1]);
    CHECK(rg.result.label_marginal[3] > rtheta.result.label_marginal[3]);
}

TEST_CASE("reproduce example1 elder marginal decreases along the whole trace") {
    const auto report = reproduce("example1", Variant::rtheta, 1.0, {});
    const auto& trace = report.result.trace;
    REQUIRE(trace.size() >= 2);
    for (std::size_t t = 1; t < trace.size(); ++t)
        CHECK(trace[t].marginal[3] < trace[t - 1].marginal[3]);
}

TEST_CASE("the trace rate decreases on the worked scenarios") {
    for (const Variant v : {Variant::rtheta, Variant::rg}) {
        const auto report = reproduce("example1", v, 1.0, {});
        const auto& trace = report.result.trace;
        for (std::size_t t = 1; t < trace.size(); ++t)
            CHECK(trace[t].rate_bits <= trace[t - 1].rate_bits + 1e-12);
    }
    const auto e2 = reproduce("example2", Variant::rtheta, 1.0, {});
    for (std::size_t t = 1; t < e2.result.trace.size(); ++t)
        CHECK(e2.result.trace[t].rate_bits <= e2.result.trace[t - 1].rate_bits + 1e-12);
}

TEST_CASE("reproduce example2 structural suite") {
    const auto report = reproduce("example2", Variant::rtheta, 1.0, {});
    CHECK(report.result.converged);
    CHECK(report.hard_passed());
    CHECK(report.all_passed());
    CHECK(report.label_indexing_note.find("mu=14,30,52,80,120,170") != std::string::npos);
}

TEST_CASE("reproduce via the distortion transform matches the rtheta route") {
    // rd with d = ln(1/T) at s=-1 is the same constraint as rtheta at |s|=1
    const auto a = reproduce("example1", Variant::rtheta, 1.0, {});
    const auto b = reproduce("example1", Variant::rd, -1.0, {});
    CHECK(b.result.rate_bits == doctest::Approx(a.result.rate_bits).epsilon(1e-9));
    CHECK(b.hard_passed());
}

TEST_CASE("unknown scenario is a configuration error") {
    CHECK_THROWS_AS(reproduce("example9", Variant::rtheta, 1.0, {}), ConfigError);
}
