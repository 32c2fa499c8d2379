#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "semrate/bits.hpp"
#include "semrate/measures.hpp"
#include "semrate/solver.hpp"

using namespace semrate;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Grid index_grid(std::size_t m) {
    std::vector<double> pts(m);
    for (std::size_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i);
    return Grid(std::move(pts));
}

std::vector<double> dirichlet(std::mt19937& rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(n);
    for (auto& v : w) v = e(rng) + 1e-6;
    return w;
}

DistortionMatrix binary_symmetric() {
    return DistortionMatrix(Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
}

Distribution coin() { return Distribution(index_grid(2), ProbVector({0.5, 0.5})); }

SemanticChannel random_semchan(std::mt19937& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> u(0.02, 1.0);
    Matrix t(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) t(i, j) = u(rng);
    return SemanticChannel(index_grid(m), LabelSet::numbered(n), std::move(t));
}

}  // namespace

TEST_CASE("build_kernel") {
    SUBCASE("rd at s=0 is all ones") {
        const auto k = build_rd_kernel(binary_symmetric(), 0.0);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(std::exp(k.log_kernel()(i, j)) == 1.0);
    }
    SUBCASE("rd rejects positive s") {
        CHECK_THROWS_AS(build_rd_kernel(binary_symmetric(), 0.5), BadParams);
    }
    SUBCASE("infinite distortion maps to kernel zero even at s=0") {
        const DistortionMatrix d(Matrix::from_rows({{0.0, kInf}, {1.0, 0.0}}));
        const auto k = build_rd_kernel(d, 0.0);
        CHECK(k.log_kernel()(0, 1) == -kInf);
        CHECK(k.shifted_kernel()(0, 1) == 0.0);
    }
    SUBCASE("rtheta with crisp truth is the 0/1 table") {
        const SemanticChannel sc(index_grid(2), LabelSet::numbered(2),
                                 Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}));
        const auto k = build_rtheta_kernel(sc, 1.0);
        CHECK(std::exp(k.log_kernel()(0, 0)) == 1.0);
        CHECK(k.log_kernel()(0, 1) == -kInf);
    }
    SUBCASE("rg column by hand") {
        const SemanticChannel sc(index_grid(2), LabelSet::numbered(2),
                                 Matrix::from_rows({{1.0, 1.0}, {0.5, 1.0}}));
        const auto k = build_rg_kernel(sc, coin(), 1.0);
        // T(theta_1) = 0.75: column (1/0.75, 0.5/0.75)
        CHECK(std::exp(k.log_kernel()(0, 0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
        CHECK(std::exp(k.log_kernel()(1, 0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("a row excluded by every label fails with its index") {
        const DistortionMatrix d(Matrix::from_rows({{kInf, kInf}, {0.0, 1.0}}));
        CHECK_THROWS_AS(build_rd_kernel(d, -1.0), AllZeroRow);
        try {
            build_rd_kernel(d, -1.0);
        } catch (const AllZeroRow& e) {
            CHECK(e.row == 0);
        }
    }
}

TEST_CASE("mmi_step") {
    SUBCASE("all-ones kernel copies the marginal into every row") {
        const auto k = build_rd_kernel(binary_symmetric(), 0.0);
        const auto r = mmi_step(ProbVector({0.3, 0.7}), k);
        CHECK(r.channel(0, 0) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(r.channel(1, 0) == doctest::Approx(0.3).epsilon(1e-15));
    }
    SUBCASE("crisp diagonal kernel with uniform marginal gives the identity") {
        const SemanticChannel sc(index_grid(2), LabelSet::numbered(2),
                                 Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}));
        const auto r = mmi_step(ProbVector::uniform(2), build_rtheta_kernel(sc, 1.0));
        CHECK(r.channel(0, 0) == 1.0);
        CHECK(r.channel(1, 1) == 1.0);
    }
    SUBCASE("hand normalization of a (1, 1/9) row") {
        const auto k = build_rd_kernel(binary_symmetric(), std::log(1.0 / 9.0));
        const auto r = mmi_step(ProbVector({0.5, 0.5}), k);
        CHECK(r.channel(0, 0) == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(r.channel(0, 1) == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("marginal support disjoint from row support") {
        const DistortionMatrix d(Matrix::from_rows({{0.0, kInf}, {kInf, 0.0}}));
        const auto k = build_rd_kernel(d, -1.0);
        CHECK_THROWS_AS(mmi_step(ProbVector({0.0, 1.0}), k), ZeroPartition);
    }
}

TEST_CASE("mmi_iterate on the binary symmetric case") {
    const auto k = build_rd_kernel(binary_symmetric(), std::log(1.0 / 9.0));
    const auto r = mmi_iterate(coin(), k);
    CHECK(r.converged);
    CHECK(r.label_marginal[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.constraint == doctest::Approx(0.1).epsilon(1e-12));
    const double expected_rate = 1.0 + 0.9 * std::log2(0.9) + 0.1 * std::log2(0.1);
    CHECK(r.rate_bits == doctest::Approx(expected_rate).epsilon(1e-12));

    SUBCASE("parametric rate agrees with the direct rate") {
        const auto p = rate_point_parametric(coin(), k, r);
        CHECK(std::abs(p.rate_bits - r.rate_bits) < 1e-12);
        CHECK(p.constraint == doctest::Approx(0.1).epsilon(1e-12));
    }
}

TEST_CASE("mmi_iterate with an all-ones kernel is a one-step fixed point") {
    const auto k = build_rd_kernel(binary_symmetric(), 0.0);
    const Distribution prior(index_grid(2), ProbVector({0.3, 0.7}));
    const auto r = mmi_iterate(prior, k);
    CHECK(r.rate_bits == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.constraint == doctest::Approx(0.5).epsilon(1e-12));  // uniform marginal stays
    CHECK(r.iterations <= 2);
    // s=0: the parametric rate collapses to zero and every Z_i is 1
    const auto p = rate_point_parametric(prior, k, r);
    CHECK(p.rate_bits == doctest::Approx(0.0).epsilon(1e-14));
    for (double z : r.partition_values()) CHECK(z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("max_iter exhaustion returns best-so-far with the flag down") {
    const auto scen_truth = SemanticChannel(
        index_grid(3), LabelSet::numbered(2),
        Matrix::from_rows({{1.0, 0.4}, {0.6, 0.9}, {0.2, 1.0}}));
    SolveOptions o;
    o.tol = 1e-15;
    o.max_iter = 3;
    const auto r = mmi_iterate(Distribution(index_grid(3), ProbVector({0.4, 0.3, 0.3})),
                               build_rtheta_kernel(scen_truth, 1.0), o);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
    CHECK(r.trace.size() == 3);
}

TEST_CASE("zero-absorption: a dead label stays dead") {
    std::mt19937 rng(41);
    const auto sc = random_semchan(rng, 4, 3);
    const auto k = build_rtheta_kernel(sc, 1.0);
    const Distribution prior(index_grid(4), ProbVector::normalized(dirichlet(rng, 4)));
    SolveOptions o;
    o.initial_marginal = ProbVector({0.5, 0.0, 0.5});
    const auto r = mmi_iterate(prior, k, o);
    CHECK(r.label_marginal[1] == 0.0);
    for (const auto& t : r.trace) CHECK(t.marginal[1] == 0.0);
}

TEST_CASE("the alternating-minimization objective is nonincreasing") {
    // the iteration minimizes rate - s * constraint at fixed s; that scalar
    // is monotone on every instance (the rate alone need not be: when the
    // constraint term falls faster, the rate can climb toward the fixed
    // point from below)
    std::mt19937 rng(43);
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t m = 3 + rng() % 10, n = 2 + rng() % 4;
        const auto sc = random_semchan(rng, m, n);
        const Distribution prior(index_grid(m), ProbVector::normalized(dirichlet(rng, m)));
        const double s_abs = 0.5 + (rng() % 3) * 0.75;
        const auto kernel = build_rtheta_kernel(sc, s_abs);
        const auto r = mmi_iterate(prior, kernel, {});
        auto objective = [&](const TracePoint& t) {
            return nats_from_bits(t.rate_bits) - kernel.signed_s() * t.constraint;
        };
        for (std::size_t t = 1; t < r.trace.size(); ++t)
            CHECK(objective(r.trace[t]) <= objective(r.trace[t - 1]) + 1e-12);
    }
}

TEST_CASE("sweep_curve") {
    SUBCASE("rd closed-form points on the binary symmetric case") {
        const std::vector<double> s_values{0.0, std::log(1.0 / 9.0), std::log(1.0 / 99.0)};
        const auto points = sweep_curve(
            coin(), [](double s) { return build_rd_kernel(binary_symmetric(), s); }, s_values);
        REQUIRE(points.size() == 3);
        CHECK(points[0].constraint == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(points[1].constraint == doctest::Approx(0.1).epsilon(1e-10));
        CHECK(points[2].constraint == doctest::Approx(0.01).epsilon(1e-10));
        CHECK(points[0].rate_bits == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(points[1].rate_bits < points[2].rate_bits);
    }
    SUBCASE("a singleton sweep equals a direct solve") {
        const auto k = build_rd_kernel(binary_symmetric(), std::log(1.0 / 9.0));
        const auto direct = mmi_iterate(coin(), k);
        const auto points = sweep_curve(
            coin(), [](double s) { return build_rd_kernel(binary_symmetric(), s); },
            {std::log(1.0 / 9.0)});
        REQUIRE(points.size() == 1);
        CHECK(points[0].rate_bits == doctest::Approx(direct.rate_bits).epsilon(1e-12));
    }
    SUBCASE("one infeasible point is recorded and the sweep continues") {
        const DistortionMatrix d(Matrix::from_rows({{0.0, kInf}, {kInf, 0.0}}));
        std::size_t calls = 0;
        const auto points = sweep_curve(
            coin(),
            [&](double s) {
                ++calls;
                if (calls == 2) throw ZeroPartition(0);  // injected failure
                return build_rd_kernel(d, s);
            },
            {-0.5, -1.0, -2.0});
        REQUIRE(points.size() == 3);
        CHECK(points[1].error != "");
        CHECK(points[0].converged);
        CHECK(points[2].converged);
    }
    SUBCASE("warm and cold starts agree in rate") {
        std::mt19937 rng(47);
        const auto sc = random_semchan(rng, 12, 4);
        const Distribution prior(index_grid(12), ProbVector::normalized(dirichlet(rng, 12)));
        const std::vector<double> s_values{0.5, 1.0, 2.0};
        SweepOptions warm;
        warm.warm_start = true;
        SweepOptions cold;
        cold.warm_start = false;
        const auto factory = [&](double s) { return build_rtheta_kernel(sc, s); };
        const auto a = sweep_curve(prior, factory, s_values, warm);
        const auto b = sweep_curve(prior, factory, s_values, cold);
        for (std::size_t i = 0; i < s_values.size(); ++i)
            CHECK(std::abs(a[i].rate_bits - b[i].rate_bits) < 1e-7);
    }
    SUBCASE("parallel cold sweep matches the sequential one") {
        std::mt19937 rng(53);
        const auto sc = random_semchan(rng, 8, 3);
        const Distribution prior(index_grid(8), ProbVector::normalized(dirichlet(rng, 8)));
        const std::vector<double> s_values{0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
        const auto factory = [&](double s) { return build_rtheta_kernel(sc, s); };
        SweepOptions seq;
        seq.warm_start = false;
        SweepOptions par;
        par.warm_start = false;
        par.jobs = 4;
        const auto a = sweep_curve(prior, factory, s_values, seq);
        const auto b = sweep_curve(prior, factory, s_values, par);
        for (std::size_t i = 0; i < s_values.size(); ++i) {
            CHECK(a[i].rate_bits == b[i].rate_bits);  // bitwise: same cold path per point
            CHECK(a[i].iterations == b[i].iterations);
        }
    }
}

TEST_CASE("solve_for_target") {
    SUBCASE("binary symmetric distortion target recovers s = ln(1/9)") {
        const auto r = solve_for_target(
            coin(), [](double s) { return build_rd_kernel(binary_symmetric(), s); }, 0.1, -8.0,
            -1e-6);
        CHECK(std::abs(r.constraint - 0.1) <= 1e-6);
        CHECK(r.s == doctest::Approx(std::log(1.0 / 9.0)).epsilon(1e-4));
    }
    SUBCASE("target at the s=0 endpoint returns the zero-rate solution") {
        const auto r = solve_for_target(
            coin(), [](double s) { return build_rd_kernel(binary_symmetric(), s); }, 0.5, -3.0,
            0.0);
        CHECK(r.rate_bits == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("rg self-consistency: hitting a known G recovers s near 1") {
        std::mt19937 rng(59);
        const auto sc = random_semchan(rng, 6, 3);
        const Distribution prior(index_grid(6), ProbVector::normalized(dirichlet(rng, 6)));
        const auto factory = [&](double s) { return build_rg_kernel(sc, prior, s); };
        const double g_at_1 = mmi_iterate(prior, factory(1.0), {}).constraint;
        const auto r = solve_for_target(prior, factory, g_at_1, 0.1, 3.0);
        CHECK(std::abs(r.constraint - g_at_1) <= 1e-6 * std::max(1.0, std::abs(g_at_1)));
        CHECK(r.s == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("unreachable target") {
        CHECK_THROWS_AS(solve_for_target(
                            coin(), [](double s) { return build_rd_kernel(binary_symmetric(), s); },
                            0.7, -3.0, -0.1),
                        TargetOutOfRange);
    }
}

TEST_CASE("support containment for rtheta at s=1") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int inst = 0; inst < 10; ++inst) {
        const std::size_t m = 4 + rng() % 6, n = 2 + rng() % 4;
        Matrix t(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) t(i, j) = u(rng) < 0.3 ? 0.0 : u(rng);
        for (std::size_t i = 0; i < m; ++i) {
            bool any = false;
            for (std::size_t j = 0; j < n; ++j) any = any || t(i, j) > 0.0;
            if (!any) t(i, 0) = 0.5;  // keep every row representable
        }
        for (std::size_t j = 0; j < n; ++j) {
            bool any = false;
            for (std::size_t i = 0; i < m; ++i) any = any || t(i, j) > 0.0;
            if (!any) t(0, j) = 0.5;
        }
        const SemanticChannel sc(index_grid(m), LabelSet::numbered(n), t);
        const Distribution prior(index_grid(m), ProbVector::normalized(dirichlet(rng, m)));
        const auto r = mmi_iterate(prior, build_rtheta_kernel(sc, 1.0), {});
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r.channel(i, j) > 0.0) CHECK(sc(i, j) > 0.0);
    }
}
