#include <doctest.h>

#include <cmath>
#include <random>

#include "semrate/bayes.hpp"
#include "semrate/channel.hpp"
#include "semrate/distribution.hpp"

using namespace semrate;

namespace {

Distribution two_point_prior(double p0, double p1) {
    return Distribution(Grid({0.0, 1.0}), ProbVector({p0, p1}));
}

std::vector<double> dirichlet(std::mt19937& rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(n);
    for (auto& v : w) v = e(rng) + 1e-6;
    return w;
}

}  // namespace

TEST_CASE("normalize divides by the weight sum") {
    CHECK(normalize(std::vector<double>{1, 1, 1, 1}).vec() ==
          std::vector<double>{0.25, 0.25, 0.25, 0.25});
    CHECK(normalize(std::vector<double>{2, 0}).vec() == std::vector<double>{1.0, 0.0});
    CHECK(normalize(std::vector<double>{3, 1}).vec() == std::vector<double>{0.75, 0.25});
    CHECK_THROWS_AS(normalize(std::vector<double>{0, 0}), AllZeroWeights);
    CHECK_THROWS_AS(ProbVector({0.5, 0.6}), InvalidDistribution);
    CHECK_THROWS_AS(ProbVector({-0.1, 1.1}), InvalidDistribution);
}

TEST_CASE("grid and label invariants") {
    CHECK_THROWS_AS(Grid({1.0, 1.0}), BadParams);
    CHECK_THROWS_AS(Grid({2.0, 1.0}), BadParams);
    CHECK(Grid::regular(0, 100, 1).size() == 101);
    CHECK(Grid::regular(0, 255, 1)[255] == 255.0);
    CHECK_THROWS_AS(LabelSet({"a", "a"}), BadParams);
}

TEST_CASE("bayes_update marginal and posteriors") {
    const auto prior = two_point_prior(0.5, 0.5);

    SUBCASE("identity channel gives point-mass posteriors") {
        const auto r = bayes_update(prior, Channel::identity(2));
        CHECK(r.marginal.vec() == std::vector<double>{0.5, 0.5});
        REQUIRE(r.posteriors[0].has_value());
        CHECK((*r.posteriors[0]).vec() == std::vector<double>{1.0, 0.0});
    }
    SUBCASE("constant rows mean independence") {
        const auto r = bayes_update(prior, Channel::constant_rows(2, std::vector<double>{0.7, 0.3}));
        CHECK(r.marginal[0] == doctest::Approx(0.7).epsilon(1e-14));
        CHECK((*r.posteriors[0]).vec() == std::vector<double>{0.5, 0.5});
    }
    SUBCASE("hand evaluation of the 0.9/0.1 flip channel") {
        const auto r = bayes_update(prior, Channel(Matrix::from_rows({{0.9, 0.1}, {0.1, 0.9}})));
        CHECK(r.marginal[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK((*r.posteriors[0])[0] == doctest::Approx(0.9).epsilon(1e-14));
    }
    SUBCASE("zero-probability label has an undefined posterior") {
        const auto r = bayes_update(prior, Channel(Matrix::from_rows({{1.0, 0.0}, {1.0, 0.0}})));
        CHECK(r.marginal.vec() == std::vector<double>{1.0, 0.0});
        CHECK_FALSE(r.posteriors[1].has_value());
    }
    SUBCASE("grid size mismatch is rejected") {
        CHECK_THROWS_AS(bayes_update(prior, Channel::identity(3)), DimensionMismatch);
    }
}

TEST_CASE("bayes_update marginal is a distribution for random inputs") {
    std::mt19937 rng(11);
    for (int k = 0; k < 50; ++k) {
        const std::size_t m = 2 + rng() % 6, n = 2 + rng() % 5;
        std::vector<double> pts(m);
        for (std::size_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i);
        const Distribution prior(Grid(pts), ProbVector::normalized(dirichlet(rng, m)));
        Matrix rows(m, n);
        for (std::size_t i = 0; i < m; ++i) {
            const auto w = ProbVector::normalized(dirichlet(rng, n));
            for (std::size_t j = 0; j < n; ++j) rows(i, j) = w[j];
        }
        const auto r = bayes_update(prior, Channel(std::move(rows)));
        double sum = 0.0;
        for (double v : r.marginal.vec()) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("semantic_bayes") {
    const auto prior = two_point_prior(0.5, 0.5);
    SUBCASE("tautology leaves the prior unchanged") {
        const auto r = semantic_bayes(prior, std::vector<double>{1.0, 1.0});
        CHECK(r.logical_prob == 1.0);
        CHECK(r.posterior.vec() == std::vector<double>{0.5, 0.5});
    }
    SUBCASE("hand evaluation") {
        const auto r = semantic_bayes(prior, std::vector<double>{1.0, 0.5});
        CHECK(r.logical_prob == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(r.posterior[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(r.posterior[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("crisp set") {
        const auto r = semantic_bayes(prior, std::vector<double>{1.0, 0.0});
        CHECK(r.logical_prob == 0.5);
        CHECK(r.posterior.vec() == std::vector<double>{1.0, 0.0});
    }
    SUBCASE("zero logical probability") {
        const auto prior2 = two_point_prior(1.0, 0.0);
        CHECK_THROWS_AS(semantic_bayes(prior2, std::vector<double>{0.0, 1.0}),
                        ZeroLogicalProbability);
    }
}

TEST_CASE("truth_from_likelihood inverts semantic_bayes") {
    const auto prior = two_point_prior(0.5, 0.5);
    SUBCASE("no information") {
        const auto r = truth_from_likelihood(prior, ProbVector({0.5, 0.5}), 1.0);
        CHECK(r.truth == std::vector<double>{1.0, 1.0});
        CHECK(r.logical_prob == 1.0);
    }
    SUBCASE("hand inversion of the (1, 0.5) example") {
        const auto r = truth_from_likelihood(prior, ProbVector({2.0 / 3.0, 1.0 / 3.0}), 4.0 / 3.0);
        CHECK(r.logical_prob == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(r.truth[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.truth[1] == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("crisp inverse") {
        const auto r = truth_from_likelihood(prior, ProbVector({1.0, 0.0}), 2.0);
        CHECK(r.truth == std::vector<double>{1.0, 0.0});
        CHECK(r.logical_prob == 0.5);
    }
    SUBCASE("zero prior under likelihood mass") {
        const auto prior2 = two_point_prior(1.0, 0.0);
        CHECK_THROWS_AS(truth_from_likelihood(prior2, ProbVector({0.5, 0.5}), 2.0), ZeroPrior);
    }
}

TEST_CASE("roundtrip: semantic_bayes after truth_from_likelihood recovers the likelihood") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const std::size_t m = 2 + rng() % 8;
        std::vector<double> pts(m);
        for (std::size_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i);
        const Distribution prior(Grid(pts), ProbVector::normalized(dirichlet(rng, m)));
        std::vector<double> truth(m);
        bool any = false;
        for (auto& t : truth) {
            t = u(rng);
            any = any || t > 0.0;
        }
        if (!any) truth[0] = 1.0;

        const auto fwd = semantic_bayes(prior, truth);
        double ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) ratio = std::max(ratio, fwd.posterior[i] / prior[i]);
        const auto rec = truth_from_likelihood(prior, fwd.posterior, ratio);
        const auto back = semantic_bayes(prior, rec.truth);
        for (std::size_t i = 0; i < m; ++i)
            CHECK(back.posterior[i] == doctest::Approx(fwd.posterior[i]).epsilon(1e-12));
    }
}

TEST_CASE("scaling the truth function leaves the semantic posterior unchanged") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int k = 0; k < 30; ++k) {
        const std::size_t m = 3 + rng() % 5;
        std::vector<double> pts(m);
        for (std::size_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i);
        const Distribution prior(Grid(pts), ProbVector::normalized(dirichlet(rng, m)));
        std::vector<double> truth(m);
        for (auto& t : truth) t = u(rng);
        const double c = 0.05 + 0.9 * u(rng);
        std::vector<double> scaled(m);
        for (std::size_t i = 0; i < m; ++i) scaled[i] = c * truth[i];

        const auto a = semantic_bayes(prior, truth);
        const auto b = semantic_bayes(prior, scaled);
        for (std::size_t i = 0; i < m; ++i)
            CHECK(a.posterior[i] == doctest::Approx(b.posterior[i]).epsilon(1e-12));
        CHECK(b.logical_prob == doctest::Approx(c * a.logical_prob).epsilon(1e-12));
    }
}
