#include <gtest/gtest.h>

#include <random>
#include <set>

#include "jlab/errors.hpp"
#include "jlab/jouanolou.hpp"
#include "jlab/solver.hpp"

using namespace jlab;

namespace {

std::int64_t binom(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<Complex> random_alpha(int n, double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Complex> a;
    while (static_cast<int>(a.size()) < n) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) <= 1) a.push_back(radius * z);
    }
    return a;
}

}  // namespace

TEST(Counts, Examples) {
    const Counts c22 = counts(2, 2);
    EXPECT_EQ(c22.N, 7);
    EXPECT_EQ(c22.M, 14);
    EXPECT_EQ(c22.K, 0);
    const Counts c32 = counts(3, 2);
    EXPECT_EQ(c32.N, 15);
    EXPECT_EQ(c32.M, 35);
    EXPECT_EQ(c32.K, 5);
    EXPECT_EQ(counts(2, 1).N, 3);
    EXPECT_EQ(counts(2, 1).K, 0);
    EXPECT_EQ(counts(3, 3).K, 10);
    EXPECT_EQ(counts(5, 2).K, 21);
    EXPECT_EQ(counts(3, 1).K, 0);
}

TEST(Counts, MatchIndependentFormulas) {
    for (int n = 2; n <= 8; ++n) {
        for (int d = 1; d <= 6; ++d) {
            const Counts c = counts(n, d);
            std::int64_t N = 0, p = 1;
            for (int k = 0; k <= n; ++k, p *= d) N += p;
            EXPECT_EQ(c.N, N);
            EXPECT_EQ(c.M, n * binom(n + d, d) + binom(n + d - 1, d) - 1);
            // Odd n, d >= 2: the K aligned sets partition the N points.
            if (n % 2 == 1 && d >= 2) EXPECT_EQ((d + 1) * c.K, c.N);
            else EXPECT_EQ(c.K, 0);
        }
    }
}

TEST(Counts, RejectsOutOfRange) {
    EXPECT_THROW(counts(1, 2), InputError);
    EXPECT_THROW(counts(9, 2), InputError);
    EXPECT_THROW(counts(2, 0), InputError);
    EXPECT_THROW(counts(2, 7), InputError);
    EXPECT_THROW((FoliationParams{2, 2, {1.0}}.validate()), InputError);
}

TEST(Jouanolou, FieldCoefficients) {
    const auto f = jouanolou_field(2, 2);
    EXPECT_EQ(f.coeff(0, {0, 2}), Complex(1));
    EXPECT_EQ(f.coeff(0, {3, 0}), Complex(-1));
    EXPECT_EQ(f.coeff(1, {0, 0}), Complex(1));
    EXPECT_EQ(f.coeff(1, {2, 1}), Complex(-1));
    std::size_t terms = f.component(0).size() + f.component(1).size();
    EXPECT_EQ(terms, 4u);
    EXPECT_EQ(field_distance(family_field({2, 2, {}}), f), 0.0);
}

TEST(Jouanolou, ClosedFormZeros) {
    for (int n = 2; n <= 4; ++n) {
        for (int d = 1; d <= 3; ++d) {
            const auto f = jouanolou_field(n, d);
            const auto pts = closed_form_sing(n, d);
            ASSERT_EQ(static_cast<std::int64_t>(pts.size()), counts(n, d).N);
            for (std::size_t a = 0; a < pts.size(); ++a) {
                EXPECT_LT(inf_norm(eval_field(f, pts[a].coords)), 1e-12);
                for (std::size_t b = a + 1; b < pts.size(); ++b)
                    EXPECT_GT((pts[a].coords - pts[b].coords).norm(), 1e-3);
            }
            EXPECT_LT((pts.back().coords - Point::Ones(n)).norm(), 1e-15);
        }
    }
}

TEST(Jouanolou, ClosedFormTwoTwo) {
    for (int m = 1; m <= 7; ++m) {
        const Point p = closed_form_point(2, 2, m);
        EXPECT_LT(std::abs(p[0] - std::polar(1.0, 2 * M_PI * m / 7)), 1e-14);
        EXPECT_LT(std::abs(p[1] - std::polar(1.0, -4 * M_PI * m / 7)), 1e-14);
    }
}

TEST(Jouanolou, QPatternForThreeTwo) {
    const Complex rho = std::polar(1.0, 2 * M_PI / 3);
    std::set<int> found;
    for (int j = 0; j <= 2; ++j) {
        Point q(3);
        q << std::pow(rho, j), 1.0, std::pow(rho, j);
        found.insert(match_index(closed_form_sing(3, 2), q, 1e-12));
    }
    EXPECT_EQ(found, (std::set<int>{5, 10, 15}));
}

TEST(Group, GeneratorAndCycle) {
    const GroupElement g = group_generator(2, 2);
    EXPECT_EQ(g.order, 7);
    EXPECT_EQ(g.weights, (std::vector<std::int64_t>{1, 5}));
    const auto pts = closed_form_sing(2, 2);
    // Follow the orbit of p_1: it visits every point before returning.
    std::set<int> orbit;
    Point x = pts[0].coords;
    for (int k = 0; k < 7; ++k) {
        const int idx = match_index(pts, x, 1e-12);
        ASSERT_NE(idx, 0);
        orbit.insert(idx);
        x = g.apply(x);
    }
    EXPECT_EQ(orbit.size(), 7u);
    EXPECT_LT((x - pts[0].coords).norm(), 1e-12);
}

TEST(Group, ElementsFormCyclicGroup) {
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        const auto all = group_elements(n, d);
        ASSERT_EQ(static_cast<std::int64_t>(all.size()), counts(n, d).N);
        EXPECT_TRUE(all[0].is_identity());
        const GroupElement g = group_generator(n, d);
        for (std::size_t k = 0; k + 1 < all.size(); ++k)
            EXPECT_EQ(compose(g, all[k]).weights, all[k + 1].weights);
        EXPECT_TRUE(compose(g, all.back()).is_identity());
        // Every element preserves X_0 up to a constant factor.
        const auto f = jouanolou_field(n, d);
        for (const auto& h : all) {
            const auto pf = pushforward_factor(h, {n, d, {}});
            EXPECT_LT(pf.residual, 1e-12);
            EXPECT_NEAR(std::abs(pf.c), 1.0, 1e-14);
        }
    }
}

TEST(Pushforward, IdentityAndGenerator) {
    const FoliationParams p{2, 2, {Complex(0.01, 0.02), Complex(-0.03, 0.0)}};
    const auto id = pushforward_factor(group_power(2, 2, 0), p);
    EXPECT_LT(std::abs(id.c - 1.0), 1e-15);
    EXPECT_LT(std::abs(id.alpha_tilde[0] - p.alpha[0]), 1e-15);
    EXPECT_LT(std::abs(id.alpha_tilde[1] - p.alpha[1]), 1e-15);
    EXPECT_EQ(id.residual, 0.0);

    const GroupElement g = group_generator(2, 2);
    const auto zero = pushforward_factor(g, {2, 2, {}});
    EXPECT_LT(std::abs(zero.c - unit_root(5, 7)), 1e-15);
    EXPECT_LT(std::abs(zero.alpha_tilde[0]) + std::abs(zero.alpha_tilde[1]), 1e-15);

    // Hand factorization of phi_* X_alpha for phi = (xi x_1, xi^5 x_2).
    const auto f = pushforward_factor(g, p);
    EXPECT_LT(std::abs(f.c - unit_root(5, 7)), 1e-15);
    EXPECT_LT(std::abs(f.alpha_tilde[0] - unit_root(3, 7) * p.alpha[0]), 1e-15);
    EXPECT_LT(std::abs(f.alpha_tilde[1] - p.alpha[1]), 1e-15);
    EXPECT_LT(f.residual, 1e-15);
}

TEST(Pushforward, GroupActionOnTrackedZeros) {
    std::mt19937_64 rng(2024);
    RunConfig cfg;
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}}) {
        for (int t = 0; t < 3; ++t) {
            const FoliationParams p{n, d, random_alpha(n, 0.05, rng)};
            const auto pts = track_singularities(p, cfg);
            for (const auto& g : group_elements(n, d)) {
                const auto f = pushforward_factor(g, p);
                ASSERT_LT(f.residual, 1e-12);
                // g maps zeros of X_alpha onto zeros of X_{alpha_tilde}.
                const auto image = track_singularities({n, d, f.alpha_tilde}, cfg);
                std::set<int> hit;
                for (const auto& s : pts) hit.insert(match_index(image, g.apply(s.coords), 1e-8));
                EXPECT_EQ(hit.size(), pts.size());
                EXPECT_EQ(hit.count(0), 0u);
            }
        }
    }
}
