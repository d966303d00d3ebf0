#include <doctest.h>

#include <cmath>
#include <random>

#include "quermass/verify.hpp"

using namespace quermass;

TEST_CASE("Bellman's inequality on random inputs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::uniform_real_distribution<double> pd(1.0001, 4.0);
    std::uniform_int_distribution<int> len(2, 5);
    for (int t = 0; t < 2000; ++t) {
        const int m = len(rng);
        const double p = pd(rng);
        std::vector<double> a(m), b(m);
        // a1 large enough that a1^p exceeds the tail sum.
        double sa = 0.0, sb = 0.0;
        for (int k = 1; k < m; ++k) {
            a[k] = u(rng);
            b[k] = u(rng);
            sa += std::pow(a[k], p);
            sb += std::pow(b[k], p);
        }
        a[0] = std::pow(sa, 1.0 / p) * (1.0 + u(rng));
        b[0] = std::pow(sb, 1.0 / p) * (1.0 + u(rng));
        CHECK(bellman_check(a, b, p) >= -1e-12);
        std::vector<double> c(m);
        const double ups = 0.5 + u(rng);
        for (int k = 0; k < m; ++k) c[k] = ups * a[k];
        CHECK(std::abs(bellman_check(a, c, p)) <= 1e-10);
    }
}

TEST_CASE("Bellman's hypotheses") {
    const std::vector<double> a{1.0, 2.0}, b{2.0, 1.0}, c{1.0, 0.5, 0.5};
    CHECK_THROWS_AS(bellman_check(a, b, 2.0), GeometryError);
    CHECK_THROWS_AS(bellman_check(b, b, 1.0), GeometryError);
    CHECK_THROWS_AS(bellman_check(b, c, 2.0), GeometryError);
}

TEST_CASE("scalar lemma on random inputs") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int t = 0; t < 2000; ++t) {
        const double b = u(rng), d = u(rng);
        const double a = b + u(rng), c = d + u(rng);
        const double alpha = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
        CHECK(scalar_lemma4_check(a, b, c, d, alpha) >= -1e-12);
        const double s = 1.0 + u(rng);
        CHECK(std::abs(scalar_lemma4_check(s * b, b, s * d, d, alpha)) <= 1e-10);
    }
    CHECK_THROWS_AS(scalar_lemma4_check(1.0, 2.0, 3.0, 1.0, 0.5), GeometryError);
    CHECK_THROWS_AS(scalar_lemma4_check(2.0, 1.0, 3.0, 1.0, 1.0), GeometryError);
}

TEST_CASE("the scalar lemma's minimiser is x = bc/d") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int t = 0; t < 20; ++t) {
        const double b = u(rng), d = u(rng), c = d + u(rng);
        const double alpha = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
        const double beta = 1.0 - alpha;
        auto f = [&](double x) { return std::pow(x, alpha) * std::pow(c, beta) - std::pow(x - b, alpha) * std::pow(c - d, beta); };
        // Coarse grid, then golden-section refinement around the best cell.
        double lo = b * (1.0 + 1e-9), hi = 50.0 * b * c / d;
        const int cells = 2000;
        double best = lo;
        for (int k = 0; k <= cells; ++k) {
            const double x = lo + (hi - lo) * k / cells;
            if (f(x) < f(best)) best = x;
        }
        double l = std::max(lo, best - (hi - lo) / cells), r = std::min(hi, best + (hi - lo) / cells);
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        for (int it = 0; it < 200; ++it) {
            const double m1 = r - g * (r - l), m2 = l + g * (r - l);
            if (f(m1) < f(m2))
                r = m2;
            else
                l = m1;
        }
        const double xmin = 0.5 * (l + r);
        CHECK(f(xmin) == doctest::Approx(std::pow(b, alpha) * std::pow(d, beta)).epsilon(1e-8));
        CHECK(xmin == doctest::Approx(b * c / d).epsilon(1e-3));
    }
}
