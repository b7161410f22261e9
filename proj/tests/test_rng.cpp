#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nipso/rng.hpp"

using nipso::Rng;

TEST_CASE("same seed reproduces the sequence") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different seeds diverge") {
    Rng a(1);
    Rng b(2);
    int equal = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next() == b.next()) ++equal;
    CHECK(equal < 5);
}

TEST_CASE("derived streams are independent of each other") {
    Rng a = Rng::stream(7, 0);
    Rng b = Rng::stream(7, 1);
    Rng c = Rng::stream(7, 0, 1);
    int ab = 0, ac = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto xa = a.next();
        if (xa == b.next()) ++ab;
        if (xa == c.next()) ++ac;
    }
    CHECK(ab < 5);
    CHECK(ac < 5);
    Rng a2 = Rng::stream(7, 0);
    Rng a3 = Rng::stream(7, 0);
    CHECK(a2.next() == a3.next());
}

TEST_CASE("uniform01 stays in [0,1) and has the right moments") {
    Rng rng(123);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("uniform(lo,hi) spans the interval") {
    Rng rng(5);
    double lo_seen = 1e300, hi_seen = -1e300;
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.uniform(-2.0, 3.0);
        REQUIRE(x >= -2.0);
        REQUIRE(x < 3.0);
        lo_seen = std::min(lo_seen, x);
        hi_seen = std::max(hi_seen, x);
    }
    CHECK(lo_seen < -1.9);
    CHECK(hi_seen > 2.9);
    CHECK(rng.uniform(4.0, 4.0) == 4.0);
}

TEST_CASE("gaussian moments and finiteness") {
    Rng rng(99);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        REQUIRE(std::isfinite(g));
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
    const double shifted = Rng(1).gaussian(10.0, 0.0);
    CHECK(shifted == 10.0);
}

TEST_CASE("usable as a standard bit generator") {
    Rng rng(17);
    std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
    std::shuffle(v.begin(), v.end(), rng);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
}
