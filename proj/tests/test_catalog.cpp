#include <doctest.h>

#include "helpers.hpp"
#include "sfs/catalog.hpp"
#include "sfs/trajectory.hpp"

using namespace sfs;

TEST_CASE("cubic mask") {
    const Mask m = cubic_bspline_mask();
    double sum = 0.0;
    for (double c : m.coeffs()) sum += c;
    CHECK(sum == 2.0);  // a(1) = 2^4/8
    CHECK(check_constant_reproduction(m).ok);
}

TEST_CASE("koch system") {
    const auto koch = koch_ifs();
    CHECK(contraction_factor(koch) == doctest::Approx(1.0 / 3).epsilon(1e-10));

    const Vec origin{0.0, 0.0};
    const Vec end{1.0, 0.0};
    CHECK(koch.map(0).apply(origin) == Vec{0.0, 0.0});
    CHECK(koch.map(3).apply(end) == Vec{1.0, 0.0});
    // generator is a connected polyline: consecutive maps share endpoints
    CHECK(point_distance({koch.map(0).apply(end).data(), 2},
                         {koch.map(1).apply(origin).data(), 2}) < 1e-15);
    CHECK(point_distance({koch.map(1).apply(end).data(), 2},
                         {koch.map(2).apply(origin).data(), 2}) < 1e-15);
    CHECK(point_distance({koch.map(2).apply(end).data(), 2},
                         {koch.map(3).apply(origin).data(), 2}) < 1e-15);
}

TEST_CASE("koch attractor contraction bound between depths") {
    const auto b0 = PointSet::from_points(2, {{0, 0}, {1, 0}});
    const auto r8 = ifs_attractor(koch_ifs(), b0, 0.0, 8, 0.0);
    const auto r9 = ifs_attractor(koch_ifs(), b0, 0.0, 9, 0.0);
    CHECK(hausdorff(r8.set, r9.set) < 2.0 * std::pow(3.0, -8.0));
}

TEST_CASE("cubic spline system on R^n") {
    const auto fs = cubic_spline_fs(5);
    CHECK(fs.dim() == 5);
    CHECK(fs.count() == 2);
    // maps keep Q^{n-1}
    Vec x{0.3, -1.0, 2.0, 0.7, 1.0};
    for (int m = 0; m < 2; ++m)
        CHECK(fs.map(m).apply(x)[4] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cubic_spline_fs(4), Error);
}

TEST_CASE("plane pair is contractive and deterministic") {
    const auto a = cubic_plane_pair();
    const auto b = cubic_plane_pair();
    for (int m = 0; m < 2; ++m) {
        CHECK(lipschitz(a.map(m)) < 0.9);
        CHECK(a.map(m).a == b.map(m).a);
        CHECK(a.map(m).b == b.map(m).b);
    }
}

TEST_CASE("hidden fractal schedule blocks") {
    const auto sched = hidden_fractal_schedule(5);
    CHECK(sched.period() == 10);
    for (int k = 1; k <= 5; ++k) CHECK(sched.system(k).count() == 2);   // cubic block
    for (int k = 6; k <= 10; ++k) CHECK(sched.system(k).count() == 4);  // koch block
    CHECK(sched.system(11).count() == 2);

    std::vector<double> factors;
    for (int k = 1; k <= 40; ++k) factors.push_back(sched.factor(k));
    for (double f : factors) CHECK(f < 1.0);
    CHECK(product_diagnostic({factors.data(), factors.size()}).sum_converges());
}

TEST_CASE("alternating schedule") {
    const auto sched = alternating_halves_schedule(3.0);
    CHECK(sched.system(1).map(0).apply(Vec{1.0})[0] == 0.5);
    CHECK(sched.system(2).map(0).apply(Vec{0.0})[0] == 3.0);
    CHECK(sched.factor(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exponential schedule converges to the cubic schedule") {
    const auto exp_sched = exponential_spline_schedule(3.0, 5);
    const auto cubic_sched = cubic_spline_schedule(5);
    double dist = 0.0;
    const auto& late = exp_sched.system(20);
    const auto& limit = cubic_sched.system(1);
    for (int m = 0; m < 2; ++m) {
        for (size_t i = 0; i < late.map(m).a.data().size(); ++i)
            dist = std::max(dist, std::fabs(late.map(m).a.data()[i] - limit.map(m).a.data()[i]));
    }
    CHECK(dist < 1e-5);
}

TEST_CASE("catalog determinism") {
    const auto a = random_fourpoint_masks(0.4, 9);
    const auto b = random_fourpoint_masks(0.4, 9);
    for (int k = 1; k <= 30; ++k) CHECK(a.mask(k) == b.mask(k));

    const auto s1 = random_fourpoint_schedule(0.4, 9, 6);
    const auto s2 = random_fourpoint_schedule(0.4, 9, 6);
    for (int k = 1; k <= 10; ++k) {
        CHECK(s1.system(k).map(0).a == s2.system(k).map(0).a);
        CHECK(s1.factor(k) == s2.factor(k));
    }
}

TEST_CASE("catalog reference parsing and resolution") {
    const auto ref = parse_catalog_ref("random4pt:b=0.4,seed=7");
    CHECK(ref.name == "random4pt");
    CHECK(ref.get("b", 0.0) == 0.4);
    REQUIRE(ref.seed.has_value());
    CHECK(*ref.seed == 7);

    CHECK(parse_catalog_ref("koch").params.empty());
    CHECK_THROWS_AS(parse_catalog_ref("expspline:lambda"), Error);
    CHECK_THROWS_AS(parse_catalog_ref(":x=1"), Error);

    CHECK(catalog_mask(parse_catalog_ref("cubic")) == cubic_bspline_mask());
    CHECK(catalog_system(parse_catalog_ref("koch")).count() == 4);
    CHECK(catalog_schedule(parse_catalog_ref("expspline:lambda=3")).dim() == 5);
    CHECK(catalog_schedule(parse_catalog_ref("koch")).dim() == 2);  // constant schedule
    CHECK_THROWS_AS(catalog_mask(parse_catalog_ref("nope")), Error);
    CHECK_THROWS_AS(catalog_schedule(parse_catalog_ref("nope")), Error);

    CHECK_FALSE(catalog_entries().empty());
}
