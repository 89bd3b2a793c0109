#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "sfs/io.hpp"

using namespace sfs;
using test::Rng;

TEST_CASE("directed distance basics") {
    const auto b = PointSet::from_points(2, {{0, 0}});
    const auto c = PointSet::from_points(2, {{3, 4}});
    CHECK(directed_distance(b, c) == doctest::Approx(5.0).epsilon(1e-15));

    const auto x = PointSet::from_points(1, {{0}, {1}});
    const auto y = PointSet::from_points(1, {{0}});
    CHECK(directed_distance(x, y) == 1.0);
    CHECK(directed_distance(y, x) == 0.0);  // asymmetric

    CHECK_THROWS_AS(directed_distance(b, y), Error);
}

TEST_CASE("hausdorff basics") {
    const auto x = PointSet::from_points(1, {{0}, {1}});
    const auto y = PointSet::from_points(1, {{0}});
    CHECK(hausdorff(x, y) == 1.0);
    CHECK(hausdorff(x, x) == 0.0);

    // 2x2 distance table: d(B,C)=1 (point (1,0)), d(C,B)=1 (point (0,1))
    const auto b = PointSet::from_points(2, {{0, 0}, {1, 0}});
    const auto c = PointSet::from_points(2, {{0, 0}, {0, 1}});
    CHECK(hausdorff(b, c) == 1.0);
}

TEST_CASE("hausdorff metric axioms on random sets") {
    Rng rng(101);
    for (int it = 0; it < 300; ++it) {
        const int dim = rng.uniform_int(1, 3);
        const auto a = test::random_point_set(rng, dim, rng.uniform_int(1, 25));
        const auto b = test::random_point_set(rng, dim, rng.uniform_int(1, 25));
        const auto c = test::random_point_set(rng, dim, rng.uniform_int(1, 25));
        const double hab = hausdorff(a, b);
        CHECK(hab == hausdorff(b, a));
        CHECK(hausdorff(a, c) <= hab + hausdorff(b, c) + 1e-12);
        CHECK(hausdorff(a, a) == 0.0);
    }
}

TEST_CASE("directed distance zero iff subset") {
    Rng rng(102);
    for (int it = 0; it < 50; ++it) {
        const auto b = test::random_point_set(rng, 2, 10);
        PointSet a(2);
        for (int i = 0; i < 5; ++i) a.append(b.point(rng.uniform_int(0, b.size() - 1)));
        CHECK(directed_distance(a, b) == 0.0);
        // a point strictly outside forces a positive distance
        Vec far{9.0, 9.0};
        a.append({far.data(), far.size()});
        CHECK(directed_distance(a, b) > 0.0);
    }
}

TEST_CASE("grid-accelerated directed distance matches the double loop") {
    Rng rng(103);
    for (int dim : {1, 2, 3}) {
        // sizes chosen to cross the internal grid threshold
        const auto b = test::random_point_set(rng, dim, 700);
        const auto c = test::random_point_set(rng, dim, 2100);
        double brute = 0.0;
        for (int i = 0; i < b.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < c.size(); ++j)
                best = std::min(best, point_distance(b.point(i), c.point(j)));
            brute = std::max(brute, best);
        }
        CHECK(directed_distance(b, c) == brute);
    }

    // far-away queries fall outside the grid's cell range
    const auto near = test::random_point_set(rng, 2, 2100, 0.0, 1.0);
    PointSet far(2);
    const double q[2] = {1e6, -17.0};
    far.append({q, 2});
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < near.size(); ++j)
        best = std::min(best, point_distance(far.point(0), near.point(j)));
    PointSet mixed = far;
    for (int i = 0; i < near.size(); ++i) mixed.append(near.point(i));
    CHECK(directed_distance(mixed, near) == best);
}

TEST_CASE("decimate") {
    const auto s = PointSet::from_points(1, {{0.0}, {0.0004}, {1.0}});
    CHECK(decimate(s, 1e-3).size() == 2);

    const auto t = PointSet::from_points(1, {{0.0}, {1.0}});
    CHECK(decimate(t, 1e-6) == t);

    Rng rng(104);
    const auto big = test::random_point_set(rng, 2, 1000, 0.0, 1.0);
    const auto dec = decimate(big, 0.1);
    CHECK(hausdorff(big, dec) <= 0.1 * std::sqrt(2.0));
    CHECK(dec.size() <= big.size());

    CHECK_THROWS_AS(decimate(big, 0.0), Error);
}

TEST_CASE("decimate bound holds for random inputs") {
    Rng rng(105);
    for (int it = 0; it < 40; ++it) {
        const int dim = rng.uniform_int(1, 3);
        const double eps = rng.uniform(0.01, 0.5);
        const auto s = test::random_point_set(rng, dim, rng.uniform_int(5, 200));
        CHECK(hausdorff(s, decimate(s, eps)) <= eps * std::sqrt(double(dim)) + 1e-12);
    }
}

TEST_CASE("diameter") {
    CHECK(diameter(PointSet::from_points(1, {{0}})) == 0.0);
    CHECK(diameter(PointSet::from_points(2, {{0, 0}, {3, 4}})) == 5.0);
    const auto square = PointSet::from_points(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(diameter(square) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("validation") {
    PointSet empty(2);
    CHECK_THROWS_AS(empty.validate(), Error);
    PointSet bad(1);
    const double nan = std::nan("");
    bad.append({&nan, 1});
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(PointSet::from_points(2, {{1.0}}), Error);
}

TEST_CASE("csv round trip and rejection") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "sfs_csv_test";
    fs::create_directories(dir);

    Rng rng(106);
    const auto s = test::random_point_set(rng, 3, 64);
    atomic_write(dir / "pts.csv", csv_string(s));
    const auto back = read_csv_points(dir / "pts.csv");
    CHECK(back == s);  // %.17g is round-trip exact

    std::ofstream ragged(dir / "ragged.csv");
    ragged << "1,2\n3\n";
    ragged.close();
    CHECK_THROWS_AS(read_csv_points(dir / "ragged.csv"), Error);

    std::ofstream bad(dir / "bad.csv");
    bad << "1,x\n";
    bad.close();
    CHECK_THROWS_AS(read_csv_points(dir / "bad.csv"), Error);

    std::ofstream empty(dir / "empty.csv");
    empty.close();
    CHECK_THROWS_AS(read_csv_points(dir / "empty.csv"), Error);

    fs::remove_all(dir);
}
