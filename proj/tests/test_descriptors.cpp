#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "sfs/descriptors.hpp"

using namespace sfs;

TEST_CASE("function system json round trip") {
    const auto koch = koch_ifs();
    const auto back = system_from_json(system_to_json(koch));
    CHECK(back.dim() == 2);
    CHECK(back.count() == 4);
    for (int m = 0; m < 4; ++m) {
        CHECK(back.map(m).a == koch.map(m).a);
        CHECK(back.map(m).b == koch.map(m).b);
    }
    CHECK(back.label() == "koch");
}

TEST_CASE("function system json validation") {
    CHECK_THROWS_AS(system_from_json(json::parse(R"({"dim": 2})")), Error);
    CHECK_THROWS_AS(system_from_json(json::parse(
                        R"({"dim": 2, "maps": [{"A": [1, 0, 0], "b": [0, 0]}]})")),
                    Error);
    CHECK_THROWS_AS(system_from_json(json::parse(R"({"dim": 2, "maps": []})")), Error);
}

TEST_CASE("schedule descriptors") {
    json constant;
    constant["kind"] = "constant";
    constant["system"] = system_to_json(cantor_ifs());
    CHECK(schedule_from_json(constant).system(3).count() == 2);

    json periodic;
    periodic["kind"] = "periodic";
    periodic["systems"] = json::array({system_to_json(cantor_ifs()), system_to_json(interval_ifs())});
    periodic["block_lengths"] = json::array({2, 1});
    const auto sched = schedule_from_json(periodic);
    CHECK(sched.period() == 3);
    CHECK(sched.system(1).label() == "cantor");
    CHECK(sched.system(2).label() == "cantor");
    CHECK(sched.system(3).label() == "interval");
    CHECK(sched.system(4).label() == "cantor");

    json plain = periodic;
    plain.erase("block_lengths");  // defaults to one level per system
    const auto alt = schedule_from_json(plain);
    CHECK(alt.period() == 2);
    CHECK(alt.system(2).label() == "interval");

    json catalog;
    catalog["kind"] = "catalog";
    catalog["name"] = "random4pt";
    catalog["params"] = {{"b", 0.4}};
    catalog["seed"] = 7;
    CHECK(schedule_from_json(catalog).dim() == 6);

    CHECK_THROWS_AS(schedule_from_json(json::parse(R"({"kind": "wat"})")), Error);
}

TEST_CASE("mask files: json and laurent") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "sfs_mask_test";
    fs::create_directories(dir);

    {
        std::ofstream out(dir / "mask.json");
        out << mask_to_json(cubic_bspline_mask()).dump();
    }
    CHECK(load_mask_file(dir / "mask.json") == cubic_bspline_mask());

    {
        std::ofstream out(dir / "mask.txt");
        out << "a(z) = 1/8 + 1/2*z + 3/4*z^2 + 1/2*z^3 + 1/8*z^4\n";
    }
    CHECK(load_mask_file(dir / "mask.txt") == cubic_bspline_mask());

    CHECK_THROWS_AS(load_mask_file(dir / "missing.json"), Error);
    fs::remove_all(dir);
}

TEST_CASE("lift descriptors") {
    json h;
    h["n"] = 4;
    CHECK(lift_from_json(h).kind() == LiftMatrix::Kind::H);

    json p;
    p["n"] = 6;
    p["m"] = 2;
    p["p0"] = json::array();
    const auto poly = default_fourpoint_polygon();
    for (int i = 0; i < poly.size(); ++i) {
        auto pt = poly.point(i);
        p["p0"].push_back(json::array({pt[0], pt[1]}));
    }
    const auto lift_p = lift_from_json(p);
    CHECK(lift_p.kind() == LiftMatrix::Kind::P);
    CHECK(lift_p.n() == 6);

    json bad = p;
    bad["fill"] = "random";
    CHECK_THROWS_AS(lift_from_json(bad), Error);
}
