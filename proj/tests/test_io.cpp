#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "monopath/coloring.hpp"
#include "monopath/extract.hpp"
#include "monopath/sequences.hpp"

using namespace monopath;

TEST_CASE("sequence files accept comments and reject junk") {
    {
        std::ofstream out("io_seq.txt");
        out << "# header comment\n0 2 5 # trailing comment\n5 9\n";
    }
    auto s = read_sequence_file("io_seq.txt");
    CHECK(s.values == std::vector<i64>{0, 2, 5, 5, 9});
    {
        std::ofstream out("io_seq.txt");
        out << "1 2 x 4\n";
    }
    CHECK_THROWS_AS(read_sequence_file("io_seq.txt"), PreconditionError);
    {
        std::ofstream out("io_seq.txt");
        out << "3 1\n";  // decreasing
    }
    CHECK_THROWS_AS(read_sequence_file("io_seq.txt"), PreconditionError);
    std::remove("io_seq.txt");
}

TEST_CASE("sweep CSV round-trips") {
    std::vector<std::pair<std::string, QuadraticValue>> qs = {
        {"2", QuadraticValue(Rational(2))},
        {"silver", QuadraticValue::silver_ratio()},
    };
    auto rows = sweep_growth_rates(qs, 500);
    std::stringstream ss;
    write_sweep_csv(ss, rows);
    auto back = read_sweep_csv(ss);
    REQUIRE(back.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].q_label == rows[i].q_label);
        CHECK(back[i].empirical == rows[i].empirical);
        CHECK(back[i].bound == doctest::Approx(rows[i].bound.to_double()));
    }
}

TEST_CASE("profile CSV rejects a bad header") {
    std::stringstream ss("k,oops\n1,2,3\n");
    CHECK_THROWS_AS(read_profile_csv(ss), PreconditionError);
}

TEST_CASE("forest certificates reject malformed input") {
    std::stringstream no_color("edge 1 2\n");
    CHECK_THROWS_AS(read_forest_certificate(no_color), PreconditionError);
    std::stringstream no_horizon("color R\nedge 1 2\n");
    CHECK_THROWS_AS(read_forest_certificate(no_horizon), PreconditionError);
    std::stringstream bad_tag("color R\nvertex 3\nhorizon 4 density 1/2\n");
    CHECK_THROWS_AS(read_forest_certificate(bad_tag), PreconditionError);
}
