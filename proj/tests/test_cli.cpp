#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "monopath/coloring.hpp"
#include "monopath/extract.hpp"
#include "monopath/graphmodel.hpp"

using namespace monopath;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(MONOPATH_BIN) + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("construct is deterministic and byte-stable") {
    REQUIRE(run("construct silver 200 cli_a.clr") == 0);
    REQUIRE(run("construct silver 200 cli_b.clr") == 0);
    CHECK(slurp("cli_a.clr") == slurp("cli_b.clr"));
    auto g = read_coloring_file("cli_a.clr");
    auto c = blocks_from_total_coloring(g);
    i64 sizes[] = {1, 2, 5, 14, 33, 82, 197};
    REQUIRE(c.block_count() == 7);
    for (i64 i = 0; i < 7; ++i) CHECK(c.block_size(i) == sizes[i]);
    std::remove("cli_b.clr");
}

TEST_CASE("construct rejects bad growth rates with exit code 2") {
    CHECK(run("construct 1 10 cli_bad.clr") == 2);
    CHECK(run("construct gold 10 cli_bad.clr") == 2);
}

TEST_CASE("profile accepts a spec or a coloring file and writes parseable CSV") {
    REQUIRE(run("profile 2 cli_profile.csv --n-min 500") == 0);
    auto rows = read_profile_csv("cli_profile.csv");
    CHECK(!rows.empty());
    REQUIRE(run("construct 2 100 cli_c.clr") == 0);
    REQUIRE(run("profile cli_c.clr cli_profile2.csv") == 0);
    auto rows2 = read_profile_csv("cli_profile2.csv");
    CHECK(!rows2.empty());
    std::remove("cli_profile.csv");
    std::remove("cli_profile2.csv");
    std::remove("cli_c.clr");
}

TEST_CASE("extract writes a certificate that verifies, and verification catches lies") {
    REQUIRE(run("construct 2 512 cli_g.clr") == 0);  // n = 1023
    REQUIRE(run("extract --input cli_g.clr --gamma 0.2 --k 93 --out cli_cert.txt") == 0);
    CHECK(run("extract --input cli_g.clr --verify cli_cert.txt") == 0);

    // corrupt the recorded density upward: re-validation must fail with code 3
    auto cert = read_forest_certificate("cli_cert.txt");
    cert.density = Rational(1);
    write_forest_certificate("cli_cert_bad.txt", cert);
    CHECK(run("extract --input cli_g.clr --verify cli_cert_bad.txt") == 3);

    std::remove("cli_cert.txt");
    std::remove("cli_cert_bad.txt");
    std::remove("cli_g.clr");
}

TEST_CASE("sequence subcommand reports thresholds") {
    {
        std::ofstream out("cli_seq.txt");
        out << "# staircase\n";
        for (int i = 0; i < 50; ++i) out << 40 << " ";
        for (int i = 0; i < 100; ++i) out << 40 + i / 2 << " ";
        out << "\n";
    }
    CHECK(run("sequence --input cli_seq.txt --t 4 --partition") == 0);
    auto text = slurp("cli_stdout.txt");
    CHECK(text.find("oscillation=") != std::string::npos);
    CHECK(text.find("first_rise=") != std::string::npos);
    CHECK(run("sequence --input cli_seq.txt --t 4000") == 2);  // beyond the oscillation
    std::remove("cli_seq.txt");
}

TEST_CASE("oracle subcommand emits JSON lines and meaningful exit codes") {
    CHECK(run("oracle gg --n 5 --mode exhaustive") == 0);
    auto text = slurp("cli_stdout.txt");
    CHECK(text.find("\"check\":\"gg\"") != std::string::npos);
    CHECK(text.find("\"pass\":true") != std::string::npos);
    CHECK(run("oracle gg --n 5 --mode sampled --samples 100") == 2);  // seed required
    CHECK(run("oracle gg --n 5 --mode sampled --samples 100 --seed 9") == 0);
    CHECK(run("oracle faithfulness --q 2 --n-min 15 --cap 18") == 0);
    REQUIRE(run("construct 2 8 cli_d.clr") == 0);  // n = 15
    CHECK(run("oracle path --input cli_d.clr --color R") == 0);
    CHECK(run("oracle forest --input cli_d.clr --color B") == 0);
    std::remove("cli_d.clr");
}

TEST_CASE("bound subcommand prints the closed form and the minimizer") {
    CHECK(run("bound --q silver") == 0);
    auto text = slurp("cli_stdout.txt");
    CHECK(text.find("0.87226") != std::string::npos);
    CHECK(run("bound --minimize") == 0);
    text = slurp("cli_stdout.txt");
    CHECK(text.find("2.41421356") != std::string::npos);
}

TEST_CASE("sweep writes a CSV that re-parses") {
    CHECK(run("sweep --q-list 2,silver --n-min 300 --out cli_sweep.csv") == 0);
    auto rows = read_sweep_csv("cli_sweep.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].q_label == "2");
    CHECK(rows[1].q_label == "silver");
    std::remove("cli_sweep.csv");
    std::remove("cli_a.clr");
    std::remove("cli_stdout.txt");
    std::remove("cli_stderr.txt");
}
