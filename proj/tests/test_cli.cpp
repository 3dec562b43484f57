/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "gyro/table_io.hpp"

namespace fs = std::filesystem;
using gyro::cli::run_command;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("gyro-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(p);
        std::ofstream(p / "z4.tbl") << "gyrotable v1 n=4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";
        std::ofstream(p / "swapped.tbl") << "gyrotable v1 n=4\n0 1 2 3\n1 3 2 0\n2 3 0 1\n3 0 1 2\n";
        std::ofstream(p / "broken.tbl") << "gyrotable v1 n=2\n0 1\n1 7\n";
        return p;
    }();
    return dir;
}

Run run(std::vector<std::string> args) {
    args.push_back("--out");
    args.push_back(scratch().string());
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string table(const char* name) { return (scratch() / name).string(); }

nlohmann::json report(const std::string& cmd) {
    std::ifstream f(scratch() / (cmd + ".report.json"));
    return nlohmann::json::parse(f);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("verify") {
    auto r = run({"verify", "--mobius", "--samples", "10000", "--seed", "7", "--tol", "1e-9"});
    CHECK(r.code == 0);
    const auto j = report("verify");
    CHECK(j["status"] == "pass");
    CHECK(j["seed"] == 7);
    CHECK(j["command"][0] == "verify");
    CHECK_FALSE(j.contains("timing"));
    bool saw_g4 = false;
    for (const auto& p : j["properties"]) saw_g4 = saw_g4 || p["name"] == "G4_left_loop";
    CHECK(saw_g4);

    CHECK(run({"verify", "--table", table("z4.tbl")}).code == 0);
    r = run({"verify", "--table", table("swapped.tbl")});
    CHECK(r.code == 1);
    CHECK(report("verify")["status"] == "fail");
    CHECK_FALSE(report("verify")["properties"][0]["name"].get<std::string>().empty());
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "--mobius", "--cyclic", "3"}).code == 2);
    CHECK(run({"verify", "--table", table("missing.tbl")}).code == 2);
    auto r = run({"verify", "--table", table("broken.tbl")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(run({"verify", "--mobius", "--samples", "many"}).code == 2);
    CHECK(run({"cosets", "--mobius", "--sub", "0"}).code == 2);
    CHECK(run({"cosets", "--cyclic", "4", "--sub", "0,9"}).code == 2);
    CHECK(run({"chain", "--mobius", "--radii", "spiral"}).code == 2);
    CHECK(run({"probe", "--mobius", "--x", "0"}).code == 2);
    CHECK(run({"probe", "--mobius", "--x", "1.5"}).code == 2);
    CHECK(run({"search"}).code == 2);
    CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("gyr-table") {
    CHECK(run({"gyr-table", "--cyclic", "4"}).code == 0);
    CHECK(fs::exists(scratch() / "gyr-table.json"));
    CHECK(run({"gyr-table", "--mobius", "--a", "0.5i", "--b", "0.5", "--z", "0.3"}).code == 0);
    const auto j = report("gyr-table");
    CHECK(j["results"]["gyr"][0].get<double>() == doctest::Approx(0.3 * 15 / 17));
    CHECK(j["results"]["gyr"][1].get<double>() == doctest::Approx(0.3 * 8 / 17));
    CHECK(run({"gyr-table", "--mobius"}).code == 2);
}

TEST_CASE("subgyro") {
    CHECK(run({"subgyro", "--cyclic", "4", "--sub", "0,2"}).code == 0);
    auto r = run({"subgyro", "--cyclic", "4", "--sub", "0,1"});
    CHECK(r.code == 1);
    CHECK(report("subgyro")["properties"][0]["counterexample"]["tuple"] == nlohmann::json::array({1, 1}));
    CHECK(run({"subgyro", "--cyclic", "4", "--generate", "2"}).code == 0);
    CHECK(report("subgyro")["results"]["members"] == nlohmann::json::array({0, 2}));
    CHECK(run({"subgyro", "--mobius", "--generate", "0.1", "--cap", "4"}).code == 0);
    CHECK(run({"subgyro", "--mobius", "--generate", "0.1", "--cap", "4", "--strict"}).code == 1);
}

TEST_CASE("cosets and quotient") {
    CHECK(run({"cosets", "--table", table("z4.tbl"), "--sub", "0,2"}).code == 0);
    CHECK(report("cosets")["results"]["cosets"]["blocks"] == nlohmann::json::parse("[[0,2],[1,3]]"));
    CHECK(run({"cosets", "--cyclic", "4", "--sub", "0,1"}).code == 1);

    CHECK(run({"quotient", "--table", table("z4.tbl"), "--sub", "0,2"}).code == 0);
    const auto q = gyro::load_table((scratch() / "quotient.tbl").string());
    CHECK(q.table == gyro::CayleyTable::cyclic(2));
    CHECK(run({"quotient", "--cyclic", "4", "--sub", "0,2", "--format", "json"}).code == 0);
    CHECK(gyro::load_table((scratch() / "quotient.json").string()).table == gyro::CayleyTable::cyclic(2));
}

TEST_CASE("setcheck") {
    CHECK(run({"setcheck", "--cyclic", "4"}).code == 0);
    CHECK(report("setcheck")["properties"][0]["checks"] == 4096);
    CHECK(run({"setcheck", "--cyclic", "4", "--A", "1", "--B", "1", "--C", "3"}).code == 0);
    CHECK(run({"setcheck", "--carrier", "cyclic:2*klein4", "--samples", "500"}).code == 0);
}

TEST_CASE("chain") {
    auto r = run({"chain", "--mobius", "--radii", "harmonic", "--check", "prenorm"});
    CHECK(r.code == 1);
    CHECK(r.out.find("witness: prenorm_condition n=2: |u (+) v| = 0.6 > 0.5") != std::string::npos);
    const auto j = report("chain");
    bool flagged = false;
    for (const auto& p : j["properties"])
        if (p["name"] == "prenorm_condition") {
            flagged = p["status"] == "fail";
            CHECK(p["counterexample"]["detail"].get<std::string>().rfind("n=2:", 0) == 0);
        }
    CHECK(flagged);
    CHECK(run({"chain", "--mobius"}).code == 0);
    CHECK(run({"chain", "--cyclic", "4", "--sets", "G;0,2;0"}).code == 0);
    CHECK(run({"chain", "--cyclic", "4", "--sets", "G;0,1"}).code == 1);
}

TEST_CASE("prenorm and metric") {
    CHECK(run({"prenorm", "--cyclic", "4", "--sets", "G;0,2;0", "--depth", "4"}).code == 0);
    CHECK(slurp(scratch() / "prenorm.csv") == "element,f,N\n0,0,0\n1,1,1\n2,0.5,0.5\n3,1,1\n");

    CHECK(run({"prenorm", "--mobius", "--depth", "5", "--grid", "20", "--sup-samples", "100", "--samples", "500"})
              .code == 0);
    const std::string csv = slurp(scratch() / "prenorm.csv");
    std::size_t rows = 0;
    for (char ch : csv) rows += ch == '\n';
    CHECK(rows - 1 == report("prenorm")["results"]["grid_points"].get<std::size_t>());
    CHECK(csv.rfind("x,y,N\n", 0) == 0);

    CHECK(run({"prenorm", "--mobius", "--radii", "harmonic", "--depth", "4", "--grid", "10"}).code == 1);
    CHECK(run({"metric", "--cyclic", "4", "--sets", "G;0,2", "--depth", "3"}).code == 0);
    CHECK(run({"metric", "--mobius", "--depth", "5", "--grid", "20", "--sup-samples", "100", "--samples", "300"})
              .code == 0);
}

TEST_CASE("probe") {
    CHECK(run({"probe", "--mobius", "--x", "0.1", "--radius", "0.5"}).code == 0);
    const auto j = report("probe");
    CHECK(j["results"]["outcome"] == "escaped");
    CHECK(j["results"]["step"] == 3);
    CHECK(run({"probe", "--cyclic", "4", "--x", "2", "--U", "0,2"}).code == 0);
    CHECK(report("probe")["results"]["outcome"] == "contained");
}

TEST_CASE("search") {
    CHECK(run({"search", "--order", "3"}).code == 0);
    const auto t = gyro::load_table((scratch() / "search_n3_0.tbl").string());
    CHECK(t.table == gyro::CayleyTable::cyclic(3));
    CHECK(run({"search", "--order", "8", "--budget", "50"}).code == 0);
    CHECK(report("search")["budget_exhausted"] == true);
    CHECK(run({"search", "--order", "8", "--budget", "50", "--strict"}).code == 1);
    CHECK(run({"search", "--order", "40"}).code == 2);
}

TEST_CASE("reports are byte-identical for the same seed") {
    const std::vector<std::vector<std::string>> commands = {
        {"verify", "--mobius", "--samples", "2000", "--seed", "3"},
        {"subgyro", "--mobius", "--sub", "0", "--seed", "3"},
        {"setcheck", "--carrier", "cyclic:2*klein4", "--samples", "300", "--seed", "3"},
        {"metric", "--mobius", "--depth", "4", "--grid", "16", "--sup-samples", "50", "--samples", "200"},
    };
    for (const auto& c : commands) {
        CHECK(run(c).code == 0);
        const std::string first = slurp(scratch() / (c[0] + ".report.json"));
        CHECK(run(c).code == 0);
        CHECK(slurp(scratch() / (c[0] + ".report.json")) == first);
    }
}
