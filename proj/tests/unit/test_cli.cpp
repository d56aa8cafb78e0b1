#include "doctest.h"

#include "cli.hpp"
#include "commands.hpp"
#include "params.hpp"

#include "confnet/geometry.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace cli = confnet::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::initializer_list<std::string> args) {
    std::vector<std::string> owned = {"confnet"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(CONFNET_TEST_TMPDIR) + "/cli_" + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("list and range parsing") {
    CHECK(cli::parse_int_list("2,3,4") == std::vector<int>{2, 3, 4});
    CHECK(cli::parse_int_list("1..4,8") == std::vector<int>{1, 2, 3, 4, 8});
    CHECK(cli::parse_int_list("1..64").size() == 64);
    CHECK(cli::parse_real_list("0.1:0.3:0.1") == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(cli::parse_real_list("0.1:1.2:0.02").size() == 56);
    CHECK(cli::parse_real_list("0.5") == std::vector<double>{0.5});
    CHECK(cli::parse_real_list("0.5, 2,1:2:0.5") == std::vector<double>{0.5, 2.0, 1.0, 1.5, 2.0});
    CHECK_THROWS_AS(cli::parse_int_list("4..1"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_int_list("a"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("1:0:0.1"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("0:1:0"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("0:1"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_list("nan"), cli::UsageError);
}

TEST_CASE("mass") {
    const auto mimo = run({"mass", "--model", "mimo", "--n", "2", "--d", "3", "--eta", "2", "--beta", "1"});
    CHECK(mimo.code == 0);
    CHECK(lines(mimo.out) == 2);
    CHECK(mimo.out.find("mimo,2,3,2,1,2.39123814351223") != std::string::npos);
    CHECK(mimo.err.find("\"command\": \"mass\"") != std::string::npos);

    const auto siso = run({"mass", "--model", "siso", "--d", "2", "--eta", "2", "--beta", "1"});
    CHECK(siso.code == 0);
    CHECK(siso.out.find("siso,1,2,2,1,0.5,") != std::string::npos);

    const auto sweep = run({"mass", "--model", "simo", "--m", "1..64", "--d", "3", "--eta", "2,3,4", "--beta", "1"});
    CHECK(sweep.code == 0);
    CHECK(lines(sweep.out) == 1 + 64 * 3);

    const auto json = run({"mass", "--model", "mimo", "--n", "2..3", "--format", "json"});
    CHECK(json.code == 0);
    const auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed.size() == 2);
    CHECK(parsed[0]["closed"].get<double>() == doctest::Approx(2.3912381435122417578).epsilon(1e-13));
}

TEST_CASE("exit codes") {
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"mass", "--bogus", "1"}).code == cli::kUsage);
    CHECK(run({"mass", "--model", "laser"}).code == cli::kUsage);
    CHECK(run({"mass", "--beta", "-1"}).code == cli::kUsage);
    CHECK(run({"mass", "--format", "xml"}).code == cli::kUsage);
    CHECK(run({"pfc", "--rho", "1:0:0.1"}).code == cli::kUsage);
    CHECK(run({"pfc", "--prism", "dome"}).code == cli::kUsage);
    CHECK(run({"simulate", "--trials", "0"}).code == cli::kUsage);
    CHECK(run({"validate", "--check", "nope"}).code == cli::kUsage);
    CHECK(run({"pfc", "--model", "siso"}).code == cli::kCapability);
    CHECK(run({"pfc", "--eta", "3"}).code == cli::kCapability);
    CHECK(run({"mass", "--model", "mimo", "--m", "3", "--n", "4"}).code == cli::kCapability);
}

TEST_CASE("pfc") {
    const auto one = run({"pfc", "--prism", "house", "--L", "7", "--beta", "1", "--rho", "0.8"});
    CHECK(one.code == 0);
    CHECK(lines(one.out) == 2);
    CHECK(one.out.rfind("rho,N,p_fc_bulk,p_fc_bulk_faces,p_fc_bulk_faces_edges,p_fc,p_out,C1,C2,E1,E2,F,U,out_of_regime\n", 0) == 0);

    const auto grid = run({"pfc", "--rho", "0.1:1.2:0.02"});
    CHECK(lines(grid.out) == 57);

    const auto zero = run({"pfc", "--rho", "0"});
    CHECK(zero.out.find("\n0,0,1,") != std::string::npos);
    CHECK(zero.out.substr(zero.out.size() - 3) == ",1\n");

    const auto table = run({"pfc", "--table"});
    CHECK(table.code == 0);
    CHECK(lines(table.out) == 7);
    CHECK(table.out.find("C1,corner,3,6,") != std::string::npos);

    const auto json = run({"pfc", "--rho", "0.7", "--format", "json"});
    const auto doc = nlohmann::json::parse(json.out);
    const confnet::RightPrism back = cli::prism_from_json(doc["prism"]);
    CHECK(back.volume() == doctest::Approx(428.75));
    CHECK(doc["ledger"].size() == 6);
    CHECK(doc["curve"].size() == 1);
}

TEST_CASE("prism file input") {
    const std::string path = tmp("prism.json");
    std::ofstream(path) << R"({"base": [[0, 0], [6, 0], [6, 6], [0, 6]], "height": 6})";
    const auto cube_file = run({"pfc", "--prism-file", path, "--rho", "0.9"});
    const auto cube_preset = run({"pfc", "--prism", "cube", "--L", "6", "--rho", "0.9"});
    CHECK(cube_file.code == 0);
    CHECK(cube_file.out == cube_preset.out);
    std::ofstream(tmp("bad.json")) << R"({"base": [[0, 0], [1, 0]], "height": 1})";
    CHECK(run({"pfc", "--prism-file", tmp("bad.json")}).code == cli::kUsage);
    CHECK(run({"pfc", "--prism-file", tmp("missing.json")}).code == cli::kUsage);
}

TEST_CASE("simulate determinism, manifest replay and degenerate trials") {
    const std::string a = tmp("sim_a.csv");
    const std::string b = tmp("sim_b.csv");
    const std::string c = tmp("sim_c.csv");
    CHECK(run({"simulate", "--rho", "0.5,0.7", "--trials", "60", "--seed", "42", "-o", a}).code == 0);
    CHECK(run({"simulate", "--rho", "0.5,0.7", "--trials", "60", "--seed", "42", "--threads", "3", "-o", b}).code == 0);
    CHECK(run({"simulate", "--config", a + ".manifest.json", "--threads", "2", "-o", c}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));
    CHECK(lines(slurp(a)) == 3);
    CHECK(slurp(a).rfind("rho,N,trials,p_fc_hat,ci_low,ci_high,mean_isolated", 0) == 0);

    const auto manifest = nlohmann::json::parse(slurp(a + ".manifest.json"));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["params"]["seed"] == "42");
    CHECK(manifest["output"]["bytes"] == slurp(a).size());

    const auto t1 = run({"simulate", "--rho", "0.6", "--trials", "1"});
    CHECK(t1.code == 0);

    const auto other = run({"simulate", "--rho", "0.5,0.7", "--trials", "60", "--seed", "43"});
    CHECK(other.out != slurp(a));
}

TEST_CASE("config files: flags win, unknown keys rejected") {
    const std::string cfg = tmp("cfg.json");
    std::ofstream(cfg) << R"({"rho": [0.5, 0.6], "L": 7, "beta": 1})";
    const auto from_cfg = run({"pfc", "--config", cfg});
    CHECK(from_cfg.code == 0);
    CHECK(lines(from_cfg.out) == 3);
    const auto flag_wins = run({"pfc", "--config", cfg, "--rho", "0.9"});
    CHECK(lines(flag_wins.out) == 2);
    CHECK(flag_wins.out.find("\n0.9,") != std::string::npos);

    std::ofstream(tmp("cfg_bad.json")) << R"({"rhoo": 1})";
    CHECK(run({"pfc", "--config", tmp("cfg_bad.json")}).code == cli::kUsage);
    std::ofstream(tmp("cfg_other.json")) << R"({"command": "mass", "params": {}})";
    CHECK(run({"pfc", "--config", tmp("cfg_other.json")}).code == cli::kUsage);
    std::ofstream(tmp("cfg_broken.json")) << "{";
    CHECK(run({"pfc", "--config", tmp("cfg_broken.json")}).code == cli::kUsage);
}

TEST_CASE("field") {
    const auto f = run({"field", "--square", "10", "--rho", "1.5", "--model", "siso", "--beta", "1", "--eta", "2",
                        "--grid", "20", "--seed", "5"});
    CHECK(f.code == 0);
    CHECK(lines(f.out) == 401);
    CHECK(f.out.rfind("x,y,value\n", 0) == 0);
    CHECK(f.out == run({"field", "--square", "10", "--rho", "1.5", "--grid", "20", "--seed", "5"}).out);

    const auto empty = run({"field", "--square", "10", "--rho", "0.001", "--grid", "4"});
    CHECK(empty.code == 0);
    std::istringstream rows(empty.out);
    std::string row;
    std::getline(rows, row);
    while (std::getline(rows, row)) CHECK(row.substr(row.rfind(',') + 1) == "0");

    const auto solid = run({"field", "--rho", "0.05", "--grid", "6", "--model", "mimo"});
    CHECK(solid.code == 0);
    CHECK(solid.out.rfind("x,y,z,value\n", 0) == 0);

    const auto json = run({"field", "--square", "4", "--rho", "1", "--grid", "3", "--format", "json"});
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["nodes"].size() == 16);
    CHECK(doc["field"].size() == 9);
}

TEST_CASE("validate") {
    const auto ok = run({"validate", "--check", "exponent-rates,house-coefficients"});
    CHECK(ok.code == cli::kOk);
    CHECK(lines(ok.out) == 3);
    const auto bad = run({"validate", "--check", "exponent-rates", "--perturb"});
    CHECK(bad.code == cli::kValidationFailed);
    CHECK(bad.out.find("exponent-rates,0,") != std::string::npos);
    const auto all = run({"validate"});
    CHECK(all.code == cli::kOk);
    CHECK(lines(all.out) == 10);
}
