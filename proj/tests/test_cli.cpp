#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tempo/commands.hpp"
#include "tempo/config.hpp"

using namespace tempo;

namespace {

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tempo");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (std::string& a : args) argv.push_back(a.data());
    return run_command(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

template <typename Fn>
std::string error_text(const Fn& fn) {
    try {
        fn();
    } catch (const validation_error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config text parses sections, comments, and typed lookups") {
    const std::string text =
        "# leading comment\n"
        "[params]\n"
        "m0 = 1.5   # trailing comment\n"
        "tau0 = 0.25\n"
        "\n"
        "[grid]\n"
        "n = 16, 1, 32\n"
        "p_max = 2.0\n"
        "\n"
        "[packet]\n"
        "p_center = 0.1, 0.2, 0.3\n"
        "sigma = 0.05\n"
        "kind = rest\n"
        "m0 = 9.0\n";
    const ConfigFile cfg = parse_config_text(text, "demo.cfg");

    CHECK(cfg.get_double("params", "m0", 0.0) == doctest::Approx(1.5));
    CHECK(cfg.get_double("params", "tau0", 0.0) == doctest::Approx(0.25));
    CHECK(cfg.get_double("params", "absent", 7.5) == doctest::Approx(7.5));
    CHECK(cfg.get_string("packet", "kind", "projected") == "rest");
    CHECK_FALSE(cfg.has("params", "kind"));

    const auto n = cfg.get_int3("grid", "n", {8, 8, 8});
    CHECK(n[0] == 16);
    CHECK(n[1] == 1);
    CHECK(n[2] == 32);

    const Vec3 pc = cfg.get_vec3("packet", "p_center", {0.0, 0.0, 0.0});
    CHECK(pc[0] == doctest::Approx(0.1));
    CHECK(pc[2] == doctest::Approx(0.3));
    // Scalars broadcast across all three components.
    const Vec3 sig = cfg.get_vec3("packet", "sigma", {0.0, 0.0, 0.0});
    CHECK(sig[0] == doctest::Approx(0.05));
    CHECK(sig[1] == doctest::Approx(0.05));
    CHECK(sig[2] == doctest::Approx(0.05));
}

TEST_CASE("config errors carry the file name and line number") {
    const std::string no_section = "m0 = 1.0\n";
    std::string msg = error_text([&] { parse_config_text(no_section, "bad.cfg"); });
    CHECK(msg.find("bad.cfg:1:") != std::string::npos);

    const std::string junk = "[params]\nm0 = 1.0\nthis is not a key value pair\n";
    msg = error_text([&] { parse_config_text(junk, "bad.cfg"); });
    CHECK(msg.find("bad.cfg:3:") != std::string::npos);

    const std::string empty_key = "[params]\n= 3\n";
    msg = error_text([&] { parse_config_text(empty_key, "bad.cfg"); });
    CHECK(msg.find("bad.cfg:2:") != std::string::npos);

    const ConfigFile cfg = parse_config_text("[grid]\nn = lots\np = 1.5\n", "typed.cfg");
    msg = error_text([&] { cfg.get_int("grid", "n", 8); });
    CHECK(msg.find("typed.cfg:2:") != std::string::npos);
    msg = error_text([&] { cfg.get_int("grid", "p", 8); });
    CHECK(msg.find("typed.cfg:3:") != std::string::npos);
}

TEST_CASE("duplicate keys keep the last assignment") {
    const ConfigFile cfg = parse_config_text("[a]\nx = 1\nx = 2\n", "dup.cfg");
    CHECK(cfg.get_int("a", "x", 0) == 2);
}

TEST_CASE("command dispatch exit codes") {
    CHECK(run_cli({"help"}) == 0);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"no-such-command"}) == 2);
    CHECK(run_cli({"eigen", "--no-such-flag", "1"}) == 2);
    CHECK(run_cli({"eigen", "--r"}) == 2);
    CHECK(run_cli({"eigen", "--r", "not-a-number"}) == 2);
    CHECK(run_cli({"eigen", "stray-positional"}) == 2);
    CHECK(run_cli({"eigen", "--config", "/nonexistent/path.cfg"}) == 2);
    CHECK(run_cli({"check", "--seed", "-4"}) == 2);
    // Unwritable output path is an I/O failure, not a usage error.
    CHECK(run_cli({"eigen", "--out", "/nonexistent-dir/out.csv"}) == 1);
}

TEST_CASE("eigen command writes the worked example") {
    const auto out = temp_path("tempo_cli_eigen.csv");
    CHECK(run_cli({"eigen", "--r", "3", "--tau0", "4", "--out", out.string()}) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("state,eigenvalue") != std::string::npos);
    CHECK(csv.find("plus_up,5.00000000000000e+00") != std::string::npos);
    CHECK(csv.find("minus_up,-5.00000000000000e+00") != std::string::npos);
    // 9.4868...e-01 is the large component of the positive spinor.
    CHECK(csv.find("9.48683298050514e-01") != std::string::npos);
    std::filesystem::remove(out);
}

TEST_CASE("config file drives the eigen command") {
    const auto cfg_path = temp_path("tempo_cli_eigen.cfg");
    {
        std::ofstream out(cfg_path);
        out << "[params]\ntau0 = 4.0\n[eigen]\nr = 3.0\n";
    }
    const auto out = temp_path("tempo_cli_eigen_from_cfg.csv");
    CHECK(run_cli({"eigen", "--config", cfg_path.string(), "--out", out.string()}) == 0);
    CHECK(slurp(out).find("plus_up,5.00000000000000e+00") != std::string::npos);

    // Flags override the file.
    CHECK(run_cli({"eigen", "--config", cfg_path.string(), "--tau0", "0", "--out",
                   out.string()}) == 0);
    CHECK(slurp(out).find("plus_up,3.00000000000000e+00") != std::string::npos);
    std::filesystem::remove(cfg_path);
    std::filesystem::remove(out);
}

TEST_CASE("numbers are serialized with fifteen significant digits") {
    const auto out = temp_path("tempo_cli_fmt.csv");
    CHECK(run_cli({"eigen", "--r", "1.25", "--tau0", "0.5", "--out", out.string()}) == 0);
    const std::string csv = slurp(out);
    // Every numeric cell looks like -d.dddddddddddddde[+-]dd.
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int cells = 0;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string cell;
        std::getline(fields, cell, ',');  // label column
        while (std::getline(fields, cell, ',')) {
            ++cells;
            const std::size_t e = cell.find('e');
            REQUIRE(e != std::string::npos);
            const std::string mant = cell.substr(0, e);
            const std::size_t dot = mant.find('.');
            REQUIRE(dot != std::string::npos);
            CHECK(mant.size() - dot - 1 == 14u);
        }
    }
    CHECK(cells == 9 * 4);
    std::filesystem::remove(out);
}

TEST_CASE("self-check battery is deterministic for a fixed seed") {
    const auto out1 = temp_path("tempo_cli_check1.csv");
    const auto out2 = temp_path("tempo_cli_check2.csv");
    CHECK(run_cli({"check", "--seed", "99", "--out", out1.string()}) == 0);
    CHECK(run_cli({"check", "--seed", "99", "--out", out2.string()}) == 0);
    const std::string a = slurp(out1);
    const std::string b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("grid and packet validation surfaces as usage errors") {
    const auto cfg_path = temp_path("tempo_cli_badgrid.cfg");
    {
        std::ofstream out(cfg_path);
        out << "[grid]\nn = 12\n";  // not a power of two
    }
    CHECK(run_cli({"evolve", "--config", cfg_path.string(),
                   "--out", temp_path("tempo_cli_badgrid.csv").string()}) == 2);
    {
        std::ofstream out(cfg_path);
        out << "[packet]\nstructure = nosuchkind\n";
    }
    CHECK(run_cli({"evolve", "--config", cfg_path.string(),
                   "--out", temp_path("tempo_cli_badgrid.csv").string()}) == 2);
    {
        std::ofstream out(cfg_path);
        out << "[em]\nkind = circular\nb = 0.2\n[params]\nq = 0.5\n";
    }
    // A charged run with a non-uniform potential cannot be evolved.
    CHECK(run_cli({"evolve", "--config", cfg_path.string(),
                   "--out", temp_path("tempo_cli_badgrid.csv").string()}) == 2);
    std::filesystem::remove(cfg_path);
    std::filesystem::remove(temp_path("tempo_cli_badgrid.csv"));
}
