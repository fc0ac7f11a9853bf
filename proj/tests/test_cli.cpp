#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "moevcs/csv.hpp"
#include "moevcs/objectives.hpp"

namespace fs = std::filesystem;
using namespace moevcs;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(MOEVCS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::vector<std::string>> read_csv(const fs::path& file) {
    std::ifstream in(file);
    REQUIRE(in);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(split_csv_line(line));
    }
    return rows;
}

}  // namespace

TEST_CASE("run exports the full file set and is byte-reproducible") {
    TempDir dir("moevcs_cli_run");
    std::string base = "run --set 1 --pop 20 --gens 30 --seed 7 --baselines b1,b2 --out ";
    REQUIRE(run_cli(base + (dir.path / "a").string()) == 0);

    for (const char* name :
         {"pareto_front.csv", "summary.json", "progress.csv", "schedule_MOMinObj2.csv",
          "schedule_MOMinObj1_3.csv", "load_profile_MOMinObj2.csv", "tou_tariff_MOMinObj2.csv",
          "schedule_B1.csv", "load_profile_B1.csv", "tou_tariff_B1.csv", "schedule_B2.csv",
          "load_profile_B2.csv", "tou_tariff_B2.csv"}) {
        CHECK_MESSAGE(fs::exists(dir.path / "a" / name), name);
    }

    REQUIRE(run_cli(base + (dir.path / "b").string()) == 0);
    for (const char* name : {"pareto_front.csv", "progress.csv", "schedule_B1.csv",
                             "load_profile_B2.csv", "tou_tariff_MOMinObj2.csv"}) {
        CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
    }
}

TEST_CASE("load profile columns add up and prices recompute from the loads") {
    TempDir dir("moevcs_cli_profile");
    REQUIRE(run_cli("run --set 1 --pop 20 --gens 20 --seed 3 --baselines b2 --out " +
                    (dir.path / "r").string()) == 0);

    auto profile = read_csv(dir.path / "r" / "load_profile_B2.csv");
    auto tariff = read_csv(dir.path / "r" / "tou_tariff_B2.csv");
    REQUIRE(profile.size() == 30);  // header + 29 slots
    REQUIRE(tariff.size() == 30);
    REQUIRE(profile[0] ==
            std::vector<std::string>{"slot", "base", "ev_charge", "ev_discharge", "total"});

    TariffParams params;  // built-in sets use the default tariff
    for (size_t i = 1; i < profile.size(); ++i) {
        double base = parse_double(profile[i][1]);
        double charge = parse_double(profile[i][2]);
        double discharge = parse_double(profile[i][3]);
        double total = parse_double(profile[i][4]);
        CHECK(total == doctest::Approx(base + charge + discharge).epsilon(1e-12));
        CHECK(discharge == 0.0);  // B2 never discharges
        double price = parse_double(tariff[i][1]);
        CHECK(price == doctest::Approx(price_at(base, charge, discharge, params)).epsilon(1e-9));
    }
}

TEST_CASE("scenario export/validate round trip") {
    TempDir dir("moevcs_cli_scenario");
    fs::path file = dir.path / "set2.json";
    REQUIRE(run_cli("scenario export --set 2 --seed 4 --out " + file.string()) == 0);
    CHECK(run_cli("scenario validate " + file.string()) == 0);

    fs::path again = dir.path / "set2_again.json";
    REQUIRE(run_cli("scenario export --set 2 --seed 4 --out " + again.string()) == 0);
    CHECK(slurp(file) == slurp(again));

    fs::path corrupt = dir.path / "corrupt.json";
    {
        std::ofstream out(corrupt);
        out << "{ not json";
    }
    CHECK(run_cli("scenario validate " + corrupt.string()) != 0);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("run --out /tmp/moevcs_nowhere") == 1);            // neither --set nor --scenario
    CHECK(run_cli("run --set 9 --out /tmp/moevcs_nowhere") == 1);    // out-of-range set
    CHECK(run_cli("frobnicate") == 1);                               // unknown subcommand
}
