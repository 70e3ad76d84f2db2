#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string tool_path() { return ZONEPLATE_TOOL_PATH; }

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + tool_path() + "\" " + args;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "zptool_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n')
            ++n;
    return n;
}

std::string base_config(const std::string& component_line) {
    std::ostringstream os;
    os << "# run configuration\n";
    os << "energy_kev = 8.05\n";
    os << "focal_length_um = 460000\n";
    os << "geometry = circular\n";
    os << "material_table = " << testsupport::si_table_path().string() << "\n";
    os << "material = Si\n";
    os << "relief_height_um = 10.5\n";
    os << "membrane_um = 16\n";
    os << component_line << "\n";
    return os.str();
}

// Splits a CSV body into rows of string fields, header dropped.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

const std::vector<std::string>& row_with_key(const std::vector<std::vector<std::string>>& rows,
                                             const std::string& key) {
    for (const auto& row : rows)
        if (!row.empty() && row[0] == key)
            return row;
    REQUIRE(false);
    return rows.front();
}

} // namespace

TEST_CASE("design writes the zone table, layout, and summary") {
    const fs::path dir = scratch_dir("design");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=112"));
    const int code = run("design --config \"" + (dir / "run.cfg").string() + "\" --out \"" + (dir / "out").string() +
                         "\" > /dev/null");
    CHECK(code == 0);

    const std::string table = read_file(dir / "out" / "zone_table.csv");
    CHECK(count_lines(table) == 113);
    CHECK(table.rfind("n,r_inner_um,r_outer_um,width_um,region,component_index\n", 0) == 0);
    const auto rows = csv_rows(table);
    REQUIRE(rows.size() == 112);
    CHECK(rows.front()[0] == "1");
    CHECK(rows.front()[4] == "ridge");
    CHECK(rows.back()[0] == "112");
    CHECK(rows.back()[4] == "groove");

    const std::string svg = read_file(dir / "out" / "layout.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    const std::string summary = read_file(dir / "out" / "design_summary.txt");
    CHECK(summary.find("8.4171") != std::string::npos);
    CHECK(summary.find("zone count N: 112") != std::string::npos);
    CHECK(summary.find("178.157") != std::string::npos);
    CHECK(summary.find("0.3976") != std::string::npos);
}

TEST_CASE("efficiency tabulates the requested orders") {
    const fs::path dir = scratch_dir("efficiency");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=112"));
    const int code = run("efficiency --config \"" + (dir / "run.cfg").string() + "\" --out \"" +
                         (dir / "out").string() + "\" --orders 0,1,3 > /dev/null");
    CHECK(code == 0);

    const std::string table = read_file(dir / "out" / "order_table_0.csv");
    CHECK(table.rfind("k,efficiency_relative,efficiency_absolute,efficiency_ideal\n", 0) == 0);
    const auto rows = csv_rows(table);
    REQUIRE(rows.size() == 3);

    const auto& first = row_with_key(rows, "1");
    const double rel = std::stod(first[1]);
    CHECK(rel == doctest::Approx(0.37562507).epsilon(1e-6));
    CHECK(std::stod(first[2]) == doctest::Approx(rel * 0.79576346).epsilon(1e-5));
    CHECK(std::stod(first[3]) == doctest::Approx(0.405284735).epsilon(1e-8));

    const auto& zero = row_with_key(rows, "0");
    CHECK(std::stod(zero[1]) == doctest::Approx(0.00356964).epsilon(1e-4));
}

TEST_CASE("efficiency scans the duty factor") {
    const fs::path dir = scratch_dir("scan");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=112"));
    const int code = run("efficiency --config \"" + (dir / "run.cfg").string() + "\" --out \"" +
                         (dir / "out").string() + "\" --scan-slitness 0.1:0.9:0.05 --scan-order 2 > /dev/null");
    CHECK(code == 0);

    const auto rows = csv_rows(read_file(dir / "out" / "slitness_scan.csv"));
    REQUIRE(rows.size() == 17);
    CHECK(std::stod(row_with_key(rows, "0.5")[1]) < 1e-12);
    CHECK(std::stod(row_with_key(rows, "0.25")[1]) == doctest::Approx(0.101321184).epsilon(1e-6));
}

TEST_CASE("simulate reports focal metrics") {
    const fs::path dir = scratch_dir("simulate");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=40"));
    const int code = run("simulate --config \"" + (dir / "run.cfg").string() + "\" --out \"" +
                         (dir / "out").string() + "\" --knife-edge > /dev/null");
    CHECK(code == 0);

    CHECK(fs::exists(dir / "out" / "profile.csv"));
    const std::string psf = read_file(dir / "out" / "psf.csv");
    CHECK(psf.rfind("rho_um,intensity\n", 0) == 0);
    CHECK(csv_rows(psf).size() > 100);

    const std::string metrics = read_file(dir / "out" / "metrics.json");
    for (const char* key : {"\"z_um\"", "\"fwhm_um\"", "\"marginal_fwhm_um\"", "\"knife_fwhm_um\"",
                            "\"first_zero_um\"", "\"efficiency_absolute\"", "\"efficiency_relative\""})
        CHECK(metrics.find(key) != std::string::npos);

    const std::string knife = read_file(dir / "out" / "knife_edge.csv");
    CHECK(knife.rfind("x_um,flux,derivative\n", 0) == 0);
    CHECK(csv_rows(knife).size() > 100);
}

TEST_CASE("simulate accepts an explicit distance and guards undersampled ones") {
    const fs::path dir = scratch_dir("distance");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=40"));
    const std::string common =
        " --config \"" + (dir / "run.cfg").string() + "\" --out \"" + (dir / "out").string() + "\"";
    CHECK(run("simulate" + common + " --z 300000 > /dev/null") == 0);
    CHECK(run("simulate" + common + " --z 100000 > /dev/null 2>&1") == 4);
    CHECK(run("simulate" + common + " --z nonsense > /dev/null 2>&1") == 2);
}

TEST_CASE("export emits the chosen format") {
    const fs::path dir = scratch_dir("export");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=40"));
    const std::string common =
        " --config \"" + (dir / "run.cfg").string() + "\" --out \"" + (dir / "out").string() + "\"";
    CHECK(run("export" + common + " --format csv > /dev/null") == 0);
    CHECK(fs::exists(dir / "out" / "zone_table.csv"));
    CHECK(run("export" + common + " --format svg > /dev/null") == 0);
    CHECK(fs::exists(dir / "out" / "layout.svg"));
    CHECK(run("export" + common + " --format pdf > /dev/null 2>&1") == 2);
}

TEST_CASE("configuration mistakes exit with the config code") {
    const fs::path dir = scratch_dir("config_errors");
    const std::string out = " --out \"" + (dir / "out").string() + "\"";

    CHECK(run("design --config \"" + (dir / "missing.cfg").string() + "\"" + out + " > /dev/null 2>&1") == 2);

    write_file(dir / "unknown.cfg", base_config("component = 1, 0, n=40") + "nonsense = 1\n");
    CHECK(run("design --config \"" + (dir / "unknown.cfg").string() + "\"" + out + " > /dev/null 2>&1") == 2);

    std::string no_focal = "energy_kev = 8.05\nmaterial_table = " + testsupport::si_table_path().string() +
                           "\ncomponent = 1, 0, n=40\n";
    write_file(dir / "no_focal.cfg", no_focal);
    CHECK(run("design --config \"" + (dir / "no_focal.cfg").string() + "\"" + out + " > /dev/null 2>&1") == 2);

    write_file(dir / "both.cfg", base_config("component = 1, 0, n=40") + "wavelength_um = 0.000154\n");
    CHECK(run("design --config \"" + (dir / "both.cfg").string() + "\"" + out + " > /dev/null 2>&1") == 2);
}

TEST_CASE("invalid order pairs exit with the validation code") {
    const fs::path dir = scratch_dir("validation");
    write_file(dir / "run.cfg", base_config("component = 2, 2, n=10"));
    CHECK(run("design --config \"" + (dir / "run.cfg").string() + "\" --out \"" + (dir / "out").string() +
              "\" > /dev/null 2>&1") == 3);
}

TEST_CASE("sampling and fabrication limits exit with the resource code") {
    const fs::path dir = scratch_dir("limits");

    write_file(dir / "coarse.cfg", base_config("component = 1, 0, n=112") + "profile_spacing_um = 1.0\n");
    CHECK(run("simulate --config \"" + (dir / "coarse.cfg").string() + "\" --out \"" + (dir / "out").string() +
              "\" > /dev/null 2>&1") == 4);

    write_file(dir / "too_wide.cfg", base_config("component = 1, 0, r=100"));
    const std::string err = (dir / "err.txt").string();
    CHECK(run("design --config \"" + (dir / "too_wide.cfg").string() + "\" --out \"" + (dir / "out").string() +
              "\" > /dev/null 2> \"" + err + "\"") == 4);
    const std::string message = read_file(dir / "err.txt");
    CHECK(message.find("fabrication") != std::string::npos);
    CHECK(message.find("112") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    const fs::path dir = scratch_dir("determinism");
    write_file(dir / "run.cfg", base_config("component = 1, 0, n=112"));
    const std::string cfg = " --config \"" + (dir / "run.cfg").string() + "\"";
    CHECK(run("design" + cfg + " --out \"" + (dir / "a").string() + "\" > /dev/null") == 0);
    CHECK(run("design" + cfg + " --out \"" + (dir / "b").string() + "\" > /dev/null") == 0);
    for (const char* name : {"zone_table.csv", "layout.svg", "design_summary.txt"})
        CHECK(read_file(dir / "a" / name) == read_file(dir / "b" / name));
}

TEST_CASE("bare invocations explain themselves") {
    CHECK(run("> /dev/null 2>&1") == 2);
    CHECK(run("--help > /dev/null") == 0);
    CHECK(run("design > /dev/null 2>&1") == 2);
}
