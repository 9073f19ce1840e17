#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the command-line driver: artifact shapes, exit
// codes, and the determinism contract.  The binary path comes from the
// build system; every run works inside a disposable directory.

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CommandResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SPINBOSON_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
        result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "spinboson_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const ordered_json& doc) {
    const fs::path path = dir / "config.json";
    std::ofstream out(path);
    out << doc.dump(2) << '\n';
    return path;
}

ordered_json small_config(const fs::path& out_dir) {
    ordered_json cfg;
    cfg["chi"] = {{"kind", "annular_bump"}, {"center", 2.0}, {"width", 1.0},
                  {"amplitude", 1.0}};
    cfg["grid"] = {{"radial_order", 2}, {"angular_order", 6}};
    cfg["spins"] = {{"beta", {0.0, 0.0, 1.0}},
                    {"positions", {{0.0, 0.0, 0.0}}}};
    cfg["truncation"] = {{"n_max", 2}};
    cfg["expansion"] = {{"p", 0}};
    cfg["oracle"] = {{"h_list", {0.2, 0.1, 0.05}}};
    cfg["fields"] = {{"points", {{0.3, 0.0, 0.0}, {0.0, 0.25, 0.4}}},
                     {"h", 0.05}};
    cfg["compare"] = {{"rows", {1, 2, 10, 11, 12}}};
    cfg["output"] = {{"directory", out_dir.string()}};
    cfg["seed"] = 99;
    return cfg;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_timestamp(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find("generated_at") == std::string::npos) out += line + '\n';
    return out;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("expand writes the documented artifacts", "[cli]") {
    const fs::path dir = fresh_dir("expand");
    const fs::path cfg = write_config(dir, small_config(dir / "out"));
    const CommandResult res = run_cli("expand --config " + cfg.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.find("lambda_1 = -1") != std::string::npos);

    const ordered_json doc =
        ordered_json::parse(read_file(dir / "out" / "expansion.json"));
    REQUIRE(doc["p"].get<int>() == 0);
    REQUIRE(doc["capped"].get<bool>() == false);
    REQUIRE(doc["dimension"].get<long long>() == 650);
    REQUIRE(doc["lambdas"].size() == 1);
    REQUIRE(doc["lambdas"][0].get<double>() == -1.0);
    REQUIRE(doc["vectors"].size() == 2);  // u_0 and u_1 for p = 0
    REQUIRE(doc.contains("generated_at"));
    REQUIRE(fs::exists(dir / "out" / "grid.csv"));
    for (const auto& entry : doc["vectors"])
        REQUIRE(fs::exists(dir / "out" / entry["file"].get<std::string>()));

    // The leading vector is the bare product state: unit first coordinate.
    std::istringstream u0(read_file(dir / "out" / "u_0.csv"));
    std::string header, first;
    std::getline(u0, header);
    std::getline(u0, first);
    REQUIRE(header == "index,real,imag");
    REQUIRE(first == "0,1,0");
}

TEST_CASE("config failures exit with the config code", "[cli]") {
    const fs::path dir = fresh_dir("badcfg");
    {
        std::ofstream out(dir / "unknown.json");
        out << "{\"bogus\": 1}\n";
    }
    CommandResult res = run_cli("expand --config " + (dir / "unknown.json").string());
    REQUIRE(res.exit_code == 2);
    REQUIRE(res.output.find("unknown config key") != std::string::npos);

    res = run_cli("expand --config " + (dir / "missing.json").string());
    REQUIRE(res.exit_code == 2);

    {
        std::ofstream out(dir / "broken.json");
        out << "not json\n";
    }
    res = run_cli("oracle --config " + (dir / "broken.json").string());
    REQUIRE(res.exit_code == 2);
    REQUIRE(res.output.find("not valid JSON") != std::string::npos);
}

TEST_CASE("impossible requests exit with the documented codes", "[cli]") {
    const fs::path dir = fresh_dir("badrun");

    ordered_json cfg = small_config(dir / "out");
    cfg["expansion"] = {{"p", 3}};  // needs n_max >= 8, config has 2
    CommandResult res = run_cli("expand --config " + write_config(dir, cfg).string());
    REQUIRE(res.exit_code == 3);
    REQUIRE(res.output.find("n_max") != std::string::npos);

    cfg = small_config(dir / "out");
    cfg["truncation"] = {{"n_max", 2}, {"state_budget", 10}};
    res = run_cli("expand --config " + write_config(dir, cfg).string());
    REQUIRE(res.exit_code == 5);
    REQUIRE(res.output.find("state budget") != std::string::npos);

    cfg = small_config(dir / "out");
    cfg["quadrature"] = {{"rel_tol", 1e-15}, {"max_intervals", 3}};
    res = run_cli("closedform --config " + write_config(dir, cfg).string());
    REQUIRE(res.exit_code == 4);
    REQUIRE(res.output.find("quadrature") != std::string::npos);
}

TEST_CASE("compare reruns are byte-identical", "[cli]") {
    const fs::path dir = fresh_dir("compare");
    const fs::path cfg = write_config(dir, small_config(dir / "out"));
    const std::string args = "compare --config " + cfg.string();

    CommandResult first = run_cli(args);
    CAPTURE(first.output);
    REQUIRE(first.exit_code == 0);
    REQUIRE(first.output.find("5 of 5 rows pass") != std::string::npos);
    const std::string verdict_first = read_file(dir / "out" / "verdict.json");

    const CommandResult second = run_cli(args);
    REQUIRE(second.exit_code == 0);
    REQUIRE(read_file(dir / "out" / "verdict.json") == verdict_first);

    const ordered_json doc = ordered_json::parse(verdict_first);
    REQUIRE(doc["total"].get<int>() == 5);
    REQUIRE(doc["passed"].get<int>() == 5);
    REQUIRE(doc["rows"].size() == 5);
    for (const auto& row : doc["rows"]) {
        REQUIRE(row["pass"].get<bool>());
        REQUIRE(row["detail"].get<std::string>().size() > 0);
    }
}

TEST_CASE("expand reruns differ only in the timestamp", "[cli]") {
    const fs::path dir = fresh_dir("repro");
    const fs::path cfg = write_config(dir, small_config(dir / "out"));
    const std::string args = "expand --config " + cfg.string();

    REQUIRE(run_cli(args).exit_code == 0);
    const std::string first = read_file(dir / "out" / "expansion.json");
    const std::string u1_first = read_file(dir / "out" / "u_1.csv");
    REQUIRE(run_cli(args).exit_code == 0);
    REQUIRE(strip_timestamp(read_file(dir / "out" / "expansion.json")) ==
            strip_timestamp(first));
    REQUIRE(read_file(dir / "out" / "u_1.csv") == u1_first);
}

TEST_CASE("fieldmap emits one row per configured point", "[cli]") {
    const fs::path dir = fresh_dir("fieldmap");
    ordered_json cfg = small_config(dir / "out");
    ordered_json points = ordered_json::array();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            points.push_back({0.2 * i, 0.2 * j, 0.15});
    cfg["fields"] = {{"points", points}, {"h", 0.05}};
    const CommandResult res =
        run_cli("fieldmap --config " + write_config(dir, cfg).string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);

    const std::string table = read_file(dir / "out" / "fieldmap.csv");
    REQUIRE(count_lines(table) == 26);  // header + 5 x 5 x 1 lattice
    REQUIRE(table.rfind("x,y,z,Bx,By,Bz\n", 0) == 0);
    const ordered_json doc =
        ordered_json::parse(read_file(dir / "out" / "fieldmap.json"));
    REQUIRE(doc["rows"].get<int>() == 25);
    REQUIRE(doc["samples"].size() == 25);
    for (const auto& sample : doc["samples"])
        for (const auto& component : sample["electric"])
            REQUIRE(component.get<double>() == 0.0);
}

TEST_CASE("oracle on the decoupled model reproduces the exact energies",
          "[cli]") {
    const fs::path dir = fresh_dir("oracle");
    ordered_json cfg = small_config(dir / "out");
    cfg["chi"] = {{"kind", "annular_bump"}, {"center", 2.0}, {"width", 1.0},
                  {"amplitude", 0.0}};
    const CommandResult res =
        run_cli("oracle --config " + write_config(dir, cfg).string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);

    // With chi identically zero the model decouples and E_h = -|beta| h.
    std::istringstream table(read_file(dir / "out" / "oracle.csv"));
    std::string line;
    std::getline(table, line);
    REQUIRE(line == "h,energy,gap,iterations,overlap_abs,overlap_rate,photon_number");
    int rows = 0;
    while (std::getline(table, line)) {
        std::istringstream fields(line);
        std::string h_text, e_text;
        std::getline(fields, h_text, ',');
        std::getline(fields, e_text, ',');
        const double h = std::strtod(h_text.c_str(), nullptr);
        const double e = std::strtod(e_text.c_str(), nullptr);
        REQUIRE(std::abs(e + h) < 1e-13);
        ++rows;
    }
    REQUIRE(rows == 3);

    const ordered_json doc =
        ordered_json::parse(read_file(dir / "out" / "slopes.json"));
    REQUIRE(doc["h_list"].size() == 3);
    REQUIRE(doc["lambdas"][0].get<double>() == -1.0);
}
