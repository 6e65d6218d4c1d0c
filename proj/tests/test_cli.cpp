#include <doctest.h>

// End-to-end checks of the command-line tool: exit codes, file outputs and
// byte-stable determinism.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stderr_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path err = fs::temp_directory_path() / "fresnel2d_cli_stderr.txt";
    const std::string cmd =
        std::string(CLI_BINARY) + " " + args + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(err);
    std::stringstream buf;
    buf << in.rdbuf();
    res.stderr_text = buf.str();
    return res;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

const fs::path kOut = fs::temp_directory_path() / "fresnel2d_cli";
const std::string kFig1a = std::string(SCENARIO_DIR) + "/fig1a.json";

} // namespace

TEST_CASE("cli run writes the trace CSV with the fixed header") {
    const RunResult r =
        run_cli("run --scenario " + kFig1a + " --out " + (kOut / "run").string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(kOut / "run" / "fig1a_trace.csv");
    CHECK(csv.find("x_m,y_m,f_hz,h_re,h_im,h_abs,h_abs_norm,band_power") !=
          std::string::npos);
}

TEST_CASE("cli exit codes") {
    // missing scenario file: I/O error (2) naming the path
    const RunResult missing =
        run_cli("run --scenario /nonexistent/sc.json --out " + kOut.string());
    CHECK(missing.exit_code == 2);
    CHECK(missing.stderr_text.find("/nonexistent/sc.json") != std::string::npos);

    // invalid scenario: validation error (1)
    const fs::path bad = fs::temp_directory_path() / "bad_scenario.json";
    std::ofstream(bad) << R"({"transmitter": {"position": [0,0]},
        "reflectors": [{"center": [1,1], "angle_deg": 0, "length": 1, "reflectivity": 2}],
        "path": {"start": [0,0], "end": [1,0], "samples": 4}, "frequencies": [1e9]})";
    const RunResult invalid =
        run_cli("run --scenario " + bad.string() + " --out " + kOut.string());
    CHECK(invalid.exit_code == 1);
    CHECK(invalid.stderr_text.find("reflectivity") != std::string::npos);

    // unknown sweep name: usage error (1) listing the valid names
    const RunResult unk = run_cli("sweep bogus --out " + kOut.string());
    CHECK(unk.exit_code == 1);
    CHECK(unk.stderr_text.find("rough_grid") != std::string::npos);
}

TEST_CASE("cli analyze emits events and delays, warns at the 50% level") {
    const fs::path out = kOut / "analyze";
    const RunResult r = run_cli("analyze --scenario " + kFig1a + " --level 0.5 --out " +
                                 out.string());
    CHECK(r.exit_code == 0); // warning only, still runs
    CHECK(r.stderr_text.find("50%") != std::string::npos);
    CHECK(slurp(out / "events.csv").find("f_hz,position_m,direction,level") !=
          std::string::npos);
    CHECK(slurp(out / "delays.csv").find("f_low_hz,f_high_hz,direction,level,delay_m") !=
          std::string::npos);
}

TEST_CASE("cli map produces a grid of the requested shape") {
    const fs::path out = kOut / "map";
    const RunResult r = run_cli("map --scenario " + kFig1a +
                                 " --grid 0,2,0,2,0.5 --component -1 --out " +
                                 out.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out / "fig1a_map.csv");
    CHECK(csv.find("x_m,y_m,h_abs_norm") != std::string::npos);
    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 2 + 1 + 16); // two comments, header, 4x4 cells

    const RunResult nogrid =
        run_cli("map --scenario " + kFig1a + " --out " + out.string());
    CHECK(nogrid.exit_code == 1);
}

TEST_CASE("cli runs are byte-identical across invocations and thread counts") {
    const fs::path a = kOut / "det_a";
    const fs::path b = kOut / "det_b";
    CHECK(run_cli("run --scenario " + kFig1a + " --threads 1 --out " + a.string())
              .exit_code == 0);
    CHECK(run_cli("run --scenario " + kFig1a + " --threads 3 --out " + b.string())
              .exit_code == 0);
    const std::string x = slurp(a / "fig1a_trace.csv");
    CHECK(!x.empty());
    CHECK(x == slurp(b / "fig1a_trace.csv"));
}
