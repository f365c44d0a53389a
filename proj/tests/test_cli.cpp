#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the installed binary with stdout+stderr captured to a scratch file.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture =
      fs::temp_directory_path() / ("fsosec-cli-capture-" + std::to_string(counter++) + ".txt");
  const std::string command =
      std::string(FSOSEC_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  result.out = read_file(capture);
  fs::remove(capture);
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "fsosec-cli-test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("help exits cleanly") {
  REQUIRE(run_cli("--help").exit_code == 0);
  REQUIRE(run_cli("sweep --help").exit_code == 0);
}

TEST_CASE("missing subcommand or unknown option is a usage error") {
  REQUIRE(run_cli("").exit_code == 2);
  REQUIRE(run_cli("sweep --no-such-flag 1").exit_code == 2);
  REQUIRE(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("sweep writes deterministic CSV with the documented header") {
  const fs::path a = scratch_dir() / "sweep_a.csv";
  const fs::path b = scratch_dir() / "sweep_b.csv";
  const std::string args =
      "sweep --scenario orbital --variable main_distance "
      "--start 200e3 --stop 1400e3 --step 100e3 --set tx_power=60 -o ";
  REQUIRE(run_cli(args + a.string()).exit_code == 0);
  REQUIRE(run_cli(args + b.string()).exit_code == 0);
  const std::string csv = read_file(a);
  REQUIRE(csv == read_file(b));
  REQUIRE(csv.substr(0, csv.find('\n')) ==
          "variable,snr_main,snr_eve,cap_main,cap_eve,secrecy");
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 14);
  REQUIRE(!fs::exists(a.string() + ".tmp"));
}

TEST_CASE("sweep without a grid is a configuration error") {
  REQUIRE(run_cli("sweep --scenario orbital").exit_code == 2);
}

TEST_CASE("invalid grid values are configuration errors") {
  REQUIRE(run_cli("sweep --scenario orbital --variable tx_power "
                  "--start 0 --stop 10 --step 0").exit_code == 2);
  REQUIRE(run_cli("sweep --scenario nowhere --variable tx_power "
                  "--start 0 --stop 10 --step 5").exit_code == 2);
  REQUIRE(run_cli("sweep --scenario orbital --variable bogus "
                  "--start 0 --stop 10 --step 5").exit_code == 2);
}

TEST_CASE("physically invalid values are domain errors") {
  const auto r = run_cli("sweep --scenario orbital --variable tx_power "
                         "--start 0 --stop 10 --step 5 --set eve_distance=0.1");
  REQUIRE(r.exit_code == 3);
}

TEST_CASE("missing config file is a configuration error with no partial output") {
  const fs::path out = scratch_dir() / "never_written.csv";
  fs::remove(out);
  const auto r = run_cli("assess 1 orbital --config /nonexistent/config.json -o " + out.string());
  REQUIRE(r.exit_code == 2);
  REQUIRE(!fs::exists(out));
  REQUIRE(!fs::exists(out.string() + ".tmp"));
}

TEST_CASE("assess emits one CSV row block per series") {
  const auto r = run_cli("assess 1 orbital");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  REQUIRE(line == "series_param,series_value,variable,snr_main,snr_eve,cap_main,cap_eve,secrecy");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    REQUIRE(line.rfind("alpha,", 0) == 0);
    rows++;
  }
  REQUIRE(rows == 4 * 13);
  REQUIRE(run_cli("assess 9 orbital").exit_code == 2);
}

TEST_CASE("assess runs are byte-identical") {
  const auto a = run_cli("assess 2 aerial --format json");
  const auto b = run_cli("assess 2 aerial --format json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);
}

TEST_CASE("scenario prints a resolved configuration") {
  const auto r = run_cli("scenario orbital --set tx_power=21.5");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"scenario\": \"orbital\"") != std::string::npos);
  REQUIRE(r.out.find("\"tx_power_db\": 21.5") != std::string::npos);
  REQUIRE(r.out.find("\"LEOM\"") != std::string::npos);
}

TEST_CASE("registry-validate passes on the bundled registry") {
  const auto r = run_cli("registry-validate");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("PASS", 0) == 0);
}

TEST_CASE("registry-validate fails on a registry with an unmapped threat") {
  const fs::path broken = scratch_dir() / "broken_registry.json";
  std::string doc = R"({
    "schema_version": 1,
    "elements": ["Space-to-X Links"],
    "threats": [
      {"id": "EXF-0003", "domain": "cyber", "name": "Eavesdropping",
       "target_element": "Space-to-X Links"}
    ],
    "protections": [],
    "mappings": {}
  })";
  std::ofstream(broken) << doc;
  const auto r = run_cli("registry-validate --registry " + broken.string());
  REQUIRE(r.exit_code == 4);
  REQUIRE(r.out.rfind("FAIL", 0) == 0);
  REQUIRE(r.out.find("EXF-0003") != std::string::npos);
}

TEST_CASE("registry-query lists protections for a threat") {
  const auto r = run_cli("registry-query --threat EXF-0003");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> ids;
  while (std::getline(lines, line)) ids.push_back(line.substr(0, line.find(',')));
  REQUIRE(ids == std::vector<std::string>{"CM0003", "CM0029", "CM0002"});
}

TEST_CASE("registry-query lists threats for an element") {
  const auto r = run_cli("registry-query --element \"FSO/RF Management\"");
  REQUIRE(r.exit_code == 0);
  REQUIRE(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  REQUIRE(r.out.find("NAT-001") != std::string::npos);
  REQUIRE(run_cli("registry-query --element \"No Such Element\"").exit_code == 2);
  REQUIRE(run_cli("registry-query").exit_code == 2);
}

TEST_CASE("export writes one CSV per series") {
  const fs::path dir = scratch_dir() / "export";
  fs::remove_all(dir);
  const auto r = run_cli("export 3 aerial --out-dir " + dir.string());
  REQUIRE(r.exit_code == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string head = read_file(entry.path());
    REQUIRE(head.rfind("variable,snr_main,snr_eve,cap_main,cap_eve,secrecy\n", 0) == 0);
    files++;
  }
  REQUIRE(files == 4);
  REQUIRE(fs::exists(dir / "assess3_aerial_alpha_10.csv"));
}
