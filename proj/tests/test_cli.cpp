// End-to-end checks of the installed command-line surface: exit-code
// contract, output files, and run determinism.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(TEST_VSPECTRA_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("vspectra_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const std::string kStableCfg = std::string(TEST_CONFIG_DIR) + "/stable.cfg";
const std::string kUnstableCfg = std::string(TEST_CONFIG_DIR) + "/unstable.cfg";

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("dispersion growth") == 1);  // missing --config
  CHECK(run_cli("verify -c " + kStableCfg + " --suite nonsense") == 1);
  CHECK(run_cli("dispersion growth -c /does/not/exist.cfg") == 1);
  CHECK(run_cli("--help") == 0);
}

TEST_CASE("malformed config exits 1") {
  const fs::path dir = fresh_dir("badcfg");
  const fs::path cfg = dir / "bad.cfg";
  std::ofstream(cfg) << "[model]\nalpha two\n";
  CHECK(run_cli("dispersion growth -c " + cfg.string()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("regime mismatches exit 1") {
  const fs::path dir = fresh_dir("regime");
  CHECK(run_cli("instability certify -c " + kStableCfg + " -o " + dir.string()) == 1);
  CHECK(run_cli("verify --suite sandwich -c " + kStableCfg + " -o " + dir.string()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("dispersion outputs") {
  const fs::path dir = fresh_dir("disp");
  REQUIRE(run_cli("dispersion growth -c " + kUnstableCfg + " -o " + dir.string()) == 0);
  nlohmann::json j;
  std::ifstream(dir / "growth.json") >> j;
  CHECK(j["stability"] == "Unstable");
  CHECK(j["Theta"].get<double>() > 0.0);

  REQUIRE(run_cli("dispersion growth -c " + kStableCfg + " -o " + dir.string()) == 0);
  std::ifstream(dir / "growth.json") >> j;
  CHECK(j["stability"] == "Stable");
  CHECK_FALSE(j.contains("Theta"));

  REQUIRE(run_cli("dispersion scan -c " + kUnstableCfg + " -o " + dir.string() +
                  " --r-min 1e-3 --r-max 10 -n 64") == 0);
  const std::string csv = slurp(dir / "scan.csv");
  CHECK(csv.rfind("r,re_lambda1,im_lambda1", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);  // header + 64 rows

  nlohmann::json man;
  std::ifstream(dir / "manifest.json") >> man;
  CHECK(man["pass"] == true);
  CHECK(man["outputs"][0] == "scan.csv");
  fs::remove_all(dir);
}

TEST_CASE("instability certificate passes on the unstable config") {
  const fs::path dir = fresh_dir("cert");
  REQUIRE(run_cli("instability certify -c " + kUnstableCfg + " -o " + dir.string() +
                  " --theta-bar 0.05") == 0);
  nlohmann::json j;
  std::ifstream(dir / "certificate.json") >> j;
  CHECK(j["pass"] == true);
  CHECK(j["zeta_bar"].get<double>() > 0.0);
  CHECK(j["worst_ratio"].get<double>() <= 1e-6);
  fs::remove_all(dir);
}

TEST_CASE("simulate decay runs are deterministic byte-for-byte") {
  const fs::path d1 = fresh_dir("sim1");
  const fs::path d2 = fresh_dir("sim2");
  const std::string flags =
      " --n 128 --t-max 12 --amplitude 1e-3 --seed 42 -c " + kStableCfg;
  REQUIRE(run_cli("simulate -o " + d1.string() + flags) == 0);
  REQUIRE(run_cli("simulate -o " + d2.string() + flags) == 0);

  auto find_norms = [](const fs::path& parent) {
    for (const auto& e : fs::recursive_directory_iterator(parent))
      if (e.path().filename() == "norms.csv") return e.path();
    return fs::path();
  };
  const fs::path n1 = find_norms(d1);
  const fs::path n2 = find_norms(d2);
  REQUIRE_FALSE(n1.empty());
  REQUIRE_FALSE(n2.empty());
  CHECK(slurp(n1) == slurp(n2));
  CHECK(!slurp(n1).empty());

  // meta.json echoes the config
  const fs::path meta = n1.parent_path() / "meta.json";
  nlohmann::json j;
  std::ifstream(meta) >> j;
  CHECK(j["mode"] == "decay");
  CHECK(j["model"]["stability"] == "Stable");
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("simulate rejects a delta sweep in the stable regime") {
  const fs::path dir = fresh_dir("sweepbad");
  CHECK(run_cli("simulate -c " + kStableCfg + " -o " + dir.string() +
                " --delta-sweep 1e-4:1e-5") == 1);
  fs::remove_all(dir);
}

TEST_CASE("numeric aborts exit with code 3") {
  const fs::path dir = fresh_dir("vacuum");
  // amplitude far above rho_bar drives rho + rho_bar through the vacuum guard
  CHECK(run_cli("simulate -c " + kStableCfg + " -o " + dir.string() +
                " --n 128 --t-max 12 --amplitude 10 --seed 1") == 3);
  fs::remove_all(dir);
}

TEST_CASE("verify asymptotics passes on both regimes") {
  const fs::path dir = fresh_dir("verify");
  CHECK(run_cli("verify --suite asymptotics -c " + kStableCfg + " -o " + dir.string()) == 0);
  CHECK(run_cli("verify --suite asymptotics -c " + kUnstableCfg + " -o " + dir.string()) == 0);
  CHECK(run_cli("verify --suite sandwich -c " + kUnstableCfg + " -o " + dir.string()) == 0);
  fs::remove_all(dir);
}
