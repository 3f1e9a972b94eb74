#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(PST_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Result r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string stderr_of(const std::string& args) {
  const std::string cmd = std::string(PST_CLI_PATH) + " " + args + " 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string s;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) s.append(buf.data(), got);
  pclose(pipe);
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pst_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("design, certify, simulate pipeline") {
  TempDir dir;
  auto r = run("design analytic --n 4 --out " + dir / "a4.json");
  REQUIRE(r.code == 0);
  const auto chain = nlohmann::json::parse(r.out);
  REQUIRE(chain["couplings"].size() == 3);
  CHECK(chain["couplings"][0].get<double>() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(chain["couplings"][1].get<double>() == doctest::Approx(1.0));

  r = run("certify --chain " + dir / "a4.json");
  REQUIRE(r.code == 0);
  const auto cert = nlohmann::json::parse(r.out);
  CHECK(cert["verdict"] == "perfect");
  CHECK(cert["t0"].get<double>() == doctest::Approx(std::numbers::pi));

  r = run("simulate --chain " + dir / "a4.json" + " --source 1 --target 4 --tmax 6.3 --steps 1000 --out " + dir / "s.csv");
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = read_csv(dir / "s.csv", &header);
  CHECK(header == "t,re,im,abs2");
  CHECK(rows.size() == 1001);
  size_t best = 0;
  for (size_t k = 0; k < rows.size(); ++k)
    if (rows[k][3] > rows[best][3]) best = k;
  CHECK(rows[best][3] > 0.9999);
  CHECK(std::abs(rows[best][0] - std::numbers::pi) < 0.01);

  r = run("design uniform --n 5 --out " + dir / "u5.json");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(run("certify --chain " + dir / "u5.json").out)["verdict"] == "imperfect");
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run("frobnicate").code == 64);
  CHECK(stderr_of("frobnicate").rfind("error: unknown-subcommand:", 0) == 0);

  std::ofstream(dir / "bad.json") << "{\"couplings\": [1, 2";
  CHECK(run("certify --chain " + dir / "bad.json").code == 65);
  std::ofstream(dir / "short.json") << R"({"couplings": [1, 2], "fields": [0, 0]})";
  CHECK(run("certify --chain " + dir / "short.json").code == 65);
  CHECK(run("certify --chain " + dir / "missing.json").code == 65);

  REQUIRE(run("design analytic --n 4 --out " + dir / "a4.json").code == 0);
  CHECK(run("noise dephase --chain " + dir / "a4.json" + " --p 1.5 --t 1").code == 2);
  const auto err = stderr_of("noise dephase --chain " + dir / "a4.json" + " --p 1.5 --t 1");
  CHECK(err.rfind("error: validation:", 0) == 0);
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);
  CHECK(run("report --figure pie").code == 2);
  CHECK(run("design analytic").code == 2);
  CHECK(run("design analytic --n 0").code == 2);
}

TEST_CASE("outputs are deterministic and manifests are stable") {
  TempDir dir;
  REQUIRE(run("design analytic --n 6 --out " + dir / "a6.json").code == 0);
  const auto a = run("certify --chain " + dir / "a6.json");
  const auto b = run("certify --chain " + dir / "a6.json");
  CHECK(a.out == b.out);
  CHECK(a.out.find("3.1415926535897") != std::string::npos);

  for (int k = 0; k < 2; ++k)
    REQUIRE(run("simulate --chain " + dir / "a6.json" + " --tmax 4 --steps 50 --out " + dir / ("c" + std::to_string(k) + ".csv") +
                " --manifest " + dir / ("m" + std::to_string(k) + ".json"))
                .code == 0);
  CHECK(slurp(dir / "c0.csv") == slurp(dir / "c1.csv"));
  const auto m0 = nlohmann::json::parse(slurp(dir / "m0.json"));
  const auto m1 = nlohmann::json::parse(slurp(dir / "m1.json"));
  CHECK(m0["inputs"][0]["sha256"] == m1["inputs"][0]["sha256"]);
  CHECK(m0["outputs"][0]["sha256"] == m1["outputs"][0]["sha256"]);
  CHECK(m0["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(m0["command_line"].size() > 3);
  CHECK(m0.contains("wall_clock_seconds"));
}

TEST_CASE("figure reports") {
  TempDir dir;
  auto r = run("report --figure amplifier --steps 1200 --out " + dir / "amp");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["n"] == 100);
  for (const auto& p : doc["multiples_of_t0"]) {
    const int m = static_cast<int>(std::lround(p["t"].get<double>() / doc["t0"].get<double>()));
    if (m % 2) CHECK(p["target"].get<double>() > 1 - 1e-8);
    else CHECK(p["initial"].get<double>() > 1 - 1e-8);
  }
  CHECK(doc["dense_cross_check"].is_null());
  const auto manifest = nlohmann::json::parse(slurp(dir / "amp/manifest.json"));
  CHECK(manifest["notes"]["dense_cross_check"].get<std::string>().rfind("skipped", 0) == 0);
  CHECK(manifest["outputs"].size() == 1);
  CHECK(read_csv(dir / "amp/amplifier.csv").size() == 1201);

  r = run("report --figure amplifier --n 8 --steps 100 --out " + dir / "amp8");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["dense_cross_check"]["deviation"].get<double>() < 1e-9);

  r = run("report --figure timing --n 31 --steps 400 --out " + dir / "timing");
  REQUIRE(r.code == 0);
  const auto t = nlohmann::json::parse(r.out);
  CHECK(t["series"]["uniform"]["max_abs2"].get<double>() < 0.99);
  CHECK(t["series"]["analytic"]["max_abs2"].get<double>() > 1 - 1e-8);
  CHECK(t["series"]["near_uniform"]["max_abs2"].get<double>() > 1 - 1e-8);

  r = run("report --figure timing --n 2 --steps 100 --out " + dir / "t2");
  REQUIRE(r.code == 0);
  for (const auto& row : read_csv(dir / "t2/timing_analytic.csv"))
    CHECK(row[2] == doctest::Approx(std::pow(std::sin(row[1] / 2), 2)).epsilon(1e-12));
}

TEST_CASE("protocol, noise, network and gadget subcommands") {
  TempDir dir;
  REQUIRE(run("design analytic --n 5 --out " + dir / "a5.json").code == 0);
  REQUIRE(run("design analytic --n 6 --out " + dir / "a6.json").code == 0);
  REQUIRE(run("design analytic --n 2 --out " + dir / "a2.json").code == 0);
  REQUIRE(run("design storage --n 3 --out " + dir / "s3.json").code == 0);

  auto j = nlohmann::json::parse(run("fermionic entgen --chain " + dir / "a6.json").out);
  CHECK(j["entropy_bits"].get<double>() == doctest::Approx(1.0));
  j = nlohmann::json::parse(run("fermionic initfree --chain " + dir / "a6.json" + " --theta 1.1 --phi 0.4 --junk 1011").out);
  CHECK(j["min_fidelity"].get<double>() > 1 - 1e-8);
  j = nlohmann::json::parse(run("fermionic storage --chain " + dir / "s3.json" + " --k 3 --order same").out);
  CHECK(j["ghz"]["fidelity"].get<double>() > 1 - 1e-8);
  CHECK(j["controlled_phases"].size() == 3);
  j = nlohmann::json::parse(run("fermionic distribution --chain " + dir / "a5.json").out);
  CHECK(j["corrected_fidelity"].get<double>() > 1 - 1e-8);
  j = nlohmann::json::parse(run("fermionic ising --chain " + dir / "a6.json").out);
  CHECK(j["fidelity"].get<double>() > 1 - 1e-8);
  CHECK(j["fields"].size() == 3);

  j = nlohmann::json::parse(run("noise dephase --chain " + dir / "a5.json" + " --p 1 --t 1").out);
  CHECK(j["fidelity"].get<double>() == doctest::Approx(1.0 / 3));
  auto r = run("noise bath --chain " + dir / "a5.json" + " --G 0 --tmax 6 --steps 60 --out " + dir / "bath.csv");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["max_bare_deviation"].get<double>() < 1e-12);

  j = nlohmann::json::parse(run("network hypercube --d 3").out);
  CHECK(j["antipodal_fidelity"].get<double>() > 1 - 1e-8);
  CHECK(j["network"]["edges"].size() == 12);
  CHECK(j["network"]["edges"][0].contains("im"));
  j = nlohmann::json::parse(run("network product --a " + dir / "a5.json" + " --b " + dir / "a6.json").out);
  CHECK(j["corner_fidelity"].get<double>() > 1 - 1e-8);
  j = nlohmann::json::parse(run("network star --branch " + dir / "a2.json" + " --M 3").out);
  CHECK(j["end_population"].get<double>() > 1 - 1e-8);
  j = nlohmann::json::parse(run("network theta --chain " + dir / "a5.json" + " --theta 0.39269908169872414").out);
  CHECK(j["max_deviation"].get<double>() < 1e-8);

  r = run("gadget amp --chain " + dir / "a6.json" + " --tmax 3.14159265358979 --steps 10 --out " + dir / "amp.csv");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["max_target"].get<double>() > 1 - 1e-8);
  const auto c1 = run("gadget clock --chain " + dir / "a5.json" + " --dim 3 --seed 7");
  const auto c2 = run("gadget clock --chain " + dir / "a5.json" + " --dim 3 --seed 7");
  REQUIRE(c1.code == 0);
  CHECK(c1.out == c2.out);
  CHECK(nlohmann::json::parse(c1.out)["fidelity"].get<double>() > 1 - 1e-8);
  std::ofstream(dir / "gates.json") << R"({"gates": [[[[0,0],[1,0]],[[1,0],[0,0]]]]})";
  j = nlohmann::json::parse(run("gadget clock --chain " + dir / "a2.json" + " --gates " + dir / "gates.json").out);
  CHECK(j["dense_checked"] == true);
  CHECK(std::abs(std::hypot(j["output"][0][0].get<double>(), j["output"][0][1].get<double>()) -
                 std::hypot(j["input"][1][0].get<double>(), j["input"][1][1].get<double>())) < 1e-8);
}
