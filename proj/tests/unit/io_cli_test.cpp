#include <filesystem>
#include <sstream>

#include "cli/dispatch.hpp"
#include "doctest.h"
#include "polymer/io/csv.hpp"
#include "polymer/io/report.hpp"

using namespace polymer;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "polymer_cli_test";
  fs::create_directories(p);
  return p;
}

const std::string kModels = POLYMER_MODELS_DIR;

}  // namespace

TEST_CASE("number formatting and csv") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_real(NAN) == "nan");
  CHECK(io::format_real(-INFINITY) == "-inf");
  io::CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK(t.text() == "a,b\n1,2\n");
  CHECK_THROWS(t.add_row({"1"}));
}

TEST_CASE("digests") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto f = scratch() / "digest.txt";
  io::write_file(f, "abc");
  CHECK(io::sha256_file(f) == io::sha256_hex("abc"));
}

TEST_CASE("metadata round trip and report") {
  io::RunMeta m;
  m.engine = "spectrum";
  m.parameters["gamma"] = 1.0;
  m.checks.push_back({"lowest_eigenvalue", "pass", "ok"});
  m.results["eigenvalues"] = 3;
  const auto f = scratch() / "run.csv";
  io::write_file(f, "x\n");
  m.outputs.push_back(f.string());
  io::write_meta(io::meta_path_for(f), m);
  const auto back = io::read_meta(io::meta_path_for(f));
  CHECK(back.engine == "spectrum");
  CHECK(back.checks.at(0).status == "pass");
  const std::vector<io::RunMeta> runs{back};
  const std::string text = io::emit_report(runs);
  CHECK(text.find("lowest_eigenvalue: pass") != std::string::npos);
  CHECK(text.find(io::sha256_hex("x\n")) != std::string::npos);
  CHECK(io::emit_report({}).find("no engines run") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == 3);
  const auto typo = invoke({"spectrum", "--cutof", "50"});
  CHECK(typo.code == 3);
  CHECK(typo.err.find("did you mean --cutoff") != std::string::npos);
  CHECK(invoke({"entropy", "--area", "-5"}).code == 3);
  CHECK(invoke({"entropy"}).code == 3);
  CHECK(invoke({"entropy", "--area", "10", "--rule", "r9"}).code == 3);
  CHECK(invoke({"entropy", "--area", "2000", "--rule", "r3", "--method", "exact"}).code == 4);
  CHECK(invoke({"cosmo", "--model", kModels + "/example.json", "--validate"}).code == 0);
  for (const char* bad : {"curvature", "product", "singular"}) {
    CHECK(invoke({"cosmo", "--model", kModels + "/counterexample_" + bad + ".json", "--validate"}).code == 2);
  }
  CHECK(invoke({"cosmo", "--model", "/nonexistent.json"}).code == 3);
  CHECK(invoke({"report"}).out.find("no engines run") != std::string::npos);
}

TEST_CASE("cli output is deterministic") {
  const auto a = invoke({"spectrum", "--cutoff", "120"});
  const auto b = invoke({"--threads", "2", "spectrum", "--cutoff", "120"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("index,area,gap\n0,0,", 0) == 0);
  const auto e1 = invoke({"entropy", "--area-sweep", "100:400:4", "--rule", "r3", "--projection"});
  const auto e2 = invoke({"entropy", "--area-sweep", "100:400:4", "--rule", "r3", "--projection"});
  CHECK(e1.code == 0);
  CHECK(e1.out == e2.out);
}

TEST_CASE("cli writes files with metadata and a manifest") {
  const auto dir = scratch();
  const std::string csv = (dir / "r1.csv").string();
  const auto r = invoke({"--out", csv, "entropy", "--area-sweep", "20:2000:40", "--quantized", "--rule", "r1"});
  REQUIRE(r.code == 0);
  const auto meta = io::read_meta(csv + ".meta.json");
  bool closed = false;
  for (const auto& c : meta.checks) closed = closed || (c.name == "r1_closed_form" && c.status == "pass");
  CHECK(closed);
  CHECK(meta.results.at("implied_gamma0").get<double>() == doctest::Approx(0.12738402).epsilon(1e-6));
  const auto cosmo_csv = (dir / "psi.csv").string();
  REQUIRE(invoke({"--out", cosmo_csv, "cosmo", "--model", kModels + "/example.json", "--select-preclassical"}).code == 0);
  const auto rep = invoke({"report", "--in", csv + ".meta.json", cosmo_csv + ".meta.json"});
  CHECK(rep.out.find("[entropy]") != std::string::npos);
  CHECK(rep.out.find("[cosmo]") != std::string::npos);
  CHECK(rep.out.find(io::sha256_file(cosmo_csv)) != std::string::npos);
}
