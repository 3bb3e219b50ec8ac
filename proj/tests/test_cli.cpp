#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "generators.hpp"
#include "ovm/io.hpp"
#include "ovm/verify.hpp"

using namespace ovm;
using ovm::io::json;

namespace {

// The binary under test; ctest injects OVM_CLI=$<TARGET_FILE:ovm>.
std::string cli_path() {
  const char* p = std::getenv("OVM_CLI");
  return p ? p : "";
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.code = WEXITSTATUS(status);
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "cli_tmp_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("spectral command emits a readable measure" * doctest::skip(cli_path().empty())) {
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  auto input = write_temp("diag.json", io::matrix_to_json(diag).dump());

  auto res = run("spectral --input " + input);
  REQUIRE(res.code == 0);
  auto parsed = io::spectral_from_json(json::parse(res.out));
  REQUIRE(parsed.eigenvalues.size() == 2);
  CHECK(std::abs(parsed.eigenvalues[0] - cplx(1)) < 1e-12);
  // round-trip: re-emission matches the CLI output byte for byte
  CHECK(io::spectral_to_json(parsed).dump(2) + "\n" == res.out);
}

TEST_CASE("non-normal input exits with code 2" * doctest::skip(cli_path().empty())) {
  auto input = write_temp("nilpotent.json", R"([[ [0,0],[1,0] ],[ [0,0],[0,0] ]])");
  CHECK(run("spectral --input " + input).code == 2);
}

TEST_CASE("malformed input exits with code 1" * doctest::skip(cli_path().empty())) {
  auto input = write_temp("garbage.json", "not json");
  CHECK(run("spectral --input " + input).code == 1);
  CHECK(run("calc --input " + input + " --function poly:[1]").code == 1);
  CHECK(run("bogus-subcommand").code == 1);
  auto diag = write_temp("diag_ok.json", "[[ [1,0],[0,0] ],[ [0,0],[2,0] ]]");
  CHECK(run("calc --input " + diag + " --function nope:[]").code == 1);
}

TEST_CASE("calc applies function specs" * doctest::skip(cli_path().empty())) {
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 4.0;
  auto input = write_temp("diag14.json", io::matrix_to_json(diag).dump());

  auto identity = run("calc --input " + input + " --function poly:[0,1]");
  REQUIRE(identity.code == 0);
  CHECK(frob_norm(io::matrix_from_json(json::parse(identity.out)) - diag) < 1e-10);

  auto constant = run("calc --input " + input + " --function poly:[1]");
  REQUIRE(constant.code == 0);
  CHECK(frob_norm(io::matrix_from_json(json::parse(constant.out)) - Mat::Identity(2, 2)) < 1e-10);

  // sqrt on the spectrum via tabulation at the (sorted) eigenvalues 1, 4
  auto tab = write_temp("sqrt_tab.json", "[1.0, 2.0]");
  auto sqrt_res = run("calc --input " + input + " --function tab:@" + tab);
  REQUIRE(sqrt_res.code == 0);
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = 2.0;
  CHECK(frob_norm(io::matrix_from_json(json::parse(sqrt_res.out)) - expected) < 1e-10);
}

TEST_CASE("povm command evaluates outcome probabilities" * doctest::skip(cli_path().empty())) {
  auto space = AtomicSpace::indexed(2);
  std::vector<Mat> projectors = {Vec::Unit(2, 0) * Vec::Unit(2, 0).adjoint(),
                                 Vec::Unit(2, 1) * Vec::Unit(2, 1).adjoint()};
  auto povm = POVM::make(space, projectors);
  auto pfile = write_temp("povm.json", io::povm_to_json(povm).dump());
  auto sfile = write_temp("state.json", R"({"pure": [[1,0],[0,0]]})");

  auto res = run("povm --input " + pfile + " --state " + sfile);
  REQUIRE(res.code == 0);
  auto probs = io::measure_from_json(json::parse(res.out));
  CHECK(std::abs(probs.weights[0] - cplx(1)) < 1e-14);
  CHECK(std::abs(probs.weights[1]) < 1e-14);
}

TEST_CASE("instrument command evolves a state" * doctest::skip(cli_path().empty())) {
  Rng rng(151);
  auto instrument = gen::random_instrument(rng, 2, 2);
  auto ifile = write_temp("inst.json", io::instrument_to_json(instrument).dump());
  auto sfile = write_temp("state2.json", R"({"pure": [[1,0],[0,0]]})");

  auto res = run("instrument --input " + ifile + " --state " + sfile + " --set a0,a1");
  REQUIRE(res.code == 0);
  auto evolved = io::state_from_json(json::parse(res.out));
  CHECK(std::abs(evolved.trace - 1.0) <= 1e-10);
}

TEST_CASE("semivar command brackets the scalar TV" * doctest::skip(cli_path().empty())) {
  auto space = AtomicSpace::indexed(3);
  std::vector<Vec> atoms;
  double tv = 0.0;
  Rng rng(157);
  for (int i = 0; i < 3; ++i) {
    Vec v(1);
    v(0) = rng.cgaussian();
    tv += std::abs(v(0));
    atoms.push_back(v);
  }
  auto mu = VectorMeasure::make({1, Norm::L2}, space, atoms);
  auto mfile = write_temp("measure.json", io::vector_measure_to_json(mu).dump());

  auto res = run("semivar --input " + mfile);
  REQUIRE(res.code == 0);
  auto bounds = io::bound_pair_from_json(json::parse(res.out));
  CHECK(bounds.lower == doctest::Approx(tv).epsilon(1e-10));
  CHECK(bounds.upper == doctest::Approx(tv).epsilon(1e-10));
}

TEST_CASE("series command builds the truncated series" * doctest::skip(cli_path().empty())) {
  json spec;
  spec["kind"] = "vector";
  spec["space"] = json{{"dim", 2}, {"norm", "l2"}};
  json lam = json{{"space", json{{"atoms", json::array({"w0", "w1"})}, {"tail_bound", 0.0}}},
                  {"weights", json::array({json::array({0.5, 0.0}), json::array({0.5, 0.0})})},
                  {"tail_tv_bound", 0.0}};
  spec["lams"] = json::array({lam, lam, lam});
  json e1 = json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})});
  spec["xs"] = json::array({e1, e1, e1});
  spec["N"] = 2;
  auto file = write_temp("series.json", spec.dump());

  auto res = run("series --input " + file);
  REQUIRE(res.code == 0);
  auto mu = io::vector_measure_from_json(json::parse(res.out));
  CHECK(mu.tail_norm_bound == doctest::Approx(0.25));  // N = 2
  Vec total = measure_of_vector(mu, MeasurableSet::full(mu.measurable));
  CHECK(std::abs(total(0) - cplx(0.75)) < 1e-14);
}

TEST_CASE("verify command is deterministic and reports pass" * doctest::skip(cli_path().empty())) {
  std::string args = "verify spectral --trials 5 --seed 7 --dims 2,3";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto report = report_from_json(json::parse(a.out));
  CHECK(report.pass);
  CHECK(report.trials == 5);

  auto csv_run = run(args + " --csv cli_tmp_report.csv");
  REQUIRE(csv_run.code == 0);
  std::ifstream csv("cli_tmp_report.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "suite,seed,residual,pass");
}
