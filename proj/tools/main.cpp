#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ovm/io.hpp"
#include "ovm/verify.hpp"

namespace {

using ovm::io::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << text;
  }
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

/// Function specs: "poly:[c0,c1,...]", "exp:a", "indicator:[ids]", "tab:@file".
ovm::MeasurableFunction parse_function_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad function spec '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "poly") {
    json coeffs = json::parse(arg);
    std::vector<ovm::cplx> cs;
    for (const auto& c : coeffs) cs.push_back(ovm::io::complex_from_json(c));
    return ovm::MeasurableFunction::poly(std::move(cs));
  }
  if (kind == "exp") return ovm::MeasurableFunction::exp_scale(ovm::io::complex_from_json(json::parse(arg)));
  if (kind == "indicator")
    return ovm::MeasurableFunction::indicator_ids(json::parse(arg).get<std::vector<std::string>>());
  if (kind == "tab") {
    if (arg.empty() || arg[0] != '@')
      throw std::invalid_argument("tab spec must reference a file: tab:@file");
    json j = read_json_file(arg.substr(1));
    if (j.is_array()) {
      std::vector<ovm::cplx> values;
      for (const auto& v : j) values.push_back(ovm::io::complex_from_json(v));
      return ovm::MeasurableFunction::tabulated(std::move(values));
    }
    return ovm::io::function_from_json(j);
  }
  throw std::invalid_argument("unknown function form '" + kind + "'");
}

ovm::MeasurableSet set_from_flag(const ovm::SpacePtr& space, const std::string& flag) {
  if (flag.empty()) return ovm::MeasurableSet::full(space);
  return ovm::MeasurableSet::of_ids(space, split_csv(flag));
}

struct VerifyArgs {
  std::string suite;
  ovm::TrialSpec spec;
  std::string dims, atoms, norms;
  std::string out, csv;
};

int run_verify(VerifyArgs& args) {
  if (!args.dims.empty()) {
    args.spec.dims.clear();
    for (const auto& d : split_csv(args.dims)) args.spec.dims.push_back(std::stoi(d));
  }
  if (!args.atoms.empty()) {
    args.spec.atom_counts.clear();
    for (const auto& a : split_csv(args.atoms)) args.spec.atom_counts.push_back(std::stoi(a));
  }
  if (!args.norms.empty()) {
    args.spec.norms.clear();
    for (const auto& n : split_csv(args.norms)) args.spec.norms.push_back(ovm::norm_from_tag(n));
  }
  ovm::VerificationReport report = ovm::run_suite(args.suite, args.spec);
  std::string text = ovm::report_to_json_string(report);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    if (!out) throw std::invalid_argument("cannot write '" + args.out + "'");
    out << text;
  }
  if (!args.csv.empty()) {
    std::ofstream out(args.csv);
    if (!out) throw std::invalid_argument("cannot write '" + args.csv + "'");
    out << ovm::report_to_csv(report);
  }
  return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-valued measures at desk scale"};
  app.require_subcommand(1);

  std::string input, out, state_path, set_flag, function_spec;
  double cluster_tol = -1.0;
  std::uint64_t seed = 1;

  auto* spectral = app.add_subcommand("spectral", "spectral measure of a normal matrix");
  spectral->add_option("--input", input, "matrix JSON file")->required();
  spectral->add_option("--cluster-tol", cluster_tol, "eigenvalue clustering tolerance");
  spectral->add_option("--out", out, "output file (default stdout)");

  auto* calc = app.add_subcommand("calc", "Borel functional calculus f(T)");
  calc->add_option("--input", input, "matrix JSON file")->required();
  calc->add_option("--function", function_spec, "poly:[...] | exp:a | indicator:[...] | tab:@file")
      ->required();
  calc->add_option("--cluster-tol", cluster_tol, "eigenvalue clustering tolerance");
  calc->add_option("--out", out, "output file (default stdout)");

  auto* povm = app.add_subcommand("povm", "POVM outcome probabilities for a state");
  povm->add_option("--input", input, "POVM JSON file")->required();
  povm->add_option("--state", state_path, "state JSON file")->required();
  povm->add_option("--out", out, "output file (default stdout)");

  auto* instrument = app.add_subcommand("instrument", "apply an instrument to a state");
  instrument->add_option("--input", input, "instrument JSON file")->required();
  instrument->add_option("--state", state_path, "state JSON file")->required();
  instrument->add_option("--set", set_flag, "comma-separated atom ids (default all)");
  instrument->add_option("--out", out, "output file (default stdout)");

  auto* semivar = app.add_subcommand("semivar", "semivariation bounds of a vector measure");
  semivar->add_option("--input", input, "vector measure JSON file")->required();
  semivar->add_option("--set", set_flag, "comma-separated atom ids (default all)");
  semivar->add_option("--seed", seed, "sampling seed");
  semivar->add_option("--out", out, "output file (default stdout)");

  auto* series = app.add_subcommand("series", "build a 2^{-n}-series measure");
  series->add_option("--input", input, "series spec JSON file")->required();
  series->add_option("--out", out, "output file (default stdout)");

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", vargs.suite, "mct | dct | dct-proper | semivariation | boundedness | spectral")
      ->required();
  verify->add_option("--trials", vargs.spec.trials, "trial count");
  verify->add_option("--seed", vargs.spec.seed, "base seed");
  verify->add_option("--dims", vargs.dims, "comma-separated dimensions");
  verify->add_option("--atoms", vargs.atoms, "comma-separated atom counts");
  verify->add_option("--norms", vargs.norms, "comma-separated norm tags (l1,l2,linf)");
  verify->add_option("--chain-len", vargs.spec.chain_length, "convergence chain length");
  verify->add_option("--tol", vargs.spec.tol_final, "final residual tolerance");
  verify->add_option("--out", vargs.out, "report JSON file (default stdout)");
  verify->add_option("--csv", vargs.csv, "also write a per-trial CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (spectral->parsed()) {
      ovm::SpectralMeasure E = ovm::spectral_measure_of(
          ovm::io::matrix_from_json(read_json_file(input)), cluster_tol);
      emit(ovm::io::spectral_to_json(E), out);
      return 0;
    }
    if (calc->parsed()) {
      ovm::MeasurableFunction f = parse_function_spec(function_spec);
      ovm::Mat result = ovm::functional_calculus(
          f, ovm::io::matrix_from_json(read_json_file(input)), cluster_tol);
      emit(ovm::io::matrix_to_json(result), out);
      return 0;
    }
    if (povm->parsed()) {
      ovm::POVM p = ovm::io::povm_from_json(read_json_file(input));
      ovm::DensityOperator rho = ovm::io::state_from_json(read_json_file(state_path));
      emit(ovm::io::measure_to_json(ovm::povm_probabilities(p, rho)), out);
      return 0;
    }
    if (instrument->parsed()) {
      ovm::Instrument E = ovm::io::instrument_from_json(read_json_file(input));
      ovm::DensityOperator rho = ovm::io::state_from_json(read_json_file(state_path));
      ovm::DensityOperator evolved =
          ovm::instrument_apply(E, set_from_flag(E.measurable, set_flag), rho);
      emit(ovm::io::state_to_json(evolved), out);
      return 0;
    }
    if (semivar->parsed()) {
      ovm::VectorMeasure mu = ovm::io::vector_measure_from_json(read_json_file(input));
      ovm::SupBudget budget;
      budget.seed = seed;
      ovm::BoundPair b = ovm::semivariation(ovm::family_of(mu),
                                            set_from_flag(mu.measurable, set_flag), budget);
      emit(ovm::io::bound_pair_to_json(b), out);
      return 0;
    }
    if (series->parsed()) {
      json j = read_json_file(input);
      std::string kind = j.value("kind", "vector");
      std::vector<ovm::ComplexMeasure> lams;
      for (const auto& l : j.at("lams")) lams.push_back(ovm::io::measure_from_json(l));
      if (j.contains("N")) {
        std::size_t n = j.at("N").get<std::size_t>();
        if (n == 0 || n > lams.size())
          throw std::invalid_argument("series: N must be in [1, #lams]");
        lams.resize(n);
      }
      if (kind == "vector") {
        ovm::SpaceDescriptor space = ovm::io::descriptor_from_json(j.at("space"));
        std::vector<ovm::Vec> xs;
        for (const auto& x : j.at("xs")) xs.push_back(ovm::io::vector_from_json(x));
        if (xs.size() < lams.size()) throw std::invalid_argument("series: fewer xs than lams");
        xs.resize(lams.size());
        emit(ovm::io::vector_measure_to_json(ovm::series_vector_measure(lams, xs, space)), out);
      } else if (kind == "operator") {
        std::vector<ovm::Mat> ts;
        for (const auto& t : j.at("Ts")) ts.push_back(ovm::io::matrix_from_json(t));
        if (ts.size() < lams.size()) throw std::invalid_argument("series: fewer Ts than lams");
        ts.resize(lams.size());
        emit(ovm::io::operator_measure_to_json(ovm::series_operator_measure(lams, ts)), out);
      } else {
        throw std::invalid_argument("series: kind must be 'vector' or 'operator'");
      }
      return 0;
    }
    if (verify->parsed()) return run_verify(vargs);
  } catch (const ovm::normality_error& e) {
    std::cerr << "normality defect " << e.defect() << " exceeds threshold " << e.threshold()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
