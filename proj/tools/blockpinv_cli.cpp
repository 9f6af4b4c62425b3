// blockpinv: batch front end for the block pseudoinverse library.
//
//   blockpinv pinv      --input E.txt [--partition p,q,s,t] [--method block|direct|alt-lr]
//                       [--seed N] [--check] [--tol X] [--output X.txt]
//   blockpinv projector --input E.txt --partition p,q,s,t [--which range|corange]
//                       [--seed N] [--output P.txt]
//   blockpinv verify    --input M.txt --candidate X.txt [--classes 1,2,3,4] [--tol X]
//
// A `key = value` report goes to stdout. Exit codes: 0 success, 1 verification
// failure, 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blockpinv/blockpinv.hpp"

namespace {

using namespace blockpinv;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

class Report {
 public:
  template <typename T>
  void put(const std::string& key, const T& value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    lines_.push_back(key + " = " + os.str());
  }

  void penrose(const PenroseReport& rep) {
    for (int e = 1; e <= 4; ++e) put("penrose.r" + std::to_string(e), rep.r(e));
    put("penrose.scale_m", rep.scale_m);
    put("penrose.scale_x", rep.scale_x);
    put("penrose.max_relative", rep.max_relative());
  }

  void warnings(const std::vector<std::string>& ws) {
    put("warnings", ws.size());
    for (const auto& w : ws) put("warning", w);
  }

  void print(std::ostream& os) const {
    for (const auto& l : lines_) os << l << '\n';
  }

 private:
  std::vector<std::string> lines_;
};

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BlockPartition parse_partition(const std::string& spec) {
  std::vector<std::size_t> dims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw InputError("bad partition '" + spec + "': expected p,q,s,t");
    }
    if (pos != item.size() || item.find('-') != std::string::npos) {
      throw InputError("bad partition '" + spec + "': expected p,q,s,t");
    }
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.size() != 4) throw InputError("bad partition '" + spec + "': expected four integers");
  try {
    return BlockPartition(dims[0], dims[1], dims[2], dims[3]);
  } catch (const dimension_error& e) {
    throw InputError(e.what());
  }
}

BlockPartition fitted_partition(const std::optional<std::string>& spec, const ComplexMatrix& e,
                                const std::string& method) {
  if (!spec) throw InputError("--partition is required for method " + method);
  BlockPartition part = parse_partition(*spec);
  if (!part.fits(e)) {
    throw InputError("partition " + part.str() + " does not fit a " + shape_of(e) + " matrix");
  }
  return part;
}

ComplexMatrix load_input(const std::string& path) {
  try {
    return load_matrix(path);
  } catch (const parse_error& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit_matrix(const std::optional<std::string>& output, const ComplexMatrix& m) {
  if (output) {
    save_matrix(*output, m);
  } else {
    std::cout << "# result\n";
    write_matrix(std::cout, m);
  }
}

InverseChoices choices_for(const std::optional<std::uint64_t>& seed) {
  return seed ? InverseChoices::sampled(*seed) : InverseChoices{};
}

struct PinvArgs {
  std::string input;
  std::optional<std::string> output;
  std::optional<std::string> partition;
  std::string method = "block";
  std::optional<std::uint64_t> seed;
  bool check = false;
  double tol = 1e-8;
};

int cmd_pinv(const PinvArgs& args) {
  Report report;
  Stopwatch clock;
  const ComplexMatrix e = load_input(args.input);
  report.put("command", "pinv");
  report.put("method", args.method);
  report.put("rows", e.rows());
  report.put("cols", e.cols());
  const double t_load = clock.lap_ms();

  std::optional<ComplexMatrix> result;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings{{"load", t_load}};

  if (args.method == "direct") {
    result = svd_pinv(e);
    timings.emplace_back("svd_pinv", clock.lap_ms());
  } else {
    const BlockPartition part = fitted_partition(args.partition, e, args.method);
    report.put("partition", part.str());
    const BlockAux aux = build_aux(e, part, choices_for(args.seed));
    warnings = aux.warnings;
    timings.emplace_back("build_aux", clock.lap_ms());
    if (args.method == "block") {
      result = block_pinv(aux).pinv;
      timings.emplace_back("block_pinv", clock.lap_ms());
    } else {
      const LRFactors lr = alt_LR(aux);
      timings.emplace_back("alt_lr", clock.lap_ms());
      result = lr.L * e * lr.R;
      timings.emplace_back("assemble", clock.lap_ms());
    }
  }
  if (args.seed) report.put("seed", *args.seed);

  const PenroseReport rep = penrose_check(e, *result);
  report.penrose(rep);
  timings.emplace_back("penrose_check", clock.lap_ms());

  bool failed = false;
  if (args.check) {
    const double gap = distance(*result, svd_pinv(e));
    report.put("oracle_gap", gap);
    report.put("check_tol", args.tol);
    timings.emplace_back("oracle", clock.lap_ms());
    failed = rep.max_relative() > args.tol;
  }
  report.warnings(warnings);
  for (const auto& [stage, ms] : timings) report.put("time." + stage + "_ms", ms);
  report.put("status", failed ? "verification-failed" : "ok");
  report.print(std::cout);
  emit_matrix(args.output, *result);
  return failed ? kVerifyFailed : kOk;
}

struct ProjectorArgs {
  std::string input;
  std::optional<std::string> output;
  std::optional<std::string> partition;
  std::string which = "range";
  std::optional<std::uint64_t> seed;
};

int cmd_projector(const ProjectorArgs& args) {
  Report report;
  Stopwatch clock;
  const ComplexMatrix e = load_input(args.input);
  const BlockPartition part = fitted_partition(args.partition, e, "projector");
  report.put("command", "projector");
  report.put("which", args.which);
  report.put("partition", part.str());
  const BlockAux aux = build_aux(e, part, choices_for(args.seed));
  const double t_aux = clock.lap_ms();

  const bool range = args.which == "range";
  const ComplexMatrix p = range ? range_projector(aux) : corange_projector(aux);
  const double t_proj = clock.lap_ms();

  // ran(P) must contain ran(E) (resp. ran(E*)).
  const double reproduction = range ? distance(p * e, e) : distance(e * p, e);
  const double scale = std::max(1.0, frobenius_norm(e));
  const bool ok = reproduction <= projector_tol * scale && is_orthogonal_projector(p);
  report.put("reproduction_residual", reproduction);
  report.put("idempotent_residual", distance(p * p, p));
  report.put("hermitian_residual", hermitian_deviation(p));
  report.warnings(aux.warnings);
  report.put("time.build_aux_ms", t_aux);
  report.put("time.projector_ms", t_proj);
  report.put("status", ok ? "ok" : "verification-failed");
  report.print(std::cout);
  emit_matrix(args.output, p);
  return ok ? kOk : kVerifyFailed;
}

struct VerifyArgs {
  std::string input;
  std::string candidate;
  std::string classes = "1,2,3,4";
  double tol = membership_tol;
};

int cmd_verify(const VerifyArgs& args) {
  const ComplexMatrix m = load_input(args.input);
  const ComplexMatrix x = load_input(args.candidate);
  InverseClass cls = [&] {
    try {
      return InverseClass::parse(args.classes);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  if (x.rows() != m.cols() || x.cols() != m.rows()) {
    throw InputError("candidate " + shape_of(x) + " is not shaped like the adjoint of " +
                     shape_of(m));
  }
  const PenroseReport rep = penrose_check(m, x);
  const bool member = is_member(rep, cls, args.tol);
  Report report;
  report.put("command", "verify");
  report.put("classes", cls.str());
  report.put("tol", args.tol);
  report.penrose(rep);
  report.put("member", member ? "true" : "false");
  report.put("status", member ? "ok" : "verification-failed");
  report.print(std::cout);
  return member ? kOk : kVerifyFailed;
}

template <typename F>
int guarded(F&& run) {
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moore-Penrose inverses of 2x2 block matrices"};
  app.require_subcommand(1);

  PinvArgs pinv;
  auto* pinv_cmd = app.add_subcommand("pinv", "Compute the pseudoinverse of a matrix");
  pinv_cmd->add_option("--input", pinv.input, "Matrix file")->required();
  pinv_cmd->add_option("--output", pinv.output, "Result file (default: stdout)");
  pinv_cmd->add_option("--partition", pinv.partition, "Block sizes p,q,s,t");
  pinv_cmd->add_option("--method", pinv.method, "block | direct | alt-lr")
      ->check(CLI::IsMember({"block", "direct", "alt-lr"}));
  pinv_cmd->add_option("--seed", pinv.seed, "Sample the {1}-inverses from this seed");
  pinv_cmd->add_flag("--check", pinv.check, "Fail unless Penrose residuals are within --tol");
  pinv_cmd->add_option("--tol", pinv.tol, "Relative residual bound for --check")
      ->check(CLI::NonNegativeNumber);

  ProjectorArgs proj;
  auto* proj_cmd = app.add_subcommand("projector", "Orthogonal projector onto ran(E) or ran(E*)");
  proj_cmd->add_option("--input", proj.input, "Matrix file")->required();
  proj_cmd->add_option("--output", proj.output, "Result file (default: stdout)");
  proj_cmd->add_option("--partition", proj.partition, "Block sizes p,q,s,t");
  proj_cmd->add_option("--which", proj.which, "range | corange")
      ->check(CLI::IsMember({"range", "corange"}));
  proj_cmd->add_option("--seed", proj.seed, "Sample the {1}-inverses from this seed");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check Penrose-equation memberships");
  verify_cmd->add_option("--input", verify.input, "Matrix file")->required();
  verify_cmd->add_option("--candidate", verify.candidate, "Candidate inverse file")->required();
  verify_cmd->add_option("--classes", verify.classes, "Equations to require, e.g. 1,2,3,4");
  verify_cmd->add_option("--tol", verify.tol, "Relative membership tolerance")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*pinv_cmd) return guarded([&] { return cmd_pinv(pinv); });
  if (*proj_cmd) return guarded([&] { return cmd_projector(proj); });
  return guarded([&] { return cmd_verify(verify); });
}
