// Command-line front end: matrix generation, spectra, Smith normal forms and
// Rota basis checks. Exit status: 0 success, 1 verification failure or an
// exhausted search, 2 usage or input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "disjoint/disjoint.hpp"

namespace {

using nlohmann::json;
using namespace disjoint;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Output {
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << text;
  }

  void emit(const json& doc) const { emit(doc.dump(2) + "\n"); }
};

json diagonal_json(const std::vector<Integer>& diagonal) {
  json out = json::array();
  for (const auto& d : diagonal) out.push_back(to_string(d));
  return out;
}

json factors_json(const std::vector<FactorCount>& factors) {
  json out = json::array();
  for (const auto& f : factors) out.push_back({{"factor", to_string(f.factor)}, {"multiplicity", f.multiplicity}});
  return out;
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const auto& x : m.row(i)) row.push_back(to_string(x));
    out.push_back(std::move(row));
  }
  return out;
}

// --- gen-matrix -------------------------------------------------------------

struct GenMatrixArgs {
  unsigned n = 0;
  std::string what = "a";
  bool allow_large = false;
  Output out;
};

int run_gen_matrix(const GenMatrixArgs& args) {
  const IntMatrix m =
      args.what == "b" ? build_b(args.n) : incidence_matrix(args.n, args.allow_large ? UINT32_MAX : kDenseGuard);
  args.out.emit(format_matrix(m));
  return kOk;
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  unsigned n = 0;
  bool verify = false;
  bool allow_large = false;
  Output out;
};

int run_spectrum(const SpectrumArgs& args) {
  const SpectrumSummary summary = closed_form_spectrum(args.n);
  json doc = {{"n", args.n}, {"lines", json::array()}, {"verified", false}};
  for (const auto& line : summary.lines)
    doc["lines"].push_back(
        {{"k", line.k}, {"eigenvalue", to_string(line.eigenvalue)}, {"multiplicity", to_string(line.multiplicity)}});
  int status = kOk;
  if (args.verify) {
    const SpectrumReport report = verify_spectrum(args.n, args.allow_large ? UINT32_MAX : kDenseGuard);
    doc["verified"] = report.ok();
    if (!report.failures.empty()) {
      json failures = json::array();
      for (const auto& f : report.failures)
        failures.push_back({{"pattern", f.pattern}, {"rank", f.pattern_rank}, {"reason", f.reason}});
      doc["failures"] = std::move(failures);
    }
    if (!report.ok()) status = kFailed;
  }
  args.out.emit(doc);
  return status;
}

// --- snf --------------------------------------------------------------------

struct SnfArgs {
  std::string in;
  bool transforms = false;
  bool as_json = false;
  Output out;
};

int run_snf(const SnfArgs& args) {
  const IntMatrix a = load_matrix(args.in);
  const SnfResult r = snf(a);
  const SnfVerification check = verify_snf(a, r);
  for (const auto& reason : check.reasons) std::cerr << "snf: verification failed: " << reason << '\n';

  if (args.as_json) {
    const auto diagonal = diagonal_of(r.d);
    json doc = {{"diagonal", diagonal_json(diagonal)},
                {"invariant_factors", factors_json(group_factors(diagonal))},
                {"verified", check.ok}};
    if (args.transforms) {
      doc["p"] = matrix_json(r.p);
      doc["q"] = matrix_json(r.q);
    }
    args.out.emit(doc);
  } else {
    std::string text = format_matrix(r.d);
    if (args.transforms) text += format_matrix(r.p) + format_matrix(r.q);
    args.out.emit(text);
  }
  return check.ok ? kOk : kFailed;
}

// --- snf-an -----------------------------------------------------------------

struct SnfAnArgs {
  unsigned n = 0;
  std::string method = "structured";
  bool allow_large = false;
  Output out;
};

// Internal consistency of the closed form: multiplicities sum to n^n and the
// factors multiply to (n-1)^(n^n) = |det A_n|.
bool closed_form_consistent(const InvariantFactors& inv) {
  const unsigned n = inv.n;
  Integer count = 0, exponent = 0;
  for (const auto& line : inv.lines) {
    count += line.multiplicity;
    if (line.multiplicity != 0 && line.factor != pow(Integer(n - 1), line.k)) return false;
    exponent += line.k * line.multiplicity;
  }
  const Integer total = pow(Integer(n), n);
  // with n = 1 the single factor is 0 = 0^1
  return count == total && (n == 1 ? exponent == 1 : exponent == total);
}

int run_snf_an(const SnfAnArgs& args) {
  const InvariantFactors expected = closed_form_invariants(args.n);
  json doc;
  bool ok = false;
  if (args.method == "closed-form") {
    ok = closed_form_consistent(expected);
    json factors = json::array();
    for (const auto& line : expected.lines)
      if (line.multiplicity != 0)
        factors.push_back({{"factor", to_string(line.factor)},
                           {"multiplicity", line.multiplicity.fits_ulong_p() ? json(line.multiplicity.get_ui())
                                                                             : json(to_string(line.multiplicity))}});
    if (pow(Integer(args.n), args.n) <= transversal_count(kDenseGuard))
      doc["diagonal"] = diagonal_json(expected.expand());
    doc["invariant_factors"] = std::move(factors);
  } else {
    const unsigned guard = args.allow_large ? UINT32_MAX : kStructuredGuard;
    if (args.n > guard)
      throw SizeGuardError("snf-an: n=" + std::to_string(args.n) + " exceeds the size guard (n <= " +
                           std::to_string(guard) + "); use --method closed-form or --allow-large");
    const IntMatrix a = incidence_matrix(args.n, guard);
    const SnfResult r = args.method == "general" ? snf(a) : structured_snf(args.n, guard);
    const SnfVerification check = verify_snf(a, r);
    for (const auto& reason : check.reasons) std::cerr << "snf-an: verification failed: " << reason << '\n';
    const auto diagonal = diagonal_of(r.d);
    const bool matches = diagonal == expected.expand();
    if (!matches) std::cerr << "snf-an: diagonal differs from the closed form\n";
    ok = check.ok && matches;
    doc["diagonal"] = diagonal_json(diagonal);
    doc["invariant_factors"] = factors_json(group_factors(diagonal));
    doc["matches_closed_form"] = matches;
  }
  doc["n"] = args.n;
  doc["method"] = args.method;
  doc["verified"] = ok;
  args.out.emit(doc);
  return ok ? kOk : kFailed;
}

// --- rota -------------------------------------------------------------------

struct RotaCheckArgs {
  std::string in;
  bool emit_submatrix = false;
  Output out;
};

json check_instance(const RotaInstance& inst, bool emit_submatrix, bool& ok) {
  const auto ranks = basis_transversals(inst);
  json doc = {{"n", inst.n}, {"field", inst.field.to_string()}, {"basis_transversals", ranks}};
  const SearchOutcome outcome = find_arrangement(inst);
  if (const auto* arrangement = std::get_if<Arrangement>(&outcome)) {
    json cols = json::array();
    for (const auto& t : arrangement->columns) cols.push_back(to_json(t));
    doc["arrangement"] = std::move(cols);
    const ArrangementCheck check = verify_arrangement(inst, *arrangement);
    doc["verified"] = check.ok;
    if (!check.ok) {
      doc["reasons"] = check.reasons;
      ok = false;
    }
  } else {
    doc["arrangement"] = nullptr;
    doc["exhausted_nodes"] = std::get<Exhausted>(outcome).nodes;
    doc["verified"] = false;
    ok = false;
  }
  if (emit_submatrix) {
    const IntMatrix sub = principal_submatrix(inst.n, ranks);
    json rows = json::array();
    for (std::size_t i = 0; i < sub.rows(); ++i) {
      json row = json::array();
      for (const auto& x : sub.row(i)) row.push_back(x.get_si());
      rows.push_back(std::move(row));
    }
    doc["submatrix"] = std::move(rows);
  }
  return doc;
}

int run_rota_check(const RotaCheckArgs& args) {
  std::ifstream in(args.in);
  if (!in) throw std::invalid_argument("cannot open instance file '" + args.in + "'");
  json input;
  try {
    input = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("instance file '" + args.in + "': " + e.what());
  }
  const auto instances = instances_from_json(input);
  bool ok = true;
  if (input.is_array()) {
    json results = json::array();
    for (const auto& inst : instances) results.push_back(check_instance(inst, args.emit_submatrix, ok));
    args.out.emit(json{{"results", std::move(results)}});
  } else {
    args.out.emit(check_instance(instances.front(), args.emit_submatrix, ok));
  }
  return ok ? kOk : kFailed;
}

struct RotaRandomArgs {
  unsigned n = 0;
  std::string field = "Q";
  std::uint64_t seed = 1;
  unsigned count = 1;
  Output out;
};

int run_rota_random(const RotaRandomArgs& args) {
  const FieldSpec field = FieldSpec::parse(args.field);
  std::mt19937_64 rng(args.seed);
  json all = json::array();
  for (unsigned i = 0; i < args.count; ++i) all.push_back(to_json(random_instance(args.n, field, rng)));
  args.out.emit(args.count == 1 ? all.front() : all);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disjoint-transversal matrices: generation, spectra, Smith normal forms, Rota basis checks"};
  app.require_subcommand(1);

  GenMatrixArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-matrix", "Emit A_n or B_n in the plain-text matrix format");
  gen_cmd->add_option("--n", gen.n, "Array size n")->required()->check(CLI::Range(1u, 64u));
  gen_cmd->add_option("--what", gen.what, "Which matrix: a (incidence A_n) or b (B_n = J - I)")
      ->check(CLI::IsMember({"a", "b"}));
  gen_cmd->add_flag("--allow-large", gen.allow_large, "Lift the n <= 6 size guard");
  gen_cmd->add_option("--out", gen.out.path, "Output file (default: standard output)");

  SpectrumArgs spec;
  auto* spec_cmd = app.add_subcommand("spectrum", "Closed-form spectrum of A_n as JSON");
  spec_cmd->add_option("--n", spec.n, "Array size n")->required()->check(CLI::Range(1u, 1000u));
  spec_cmd->add_flag("--verify", spec.verify, "Check every tensor eigenvector exactly against A_n");
  spec_cmd->add_flag("--allow-large", spec.allow_large, "Lift the n <= 6 size guard for --verify");
  spec_cmd->add_option("--out", spec.out.path, "Output file (default: standard output)");

  SnfArgs snf_args;
  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of a matrix file");
  snf_cmd->add_option("--in", snf_args.in, "Matrix file in the plain-text format")->required();
  snf_cmd->add_flag("--transforms", snf_args.transforms, "Also emit P and Q");
  snf_cmd->add_flag("--json", snf_args.as_json, "Emit JSON instead of plain matrices");
  snf_cmd->add_option("--out", snf_args.out.path, "Output file (default: standard output)");

  SnfAnArgs an;
  auto* an_cmd = app.add_subcommand("snf-an", "Smith normal form of the incidence matrix A_n");
  an_cmd->add_option("--n", an.n, "Array size n")->required()->check(CLI::Range(1u, 1000u));
  an_cmd->add_option("--method", an.method, "general, structured or closed-form")
      ->check(CLI::IsMember({"general", "structured", "closed-form"}));
  an_cmd->add_flag("--allow-large", an.allow_large, "Lift the n <= 4 size guard");
  an_cmd->add_option("--out", an.out.path, "Output file (default: standard output)");

  auto* rota_cmd = app.add_subcommand("rota", "Rota basis conjecture instances");
  rota_cmd->require_subcommand(1);

  RotaCheckArgs check;
  auto* check_cmd = rota_cmd->add_subcommand("check", "Search and verify an arrangement for each instance");
  check_cmd->add_option("--in", check.in, "Instance JSON file")->required();
  check_cmd->add_flag("--emit-submatrix", check.emit_submatrix, "Include the principal submatrix of A_n");
  check_cmd->add_option("--out", check.out.path, "Output file (default: standard output)");

  RotaRandomArgs random;
  auto* random_cmd = rota_cmd->add_subcommand("random", "Generate random instances");
  random_cmd->add_option("--n", random.n, "Dimension n")->required()->check(CLI::Range(1u, 16u));
  random_cmd->add_option("--field", random.field, "Q or GF(p)");
  random_cmd->add_option("--seed", random.seed, "RNG seed");
  random_cmd->add_option("--count", random.count, "Number of instances")->check(CLI::Range(1u, 100000u));
  random_cmd->add_option("--out", random.out.path, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen_matrix(gen);
    if (*spec_cmd) return run_spectrum(spec);
    if (*snf_cmd) return run_snf(snf_args);
    if (*an_cmd) return run_snf_an(an);
    if (*check_cmd) return run_rota_check(check);
    if (*random_cmd) return run_rota_random(random);
  } catch (const SizeGuardError& e) {
    std::cerr << "error: size guard: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
