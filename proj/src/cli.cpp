#include "qctrl/cli.hpp"

#include "qctrl/criteria.hpp"
#include "qctrl/io.hpp"
#include "qctrl/lieclosure.hpp"
#include "qctrl/system.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qctrl::cli {

namespace {

struct TolFlags {
  std::optional<double> zero;
  std::optional<double> degeneracy;
};

double parse_env_double(const std::string& name, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ParseError(name + ": not a number: '" + value + "'");
  return out;
}

Tolerances env_defaults(const EnvLookup& env) {
  Tolerances tol;
  if (auto z = env("QCTRL_TOL_ZERO")) tol.zero = parse_env_double("QCTRL_TOL_ZERO", *z);
  if (auto d = env("QCTRL_TOL_DEGENERACY"))
    tol.degeneracy = parse_env_double("QCTRL_TOL_DEGENERACY", *d);
  return tol;
}

void apply_flags(Tolerances& tol, const TolFlags& flags) {
  if (flags.zero) tol.zero = *flags.zero;
  if (flags.degeneracy) tol.degeneracy = *flags.degeneracy;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void add_tol_options(CLI::App* cmd, TolFlags& flags) {
  cmd->add_option("--tol-zero", flags.zero, "magnitude treated as zero");
  cmd->add_option("--tol-degeneracy", flags.degeneracy, "separation treated as degenerate");
}

void emit_report(const HamiltonianSystem& sys, const std::string& digest_source, bool text,
                 std::ostream& out) {
  ReportDocument doc;
  doc.report = analyze(sys);
  doc.dim = sys.dim();
  doc.tool_version = std::string(tool_version());
  doc.input_digest = "sha256:" + sha256_hex(digest_source);
  out << (text ? format_report_text(doc) : serialize_report(doc));
}

HamiltonianSystem demo_system(const std::string& name, std::optional<int> n) {
  if (name == "lambda") {
    if (n && *n != 3) throw ValidationError("demo lambda: the lambda system has 3 levels");
    return build_lambda(0.0, 1.0, 1.0);
  }
  const int levels = n.value_or(name == "chain" ? 3 : 4);
  if (levels < 2) throw ValidationError("demo: --n must be at least 2");
  std::vector<double> energies;
  for (int k = 0; k < levels; ++k) energies.push_back(k);
  // chain: shift the top level so the last transition frequency is unique
  if (name == "chain") energies.back() += 0.5;
  const std::vector<double> dipoles(static_cast<std::size_t>(levels - 1), 1.0);
  return build_chain(energies, dipoles);
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"qctrl: degree of controllability of finite-level Hamiltonian quantum systems", "qctrl"};
  app.require_subcommand(1);

  std::string file;
  TolFlags flags;
  bool as_json = false;
  bool as_text = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a JSON system document");
  analyze_cmd->add_option("file", file, "system document")->required();
  add_tol_options(analyze_cmd, flags);
  auto* json_flag = analyze_cmd->add_flag("--json", as_json, "JSON report (default)");
  analyze_cmd->add_flag("--text", as_text, "plain-text report")->excludes(json_flag);

  std::string demo_name;
  std::optional<int> demo_n;
  auto* demo_cmd = app.add_subcommand("demo", "analyze a built-in example system");
  demo_cmd->add_option("system", demo_name, "lambda | chain | uniform-chain")
      ->required()
      ->check(CLI::IsMember({"lambda", "chain", "uniform-chain"}));
  demo_cmd->add_option("--n", demo_n, "number of levels");
  add_tol_options(demo_cmd, flags);
  auto* demo_json = demo_cmd->add_flag("--json", as_json, "JSON report (default)");
  demo_cmd->add_flag("--text", as_text, "plain-text report")->excludes(demo_json);

  auto* closure_cmd = app.add_subcommand("closure", "print the dynamical Lie algebra dimension");
  closure_cmd->add_option("file", file, "system document")->required();
  add_tol_options(closure_cmd, flags);

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    Tolerances tol = env_defaults(env);
    if (*analyze_cmd || *closure_cmd) {
      const std::string text = read_file(file);
      HamiltonianSystem sys = decode_system(text, tol);
      apply_flags(sys.tol, flags);
      sys.validate();
      if (*closure_cmd) {
        const LieAlgebraBasis basis = lie_closure(sys.generators(), sys.tol);
        out << basis.dimension() << "\n";
      } else {
        emit_report(sys, text, as_text, out);
      }
    } else if (*demo_cmd) {
      HamiltonianSystem sys = demo_system(demo_name, demo_n);
      sys.tol = tol;
      apply_flags(sys.tol, flags);
      emit_report(sys, serialize_system(sys), as_text, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DimensionError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace qctrl::cli
