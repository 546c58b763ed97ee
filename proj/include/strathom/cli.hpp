#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/acceptance.hpp"
#include "strathom/anomaly.hpp"
#include "strathom/backend.hpp"
#include "strathom/center.hpp"
#include "strathom/errors.hpp"
#include "strathom/library_md.hpp"
#include "strathom/library_metric.hpp"
#include "strathom/modular_data.hpp"
#include "strathom/modular_extension.hpp"
#include "strathom/reduction.hpp"
#include "strathom/surface.hpp"

namespace strathom::cli {

enum ExitCode { kOk = 0, kFailure = 1, kInputError = 2, kBoundExceeded = 3 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline int library_list(std::ostream& out) {
  for (const auto& n : metric_group_names()) out << "metric " << n << "\n";
  for (const auto& n : static_modular_names()) out << "modular " << n << "\n";
  for (const auto& n : fusion_names()) out << "fusion " << n << "\n";
  for (const auto& n : base_names()) out << "base " << n << "\n";
  return kOk;
}

inline int library_show(const std::string& name, std::ostream& out) {
  if (auto mg = builtin_metric_group(name)) {
    out << format_metric_group(*mg);
    return kOk;
  }
  for (const auto& n : static_modular_names())
    if (n == name) {
      out << format_modular_data(*builtin_modular_data(n));
      return kOk;
    }
  throw InputError("unknown library entry: " + name);
}

inline int mext_command(const std::string& base, const std::string& inner_name, int threads, std::ostream& out) {
  MetricGroup e = base_by_name(base);
  std::string inner = inner_name.empty() ? base : inner_name;
  MetricGroup c = metric_group_by_name(inner);
  MetricEmbedding iota{e, c, inner == base ? identity_embedding(e).map : Backend(base).default_embedding(c, inner)};
  out << format_mext(enumerate_mext(e, c, iota, threads));
  return kOk;
}

inline int reduce_command(const std::string& path, bool trace, std::ostream& out) {
  StratifiedSurface s = parse_surface(read_file(path));
  Report v = validate_surface(s);
  if (!v.ok) {
    out << v.str();
    return kFailure;
  }
  std::vector<std::string> log;
  ReduceOptions opt;
  if (trace) opt.trace = &log;
  while (genus(s) > 0) s = reduce_genus(s, opt);
  s = reduce_to_points(s, opt);
  for (const auto& l : log) out << l << "\n";
  out << format_surface(s);
  return kOk;
}

/// Runs one command line (without the program name). Output is deterministic.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pointed braided fusion categories over a symmetric base, and stratified surfaces.", "strathom"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for searches")->check(CLI::PositiveNumber);

  auto* library = app.add_subcommand("library", "browse built-in categories");
  library->require_subcommand(1);
  library->add_subcommand("list", "list names");
  std::string show_name;
  library->add_subcommand("show", "print one entry")->add_option("name", show_name)->required();

  std::string file;
  auto* verify = app.add_subcommand("verify-md", "check modular data axioms");
  verify->add_option("file", file)->required();

  std::string base, inner, cat;
  auto* mext = app.add_subcommand("mext", "enumerate modular extensions");
  mext->add_option("--base", base)->required();
  mext->add_option("--inner", inner);

  auto* center = app.add_subcommand("center", "center of a pointed fusion category over E");
  center->add_option("--cat", cat)->required();
  center->add_option("--base", base)->required();

  auto* validate = app.add_subcommand("validate", "check a surface file");
  validate->add_option("file", file)->required();
  auto* anomaly = app.add_subcommand("anomaly-check", "closedness checks for a surface file");
  anomaly->add_option("file", file)->required();
  bool trace = false;
  auto* reduce = app.add_subcommand("reduce", "reduce a surface to one vertex");
  reduce->add_option("file", file)->required();
  reduce->add_flag("--trace", trace, "print the move log");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a surface file");
  evaluate_cmd->add_option("file", file)->required();
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kInputError;
  }

  try {
    if (library->parsed()) {
      if (library->got_subcommand("list")) return library_list(out);
      return library_show(show_name, out);
    }
    if (verify->parsed()) {
      Report r = verify_modular_axioms(parse_modular_data(read_file(file)));
      out << r.str();
      return r.ok ? kOk : kFailure;
    }
    if (mext->parsed()) return mext_command(base, inner, threads, out);
    if (center->parsed()) {
      out << format_center(center_over_e(fusion_over_e(cat, base)));
      return kOk;
    }
    if (validate->parsed() || anomaly->parsed()) {
      StratifiedSurface s = parse_surface(read_file(file));
      Report r = validate->parsed() ? validate_surface(s) : check_anomaly_free(s);
      out << r.str();
      return r.ok ? kOk : kFailure;
    }
    if (reduce->parsed()) return reduce_command(file, trace, out);
    if (evaluate_cmd->parsed()) {
      out << format_evaluation(evaluate(parse_surface(read_file(file))));
      return kOk;
    }
    if (selftest->parsed()) {
      bool ok = true;
      for (int id = 1; id <= kCriteria; ++id) {
        CriterionResult r = run_criterion(id, threads);
        out << format_criterion(r) << "\n";
        ok = ok && r.pass;
      }
      return ok ? kOk : kFailure;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kBoundExceeded;
  } catch (const SymbolicResidue& e) {
    err << e.what() << "\n";
    return kFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  err << app.help();
  return kInputError;
}

}  // namespace strathom::cli
