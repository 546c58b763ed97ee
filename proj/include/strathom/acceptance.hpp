#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "strathom/anomaly.hpp"
#include "strathom/braided_module.hpp"
#include "strathom/center.hpp"
#include "strathom/library_md.hpp"
#include "strathom/library_metric.hpp"
#include "strathom/modular_data.hpp"
#include "strathom/modular_extension.hpp"
#include "strathom/random_surface.hpp"
#include "strathom/reduction.hpp"

namespace strathom::cli {
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}

namespace strathom {

inline constexpr int kCriteria = 9;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// One line per criterion; contains no timings so that output is reproducible.
inline std::string format_criterion(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.title + ": " + r.detail;
}

namespace acceptance {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

inline MextClassification classify_base(const std::string& base, int threads) {
  MetricGroup e = base_by_name(base);
  return enumerate_mext(e, e, identity_embedding(e), threads);
}

inline CriterionResult mext_group(int threads) {
  CriterionResult r{1, "modular-extension group", true, ""};
  for (const std::string base : {"rep-z2", "svec"}) {
    auto t0 = Clock::now();
    MextClassification m = classify_base(base, threads);
    double dt = seconds_since(t0);
    int n = static_cast<int>(m.classes.size());
    int order = m.has_table ? max_element_order(m.table, m.unit_class) : 0;
    bool ok = n == 8 && (base == "svec" || order == 8) && dt < 60;
    r.pass = r.pass && ok;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += base + " " + std::to_string(n) + " classes";
    if (base == "rep-z2") r.detail += ", largest element order " + std::to_string(order);
    if (dt >= 60) r.detail += ", over 60 s";
  }
  return r;
}

inline CriterionResult group_axioms(int threads) {
  CriterionResult r{2, "group axioms", true, ""};
  for (const std::string base : {"rep-z2", "svec"}) {
    MextClassification m = classify_base(base, threads);
    Report g = check_group_table(m.table, m.unit_class, m.inverse_class);
    r.pass = r.pass && g.ok;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += base + (g.ok ? " table is an abelian group" : " fails: " + std::to_string(g.failures()) + " checks");
  }
  return r;
}

inline CriterionResult center_functoriality() {
  CriterionResult r{3, "center functoriality", true, ""};
  auto t0 = Clock::now();
  int pairs = 0, bad = 0;
  for (const auto& base : base_names()) {
    auto lib = fusion_library(base);
    for (const auto& c : lib)
      for (const auto& d : lib) {
        ++pairs;
        if (!check_center_monoidal(c, d).ok) {
          ++bad;
          if (bad == 1) r.detail += "first failure " + c.name + " x " + d.name + " over " + base + "; ";
        }
      }
  }
  double dt = seconds_since(t0);
  r.pass = bad == 0 && dt < 30;
  r.detail += std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " pairs with an isometry witness";
  if (dt >= 30) r.detail += ", over 30 s";
  return r;
}

inline CriterionResult morita() {
  CriterionResult r{4, "Morita criterion", false, ""};
  bool same = morita_test(fusion_over_e("vec-z2", "trivial"), fusion_over_e("vec-z2", "trivial")).ok;
  bool diff = morita_test(fusion_over_e("vec-z2", "trivial"), fusion_over_e("vec-z3", "trivial")).ok;
  r.pass = same && !diff;
  r.detail = std::string("Z2~Z2 ") + (same ? "equivalent" : "not equivalent") + ", Z2~Z3 " + (diff ? "equivalent" : "not equivalent");
  return r;
}

inline CriterionResult coherence() {
  CriterionResult r{5, "coherence derivation", true, ""};
  std::mt19937 rng(5);
  MetricGroup e = metric_group_by_name("rep-z2");
  MetricGroup tc = metric_group_by_name("toric-code");
  auto embs = all_isometric_embeddings(e, tc);
  int derived = 0, witnessed = 0, perturbations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BraidedEModule m = random_additive_module(e, tc, embs[trial % embs.size()], rng);
    AxiomReport a = check_braided_module_axioms(m);
    if (a.defining_ok && a.derived_ok) ++derived;
    for (int side = 0; side < 2; ++side)
      for (int x = 0; x < tc.order(); ++x)
        for (int k = 0; k < e.order(); ++k) {
          BraidedEModule p = m;
          RationalMod1 delta(1 + trial % 3, 4);
          if (side == 0)
            p.t1(k, x) += delta;
          else
            p.t2(x, k) += delta;
          ++perturbations;
          if (!check_braided_module_axioms(p).failures.empty()) ++witnessed;
        }
  }
  r.pass = derived == 100 && witnessed == perturbations;
  r.detail = std::to_string(derived) + "/100 tables satisfy the derived identities, " + std::to_string(witnessed) + "/" +
             std::to_string(perturbations) + " perturbations witnessed";
  return r;
}

inline CriterionResult condensation() {
  CriterionResult r{6, "condensation consistency", true, ""};
  int cases = 0, agree = 0;
  for (const auto& n : metric_group_names()) {
    MetricGroup mg = metric_group_by_name(n);
    for (const auto& h : isotropic_subgroups(mg)) {
      ++cases;
      try {
        ModularData a = from_metric_group(condense(mg, h));
        ModularData b = condense_grouplike(from_metric_group(mg), std::vector<int>(h.begin(), h.end()));
        if (modular_isomorphism(a, b))
          ++agree;
        else if (r.pass)
          r.detail += "mismatch on " + n + "; ";
      } catch (const DomainError& e) {
        if (r.pass) r.detail += n + ": " + e.what() + "; ";
      }
      r.pass = agree == cases;
    }
  }
  r.detail += std::to_string(agree) + "/" + std::to_string(cases) + " (group, isotropic subgroup) cases agree";
  return r;
}

inline CriterionResult verlinde() {
  CriterionResult r{7, "surface evaluation vs Verlinde", true, ""};
  auto t0 = Clock::now();
  struct Case {
    std::string face;
    int g;
    std::int64_t want;
  };
  for (const Case& c : {Case{"toric-code", 0, 1}, Case{"toric-code", 1, 4}, Case{"toric-code", 2, 16}, Case{"semion", 1, 2}}) {
    std::int64_t got = evaluate(unstratified_surface("trivial", make_atom(c.face), c.g)).gsd_unit;
    std::int64_t oracle = verlinde_genus_dim(*builtin_modular_data(c.face), c.g);
    r.pass = r.pass && got == c.want && got == oracle;
    if (!r.detail.empty()) r.detail += ", ";
    r.detail += c.face + " g=" + std::to_string(c.g) + " gsd " + std::to_string(got) + " (Verlinde " + std::to_string(oracle) + ")";
  }
  if (seconds_since(t0) >= 10) {
    r.pass = false;
    r.detail += ", over 10 s";
  }
  return r;
}

inline CriterionResult move_invariance() {
  CriterionResult r{8, "move invariance", true, ""};
  std::mt19937_64 rng(8);
  int unchanged = 0, closed = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    StratifiedSurface s = random_sphere(rng, 7);
    EvaluationResult before = evaluate(s);
    std::string what;
    StratifiedSurface after = random_move(s, rng, what);
    bool ok_before = check_anomaly_free(s).ok;
    bool ok_after = check_anomaly_free(after).ok;
    if (ok_before && ok_after) ++closed;
    if (evaluate(after) == before) ++unchanged;
  }
  r.pass = unchanged == trials && closed == trials;
  r.detail = std::to_string(unchanged) + "/" + std::to_string(trials) + " moves leave the evaluation unchanged, " +
             std::to_string(closed) + "/" + std::to_string(trials) + " stay anomaly-free";
  return r;
}

inline std::string capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

inline CriterionResult determinism() {
  CriterionResult r{9, "determinism", true, ""};
  std::mt19937_64 rng(9);
  std::vector<std::string> texts = {format_surface(unstratified_surface("trivial", make_atom("toric-code"), 2)),
                                    format_surface(random_sphere(rng, 12)), format_surface(random_sphere(rng, 16))};
  auto dir = std::filesystem::temp_directory_path() / ("strathom-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  int runs = 0, same = 0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    auto path = (dir / ("s" + std::to_string(i) + ".surf")).string();
    std::ofstream(path) << texts[i];
    for (const auto& cmd : {std::vector<std::string>{"reduce", path, "--trace"}, std::vector<std::string>{"evaluate", path}}) {
      std::string ref;
      for (const char* th : {"1", "1", "4", "8"}) {
        std::vector<std::string> args = {"--threads", th};
        args.insert(args.end(), cmd.begin(), cmd.end());
        std::string got = capture(args);
        if (ref.empty()) ref = got;
        ++runs;
        if (got == ref && got[0] == '0') ++same;
      }
    }
  }
  std::string ref = capture({"--threads", "1", "mext", "--base", "svec"});
  for (const char* th : {"1", "4"}) {
    ++runs;
    if (capture({"--threads", th, "mext", "--base", "svec"}) == ref) ++same;
  }
  std::filesystem::remove_all(dir);
  r.pass = same == runs;
  r.detail = std::to_string(same) + "/" + std::to_string(runs) + " runs byte-identical to the first";
  return r;
}

}  // namespace acceptance

inline CriterionResult run_criterion(int id, int threads = 1) {
  try {
    switch (id) {
      case 1: return acceptance::mext_group(threads);
      case 2: return acceptance::group_axioms(threads);
      case 3: return acceptance::center_functoriality();
      case 4: return acceptance::morita();
      case 5: return acceptance::coherence();
      case 6: return acceptance::condensation();
      case 7: return acceptance::verlinde();
      case 8: return acceptance::move_invariance();
      case 9: return acceptance::determinism();
    }
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  throw InputError("no criterion " + std::to_string(id));
}

}  // namespace strathom

#include "strathom/cli.hpp"
