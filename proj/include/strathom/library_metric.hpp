#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strathom/forms.hpp"
#include "strathom/metric_group.hpp"

namespace strathom {

namespace detail {

inline MetricGroup cyclic_form(int n, const RationalMod1& q1) {
  FiniteAbelianGroup g({n});
  return form_from_generator_data(g, {q1}, {{RationalMod1()}});
}

inline MetricGroup z2z2_form(const RationalMod1& q1, const RationalMod1& q2, const RationalMod1& b12) {
  FiniteAbelianGroup g({2, 2});
  return form_from_generator_data(g, {q1, q2}, {{RationalMod1(), b12}, {RationalMod1(), RationalMod1()}});
}

}  // namespace detail

/// Names of the built-in metric groups, in listing order.
inline const std::vector<std::string>& metric_group_names() {
  static const std::vector<std::string> names = {"trivial",      "rep-z2",  "svec",   "toric-code",    "double-semion",
                                                 "three-fermion", "semion", "anti-semion", "z4-1", "z4-3", "z4-5", "z4-7"};
  return names;
}

/// Built-in metric group by name. In toric-code e = (1,0), m = (0,1); in
/// double-semion s = (1,0), sbar = (0,1).
inline std::optional<MetricGroup> builtin_metric_group(const std::string& name) {
  using detail::cyclic_form;
  using detail::z2z2_form;
  if (name == "trivial") return trivial_metric_group();
  if (name == "rep-z2") return cyclic_form(2, RationalMod1(0, 1));
  if (name == "svec") return cyclic_form(2, RationalMod1(1, 2));
  if (name == "semion") return cyclic_form(2, RationalMod1(1, 4));
  if (name == "anti-semion") return cyclic_form(2, RationalMod1(3, 4));
  if (name == "toric-code") return z2z2_form(RationalMod1(0, 1), RationalMod1(0, 1), RationalMod1(1, 2));
  if (name == "double-semion") return z2z2_form(RationalMod1(1, 4), RationalMod1(3, 4), RationalMod1(0, 1));
  if (name == "three-fermion") return z2z2_form(RationalMod1(1, 2), RationalMod1(1, 2), RationalMod1(1, 2));
  for (int k : {1, 3, 5, 7})
    if (name == "z4-" + std::to_string(k)) return cyclic_form(4, RationalMod1(k, 8));
  return std::nullopt;
}

inline MetricGroup metric_group_by_name(const std::string& name) {
  auto mg = builtin_metric_group(name);
  if (!mg) throw InputError("unknown metric group: " + name);
  return *mg;
}

/// Symmetric bases accepted by --base.
inline const std::vector<std::string>& base_names() {
  static const std::vector<std::string> names = {"trivial", "rep-z2", "svec"};
  return names;
}

inline MetricGroup base_by_name(const std::string& name) {
  MetricGroup e = metric_group_by_name(name);
  if (classify_symmetric(e) == SymmetricKind::NotSymmetric) throw InputError("base is not symmetric: " + name);
  return e;
}

}  // namespace strathom
