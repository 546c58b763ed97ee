#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strathom/library_metric.hpp"
#include "strathom/modular_data.hpp"

namespace strathom {

namespace detail {

inline ModularData ising_data() {
  ModularData md;
  md.ring = FusionRingData::empty({"1", "sigma", "psi"});
  auto& f = md.ring;
  for (int i = 0; i < 3; ++i) {
    f.N(0, i, i) = 1;
    f.N(i, 0, i) = 1;
  }
  f.N(1, 1, 0) = 1;
  f.N(1, 1, 2) = 1;
  f.N(1, 2, 1) = 1;
  f.N(2, 1, 1) = 1;
  f.N(2, 2, 0) = 1;
  Cyclotomic half(Rational(1, 2));
  Cyclotomic r2 = sqrt_int(2) * half;
  md.S = {half, r2, half, r2, Cyclotomic(), -r2, half, -r2, half};
  md.T = {RationalMod1(0, 1), RationalMod1(1, 16), RationalMod1(1, 2)};
  md.derive_dims();
  return md;
}

inline ModularData fibonacci_data() {
  ModularData md;
  md.ring = FusionRingData::empty({"1", "tau"});
  auto& f = md.ring;
  f.N(0, 0, 0) = 1;
  f.N(0, 1, 1) = 1;
  f.N(1, 0, 1) = 1;
  f.N(1, 1, 0) = 1;
  f.N(1, 1, 1) = 1;
  Cyclotomic phi = (Cyclotomic(1) + sqrt_int(5)).scaled(Rational(1, 2));
  // D = 2 sin(2 pi / 5) = zeta20^19 - zeta20^11
  Cyclotomic dim = Cyclotomic::zeta(20, 19) - Cyclotomic::zeta(20, 11);
  Cyclotomic inv = dim.inverse();
  md.S = {inv, phi * inv, phi * inv, -inv};
  md.T = {RationalMod1(0, 1), RationalMod1(2, 5)};
  md.derive_dims();
  return md;
}

}  // namespace detail

/// Static modular data entries that are not metric groups.
inline const std::vector<std::string>& static_modular_names() {
  static const std::vector<std::string> names = {"ising", "fibonacci"};
  return names;
}

/// Modular data by library name: static entries, or the bridge of a built-in metric group.
inline std::optional<ModularData> builtin_modular_data(const std::string& name) {
  if (name == "ising") return detail::ising_data();
  if (name == "fibonacci") return detail::fibonacci_data();
  if (auto mg = builtin_metric_group(name)) return from_metric_group(*mg);
  return std::nullopt;
}

}  // namespace strathom
