/** @file modular_data.hpp
 *  @brief Decategorified (pre)modular data: fusion ring, S and T.
 *
 *  S is stored unitary: S * conj(S)^T = 1 for nondegenerate data, with
 *  S_0i = d_i / D. Centralizer tests compare S_xa S_00 with S_x0 S_0a, which is
 *  the relation s~_xa = d_x d_a divided through by D^2.
 */
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <map>
#include <tuple>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/cyclotomic.hpp"
#include "strathom/metric_group.hpp"
#include "strathom/report.hpp"

namespace strathom {

struct FusionRingData {
  std::vector<std::string> labels;
  int unit = 0;
  std::vector<int> dual;
  std::vector<int> n;  ///< dense r^3 table, index (i*r + j)*r + k

  int rank() const { return static_cast<int>(labels.size()); }
  int N(int i, int j, int k) const { return n[(static_cast<std::size_t>(i) * rank() + j) * rank() + k]; }
  int& N(int i, int j, int k) { return n[(static_cast<std::size_t>(i) * rank() + j) * rank() + k]; }

  static FusionRingData empty(std::vector<std::string> labels) {
    FusionRingData f;
    int r = static_cast<int>(labels.size());
    f.labels = std::move(labels);
    f.dual.resize(r);
    for (int i = 0; i < r; ++i) f.dual[i] = i;
    f.n.assign(static_cast<std::size_t>(r) * r * r, 0);
    return f;
  }
  friend bool operator==(const FusionRingData&, const FusionRingData&) = default;
};

struct ModularData {
  FusionRingData ring;
  std::vector<Cyclotomic> S;  ///< r x r, row-major
  std::vector<RationalMod1> T;
  std::vector<Cyclotomic> dims;
  Cyclotomic global_dim2;

  int rank() const { return ring.rank(); }
  const Cyclotomic& s(int i, int j) const { return S[static_cast<std::size_t>(i) * rank() + j]; }
  Cyclotomic& s(int i, int j) { return S[static_cast<std::size_t>(i) * rank() + j]; }

  /// Recomputes dims and D^2 from the first row of S.
  void derive_dims() {
    int r = rank();
    dims.assign(r, Cyclotomic());
    global_dim2 = Cyclotomic();
    const Cyclotomic& s00 = s(0, 0);
    if (s00.is_zero()) throw DomainError("S_00 is zero");
    Cyclotomic inv = s00.inverse();
    for (int i = 0; i < r; ++i) {
      dims[i] = s(0, i) * inv;
      global_dim2 += dims[i] * dims[i];
    }
  }

  friend bool operator==(const ModularData& a, const ModularData& b) {
    return a.ring == b.ring && a.S == b.S && a.T == b.T;
  }
};

inline ModularData from_metric_group(const MetricGroup& mg) {
  std::vector<std::string> labels;
  for (int x = 0; x < mg.order(); ++x) labels.push_back(mg.group().element_str(x));
  ModularData md;
  md.ring = FusionRingData::empty(labels);
  const auto& g = mg.group();
  int r = mg.order();
  for (int x = 0; x < r; ++x) {
    md.ring.dual[x] = g.neg(x);
    for (int y = 0; y < r; ++y) md.ring.N(x, y, g.add(x, y)) = 1;
  }
  Cyclotomic norm = sqrt_int(r).inverse();
  md.S.resize(static_cast<std::size_t>(r) * r);
  std::map<Rational, Cyclotomic> phase;
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) {
      RationalMod1 b = mg.b(x, y);
      auto it = phase.find(b.value());
      if (it == phase.end()) it = phase.emplace(b.value(), root_of_unity(b) * norm).first;
      md.s(x, y) = it->second;
    }
  md.T = mg.q_table();
  md.derive_dims();
  return md;
}

/// Labels x with S_xa S_00 = S_x0 S_0a for every a in `a_set`.
inline std::vector<int> mueger_centralizer(const ModularData& md, const std::vector<int>& a_set) {
  std::vector<int> out;
  for (int x = 0; x < md.rank(); ++x) {
    bool ok = true;
    for (int a : a_set)
      if (md.s(x, a) * md.s(0, 0) != md.s(x, 0) * md.s(0, a)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

inline Report verify_modular_axioms(const ModularData& md, bool braided = true) {
  Report rep;
  int r = md.rank();
  const auto& f = md.ring;
  auto lab = [&](int i) { return f.labels[i]; };
  if (r == 0) {
    rep.fail("empty label set");
    return rep;
  }
  if (static_cast<int>(md.S.size()) != r * r || static_cast<int>(md.T.size()) != r) {
    rep.fail("S or T has the wrong size");
    return rep;
  }
  bool good = true;
  for (int i = 0; i < r && good; ++i)
    for (int k = 0; k < r && good; ++k) {
      int want = (i == k) ? 1 : 0;
      if (f.N(i, f.unit, k) != want || f.N(f.unit, i, k) != want) {
        rep.fail("unit law at (" + lab(i) + "," + lab(k) + ")");
        good = false;
      }
    }
  if (good) rep.pass("unit law");
  good = true;
  for (int i = 0; i < r && good; ++i) {
    if (f.dual[f.dual[i]] != i) {
      rep.fail("dual is not an involution at " + lab(i));
      good = false;
    } else if (f.N(i, f.dual[i], f.unit) != 1) {
      rep.fail("N(i, dual i, unit) != 1 at " + lab(i));
      good = false;
    }
  }
  if (good) rep.pass("duality");
  if (braided) {
    good = true;
    for (int i = 0; i < r && good; ++i)
      for (int j = 0; j < r && good; ++j)
        for (int k = 0; k < r && good; ++k)
          if (f.N(i, j, k) != f.N(j, i, k)) {
            rep.fail("fusion not commutative at (" + lab(i) + "," + lab(j) + "," + lab(k) + ")");
            good = false;
          }
    if (good) rep.pass("fusion commutative");
  }
  good = true;
  for (int i = 0; i < r && good; ++i)
    for (int j = 0; j < r && good; ++j)
      for (int l = 0; l < r && good; ++l)
        for (int m = 0; m < r && good; ++m) {
          long long lhs = 0, rhs = 0;
          for (int k = 0; k < r; ++k) {
            lhs += static_cast<long long>(f.N(i, j, k)) * f.N(k, l, m);
            rhs += static_cast<long long>(f.N(j, l, k)) * f.N(i, k, m);
          }
          if (lhs != rhs) {
            rep.fail("associativity at (" + lab(i) + "," + lab(j) + "," + lab(l) + "," + lab(m) + ")");
            good = false;
          }
        }
  if (good) rep.pass("associativity");
  good = true;
  for (int i = 0; i < r && good; ++i)
    for (int j = i + 1; j < r && good; ++j)
      if (md.s(i, j) != md.s(j, i)) {
        rep.fail("S not symmetric at (" + lab(i) + "," + lab(j) + ")");
        good = false;
      }
  if (good) rep.pass("S symmetric");
  good = true;
  for (int i = 0; i < r && good; ++i)
    for (int j = 0; j < r && good; ++j) {
      Cyclotomic acc;
      for (int k = 0; k < r; ++k) acc += md.s(i, k) * md.s(j, k).conj();
      if (acc != Cyclotomic(i == j ? 1 : 0)) {
        rep.fail("S not unitary at (" + lab(i) + "," + lab(j) + ")");
        good = false;
      }
    }
  if (good) rep.pass("S unitary");
  good = true;
  for (int i = 0; i < r && good; ++i)
    for (int j = 0; j < r && good; ++j)
      if (md.s(i, f.dual[j]) != md.s(i, j).conj()) {
        rep.fail("S(i, dual j) != conj S(i, j) at (" + lab(i) + "," + lab(j) + ")");
        good = false;
      }
  if (good) rep.pass("S duality");
  // dims from the first row must be a character of the fusion ring
  std::vector<Cyclotomic> d;
  if (md.s(0, 0).is_zero()) {
    rep.fail("S_00 is zero");
  } else {
    Cyclotomic inv = md.s(0, 0).inverse();
    for (int i = 0; i < r; ++i) d.push_back(md.s(0, i) * inv);
    good = true;
    for (int i = 0; i < r && good; ++i)
      for (int j = 0; j < r && good; ++j) {
        Cyclotomic acc;
        for (int k = 0; k < r; ++k)
          if (f.N(i, j, k)) acc += d[k].scaled(Rational(f.N(i, j, k)));
        if (acc != d[i] * d[j]) {
          rep.fail("first row of S is not proportional to dimensions at (" + lab(i) + "," + lab(j) + ")");
          good = false;
        }
      }
    if (good) rep.pass("first row proportional to dimensions");
    Cyclotomic dsum;
    for (const auto& x : d) dsum += x * x;
    if (dsum * md.s(0, 0) * md.s(0, 0) != Cyclotomic(1))
      rep.fail("S_00^2 * D^2 != 1");
    else
      rep.pass("normalization S_00 = 1/D");
  }
  good = true;
  for (int m = 0; m < r && good; ++m)
    if (md.s(0, m).is_zero()) {
      rep.fail("S_0m is zero at " + lab(m) + "; Verlinde formula undefined");
      good = false;
    }
  if (good) {
    std::vector<Cyclotomic> inv0(r);
    for (int m = 0; m < r; ++m) inv0[m] = md.s(0, m).inverse();
    for (int i = 0; i < r && good; ++i)
      for (int j = 0; j < r && good; ++j) {
        std::vector<Cyclotomic> w(r);
        for (int m = 0; m < r; ++m) w[m] = md.s(i, m) * md.s(j, m) * inv0[m];
        for (int k = 0; k < r && good; ++k) {
          Cyclotomic acc;
          for (int m = 0; m < r; ++m) acc += w[m] * md.s(k, m).conj();
          if (acc != Cyclotomic(f.N(i, j, k))) {
            rep.fail("Verlinde reconstruction at (" + lab(i) + "," + lab(j) + "," + lab(k) + ")");
            good = false;
          }
        }
      }
    if (good) rep.pass("Verlinde reconstruction");
  }
  good = true;
  if (!md.T[f.unit].is_zero()) {
    rep.fail("T at unit is not 1");
    good = false;
  }
  for (int i = 0; i < r && good; ++i)
    if (md.T[i] != md.T[f.dual[i]]) {
      rep.fail("T(i) != T(dual i) at " + lab(i));
      good = false;
    }
  if (good) rep.pass("T unit and duality");
  return rep;
}

inline ModularData deligne_product(const ModularData& a, const ModularData& b) {
  int ra = a.rank(), rb = b.rank(), r = ra * rb;
  std::vector<std::string> labels;
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rb; ++j) labels.push_back(a.ring.labels[i] + "|" + b.ring.labels[j]);
  ModularData md;
  md.ring = FusionRingData::empty(labels);
  md.ring.unit = a.ring.unit * rb + b.ring.unit;
  for (int x = 0; x < r; ++x) md.ring.dual[x] = a.ring.dual[x / rb] * rb + b.ring.dual[x % rb];
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int z = 0; z < r; ++z)
        md.ring.N(x, y, z) = a.ring.N(x / rb, y / rb, z / rb) * b.ring.N(x % rb, y % rb, z % rb);
  md.S.resize(static_cast<std::size_t>(r) * r);
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) md.s(x, y) = a.s(x / rb, y / rb) * b.s(x % rb, y % rb);
  for (int x = 0; x < r; ++x) md.T.push_back(a.T[x / rb] + b.T[x % rb]);
  md.derive_dims();
  return md;
}

inline ModularData conjugate(const ModularData& md) {
  ModularData out = md;
  for (auto& v : out.S) v = v.conj();
  for (auto& t : out.T) t = -t;
  out.derive_dims();
  return out;
}

/// Output of group-like condensation with the orbit bookkeeping.
struct GroupLikeCondensation {
  ModularData result;
  std::vector<std::vector<int>> orbits;  ///< result label -> sorted input labels
};

/// Condensation by the group-like algebra on the labels `a_set`.
inline GroupLikeCondensation condense_grouplike_with_orbits(const ModularData& md, const std::vector<int>& a_set) {
  const auto& f = md.ring;
  int r = md.rank();
  auto unsupported = [](const std::string& why) { return DomainError("unsupported condensation: " + why); };
  auto product = [&](int a, int x) {
    int found = -1, total = 0;
    for (int k = 0; k < r; ++k) {
      total += f.N(a, x, k);
      if (f.N(a, x, k)) found = k;
    }
    return total == 1 ? found : -1;
  };
  std::vector<char> in_a(r, 0);
  for (int a : a_set) {
    if (a < 0 || a >= r) throw unsupported("label out of range");
    in_a[a] = 1;
  }
  if (!in_a[f.unit]) throw unsupported("algebra must contain the unit");
  for (int a : a_set) {
    if (product(a, f.dual[a]) != f.unit) throw unsupported("non-invertible member " + f.labels[a]);
    if (!md.T[a].is_zero()) throw unsupported("member with nontrivial twist " + f.labels[a]);
    for (int b : a_set) {
      int ab = product(a, b);
      if (ab < 0 || !in_a[ab]) throw unsupported("members not closed under fusion");
      if (md.s(a, b) * md.s(0, 0) != md.s(a, 0) * md.s(0, b)) throw unsupported("members not mutually transparent");
    }
  }
  std::vector<int> local = mueger_centralizer(md, a_set);
  std::vector<int> orbit_of(r, -1);
  GroupLikeCondensation out;
  for (int x : local) {
    if (orbit_of[x] >= 0) continue;
    std::vector<int> orb;
    for (int a : a_set) orb.push_back(product(a, x));
    std::sort(orb.begin(), orb.end());
    orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
    if (orb.size() != a_set.size()) throw unsupported("orbit with a fixed point at " + f.labels[x]);
    for (int y : orb) orbit_of[y] = static_cast<int>(out.orbits.size());
    out.orbits.push_back(orb);
  }
  int rn = static_cast<int>(out.orbits.size());
  std::vector<std::string> labels;
  for (const auto& o : out.orbits) labels.push_back(f.labels[o[0]]);
  ModularData res;
  res.ring = FusionRingData::empty(labels);
  res.ring.unit = orbit_of[f.unit];
  for (int X = 0; X < rn; ++X) {
    int x = out.orbits[X][0];
    res.ring.dual[X] = orbit_of[f.dual[x]];
    for (int Y = 0; Y < rn; ++Y) {
      int y = out.orbits[Y][0];
      for (int Z = 0; Z < rn; ++Z) {
        int s = 0;
        for (int z : out.orbits[Z]) s += f.N(x, y, z);
        res.ring.N(X, Y, Z) = s;
      }
    }
  }
  // Rescale by D / D' where D'^2 sums the squared dimensions of the new labels.
  Cyclotomic inv00 = md.s(0, 0).inverse();
  Cyclotomic d2_old, d2_new;
  for (int i = 0; i < r; ++i) {
    Cyclotomic d = md.s(0, i) * inv00;
    d2_old += d * d;
  }
  for (int X = 0; X < rn; ++X) {
    Cyclotomic d = md.s(0, out.orbits[X][0]) * inv00;
    d2_new += d * d;
  }
  Cyclotomic ratio = d2_old / d2_new;
  if (!ratio.is_rational()) throw unsupported("non-rational dimension ratio");
  Cyclotomic scale = sqrt_rational(ratio.rational_value());
  res.S.resize(static_cast<std::size_t>(rn) * rn);
  for (int X = 0; X < rn; ++X)
    for (int Y = 0; Y < rn; ++Y) res.s(X, Y) = md.s(out.orbits[X][0], out.orbits[Y][0]) * scale;
  for (int X = 0; X < rn; ++X) res.T.push_back(md.T[out.orbits[X][0]]);
  res.derive_dims();
  out.result = std::move(res);
  return out;
}

inline ModularData condense_grouplike(const ModularData& md, const std::vector<int>& a_set) {
  return condense_grouplike_with_orbits(md, a_set).result;
}

/// First label bijection a -> b fixing the unit and preserving N, S and T, by backtracking.
inline std::optional<std::vector<int>> modular_isomorphism(const ModularData& a, const ModularData& b) {
  int r = a.rank();
  if (b.rank() != r) return std::nullopt;
  std::vector<int> p(r, -1);
  std::vector<char> used(r, 0);
  std::function<bool(int)> rec = [&](int i) {
    if (i == r) {
      for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y)
          for (int z = 0; z < r; ++z)
            if (a.ring.N(x, y, z) != b.ring.N(p[x], p[y], p[z])) return false;
      return true;
    }
    for (int j = 0; j < r; ++j) {
      if (used[j] || a.T[i] != b.T[j] || (i == a.ring.unit) != (j == b.ring.unit)) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = a.s(i, k) == b.s(j, p[k]);
      if (!ok || a.s(i, i) != b.s(j, j)) continue;
      p[i] = j;
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    p[i] = -1;
    return false;
  };
  if (rec(0)) return p;
  return std::nullopt;
}

/// Sum over labels of S_0i^(2 - 2g); throws unless it is a nonnegative integer.
inline std::int64_t verlinde_genus_dim(const ModularData& md, int genus) {
  if (genus < 0) throw DomainError("negative genus");
  Cyclotomic total;
  for (int i = 0; i < md.rank(); ++i) {
    const Cyclotomic& s0 = md.s(0, i);
    if (s0.is_zero()) throw DomainError("oracle inconsistency: S_0i vanishes");
    Cyclotomic base = (genus == 0) ? s0 : s0.inverse();
    int e = (genus == 0) ? 2 : 2 * genus - 2;
    Cyclotomic p(1);
    for (int t = 0; t < e; ++t) p *= base;
    total += p;
  }
  if (!total.is_rational()) throw DomainError("oracle inconsistency: non-rational Verlinde sum");
  Rational v = total.rational_value();
  if (!v.is_integer() || v < Rational(0)) throw DomainError("oracle inconsistency: Verlinde sum " + v.str());
  return v.num();
}

// ---- text format ----

inline std::string format_modular_data(const ModularData& md) {
  std::ostringstream os;
  int r = md.rank();
  os << "rank: " << r << '\n';
  os << "labels:";
  for (const auto& l : md.ring.labels) os << ' ' << l;
  os << '\n';
  os << "unit: " << md.ring.unit << '\n';
  os << "dual:";
  for (int d : md.ring.dual) os << ' ' << d;
  os << '\n';
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (md.ring.N(i, j, k)) os << "N: " << i << ' ' << j << ' ' << k << ' ' << md.ring.N(i, j, k) << '\n';
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) os << "S: " << i << ' ' << j << ' ' << md.s(i, j).str() << '\n';
  os << "T:";
  for (const auto& t : md.T) os << ' ' << t.str();
  os << '\n';
  return os.str();
}

inline ModularData parse_modular_data(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  int r = -1;
  ModularData md;
  std::vector<std::string> labels;
  std::vector<int> dual;
  int unit = 0;
  std::vector<std::array<int, 4>> triples;
  std::vector<std::tuple<int, int, Cyclotomic>> s_entries;
  std::vector<RationalMod1> t;
  bool have_t = false;
  auto to_int = [](const std::string& tok) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw InputError("bad integer: " + tok);
      return v;
    } catch (const std::logic_error&) {
      throw InputError("bad integer: " + tok);
    }
  };
  for (const auto& raw : lines) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InputError("expected 'key: value' line: " + line);
    std::string key = line.substr(0, colon);
    std::istringstream is(line.substr(colon + 1));
    std::vector<std::string> toks;
    std::string tok;
    while (is >> tok) toks.push_back(tok);
    if (key == "rank") {
      if (toks.size() != 1) throw InputError("rank line needs one value");
      r = to_int(toks[0]);
      if (r <= 0) throw InputError("rank must be positive");
    } else if (key == "labels") {
      labels = toks;
    } else if (key == "unit") {
      if (toks.size() != 1) throw InputError("unit line needs one value");
      unit = to_int(toks[0]);
    } else if (key == "dual") {
      for (const auto& x : toks) dual.push_back(to_int(x));
    } else if (key == "N") {
      if (toks.size() != 4) throw InputError("N line needs i j k n");
      triples.push_back({to_int(toks[0]), to_int(toks[1]), to_int(toks[2]), to_int(toks[3])});
    } else if (key == "S") {
      if (toks.size() != 3) throw InputError("S line needs i j value");
      s_entries.emplace_back(to_int(toks[0]), to_int(toks[1]), Cyclotomic::parse(toks[2]));
    } else if (key == "T") {
      for (const auto& x : toks) t.push_back(RationalMod1::parse(x));
      have_t = true;
    } else {
      throw InputError("unknown key: " + key);
    }
  }
  if (r < 0) throw InputError("missing rank line");
  if (static_cast<int>(labels.size()) != r) throw InputError("label count does not match rank");
  if (static_cast<int>(dual.size()) != r) throw InputError("dual permutation length does not match rank");
  if (!have_t || static_cast<int>(t.size()) != r) throw InputError("T line length does not match rank");
  if (unit != 0) throw InputError("the unit must be label 0");
  md.ring = FusionRingData::empty(labels);
  md.ring.unit = unit;
  for (int i = 0; i < r; ++i) {
    if (dual[i] < 0 || dual[i] >= r) throw InputError("dual entry out of range");
    md.ring.dual[i] = dual[i];
  }
  for (const auto& tr : triples) {
    for (int c = 0; c < 3; ++c)
      if (tr[c] < 0 || tr[c] >= r) throw InputError("N index out of range");
    if (tr[3] < 0) throw InputError("negative fusion coefficient");
    md.ring.N(tr[0], tr[1], tr[2]) = tr[3];
  }
  md.S.assign(static_cast<std::size_t>(r) * r, Cyclotomic());
  std::vector<char> seen(static_cast<std::size_t>(r) * r, 0);
  for (const auto& [i, j, v] : s_entries) {
    if (i < 0 || j < 0 || i >= r || j >= r) throw InputError("S index out of range");
    if (seen[static_cast<std::size_t>(i) * r + j]) throw InputError("duplicate S entry");
    seen[static_cast<std::size_t>(i) * r + j] = 1;
    md.s(i, j) = v;
  }
  for (char c : seen)
    if (!c) throw InputError("missing S entries");
  md.T = t;
  if (md.s(0, 0).is_zero()) throw InputError("S_00 must be nonzero");
  md.derive_dims();
  return md;
}

}  // namespace strathom
