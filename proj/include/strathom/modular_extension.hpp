#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "strathom/braided_module.hpp"
#include "strathom/errors.hpp"
#include "strathom/forms.hpp"
#include "strathom/report.hpp"

namespace strathom {

struct ModularExtension {
  MetricGroup base;
  MetricGroup inner;
  MetricEmbedding iotaE;  ///< E -> C
  MetricGroup m;
  MetricEmbedding iota;  ///< C -> M

  /// Composite E -> M.
  std::vector<int> base_map() const {
    std::vector<int> out(base.order());
    for (int e = 0; e < base.order(); ++e) out[e] = iota.map[iotaE.map[e]];
    return out;
  }
};

inline Report is_modular_extension(const ModularExtension& x) {
  Report r;
  std::string err = x.iotaE.validate();
  if (!err.empty()) r.fail("E -> C is not a metric embedding: " + err);
  err = x.iota.validate();
  if (!err.empty()) r.fail("C -> M is not a metric embedding: " + err);
  if (!r.ok) return r;
  if (is_nondegenerate(x.m))
    r.pass("M' = Vect");
  else
    r.fail("M' = Vect: radical has order " + std::to_string(radical(x.m).size()));
  Subgroup img_e;
  for (int e : x.base_map()) img_e.push_back(e);
  std::sort(img_e.begin(), img_e.end());
  img_e.erase(std::unique(img_e.begin(), img_e.end()), img_e.end());
  if (orthogonal_complement(x.m, img_e) == x.iota.image())
    r.pass("E-centralizer equals C");
  else
    r.fail("E-centralizer equals C: complement has order " +
           std::to_string(orthogonal_complement(x.m, img_e).size()) + ", C has order " +
           std::to_string(x.inner.order()));
  return r;
}

inline ModularExtension mext_unit(const MetricGroup& e) {
  require_symmetric(e);
  const auto& g = e.group();
  GroupIso iso = product_group(g, g);
  int n = e.order();
  std::vector<RationalMod1> q(iso.image.size());
  std::vector<int> where(iso.image.size());
  for (std::size_t k = 0; k < iso.image.size(); ++k) {
    int src = iso.image[k];
    int x = src / n, chi = src % n;
    std::vector<int> a = g.decode(x), c = g.decode(chi);
    RationalMod1 v = e.q(x);
    for (int i = 0; i < g.rank(); ++i) v += RationalMod1(static_cast<std::int64_t>(a[i]) * c[i], g.factors()[i]);
    q[k] = v;
    where[src] = static_cast<int>(k);
  }
  MetricGroup m(iso.group, std::move(q));
  std::vector<int> iota(n);
  for (int x = 0; x < n; ++x) iota[x] = where[x * n];
  return {e, e, identity_embedding(e), m, {e, m, iota}};
}

inline ModularExtension mext_inverse(const ModularExtension& a) {
  MetricGroup c = conjugate(a.inner);
  MetricGroup m = conjugate(a.m);
  MetricGroup e = conjugate(a.base);
  return {e, c, {e, c, a.iotaE.map}, m, {c, m, a.iota.map}};
}

/// M (.)_E N with inner C (.)_E D and the induced embeddings.
inline ModularExtension mext_mul(const ModularExtension& a, const ModularExtension& b) {
  if (a.base != b.base) throw DomainError("base mismatch");
  const MetricGroup& e = a.base;
  RelativeTensor outer = relative_tensor_with_maps(double_braiding_module(e, a.m, a.base_map()),
                                                   double_braiding_module(e, b.m, b.base_map()));
  RelativeTensor inner = relative_tensor_with_maps(double_braiding_module(e, a.inner, a.iotaE.map),
                                                   double_braiding_module(e, b.inner, b.iotaE.map));
  const MetricGroup& cm = inner.module.carrier;
  const MetricGroup& mm = outer.module.carrier;
  std::vector<int> iota(cm.order(), -1);
  for (int s : inner.local) {
    auto [c, d] = inner.sum.parts[s];
    int t = outer.sum.sum.group().add(outer.sum.inl[a.iota.map[c]], outer.sum.inr[b.iota.map[d]]);
    int k = outer.cls[t];
    if (k < 0) throw DomainError("inner product is not local in the outer product");
    iota[inner.cls[s]] = k;
  }
  return {e, cm, {e, cm, inner.module.embed}, mm, {cm, mm, iota}};
}

/// Isometries of C fixing the image of E pointwise.
inline std::vector<std::vector<int>> inner_automorphisms(const MetricGroup& c, const MetricEmbedding& iota_e) {
  std::vector<std::pair<int, int>> fixed;
  for (int x : iota_e.map) fixed.emplace_back(x, x);
  std::vector<std::vector<int>> out;
  for_each_isometric_embedding(c, c, fixed, [&](const std::vector<int>& m) {
    out.push_back(m);
    return false;
  });
  return out;
}

/// Extensions of the same (E, C): isometry phi with phi o iota = iota' o alpha,
/// alpha an isometry of C fixing E.
inline bool mext_equivalent(const ModularExtension& a, const ModularExtension& b,
                            const std::vector<std::vector<int>>& autos) {
  if (a.m.group().factors() != b.m.group().factors()) return false;
  for (const auto& alpha : autos) {
    std::vector<std::pair<int, int>> fixed;
    for (int c = 0; c < a.inner.order(); ++c) fixed.emplace_back(a.iota.map[c], b.iota.map[alpha[c]]);
    if (isometry_exists(a.m, b.m, fixed)) return true;
  }
  return false;
}

/// Equivalence of extensions of E compared through E -> M only; used for
/// products whose inner category is E (.)_E E rather than E itself.
inline bool mext_equivalent_over_base(const ModularExtension& a, const ModularExtension& b) {
  if (a.base != b.base) return false;
  std::vector<int> ma = a.base_map(), mb = b.base_map();
  std::vector<std::pair<int, int>> fixed;
  for (int e = 0; e < a.base.order(); ++e) fixed.emplace_back(ma[e], mb[e]);
  return isometry_exists(a.m, b.m, fixed).has_value();
}

/// Normalized Gauss phase gauss(M)/sqrt|M|.
inline Cyclotomic gauss_character(const MetricGroup& m) {
  return (gauss_sum(m) * sqrt_int(m.order()).inverse()).normalized();
}

inline int max_search_order() {
  if (const char* v = std::getenv("STRATHOM_MAX_ORDER")) {
    try {
      int n = std::stoi(v);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("invalid STRATHOM_MAX_ORDER: ") + v);
  }
  return 64;
}

struct MextClassification {
  std::vector<ModularExtension> classes;
  std::size_t candidates = 0;
  bool has_table = false;       ///< products only close up when C = E
  std::vector<std::vector<int>> table;
  int unit_class = -1;
  std::vector<int> inverse_class;
};

namespace detail {

inline auto candidate_key(const ModularExtension& x) {
  return std::make_tuple(x.m.group().factors(), x.m.q_table(), x.iota.map);
}

inline int find_class(const std::vector<ModularExtension>& reps, const ModularExtension& x) {
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (mext_equivalent_over_base(reps[i], x)) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

/// Brute force over all metric groups of order |E||C| and all embeddings of C.
inline MextClassification enumerate_mext(const MetricGroup& e, const MetricGroup& c, const MetricEmbedding& iota_e,
                                         int threads = 1) {
  require_symmetric(e);
  std::string err = iota_e.validate();
  if (!err.empty()) throw DomainError("invalid embedding of E: " + err);
  int order = e.order() * c.order();
  int bound = max_search_order();
  if (order > bound)
    throw BoundExceeded("search order " + std::to_string(order) + " exceeds bound " + std::to_string(bound));

  std::vector<MetricGroup> forms;
  for (const auto& g : abelian_groups_of_order(order))
    for_each_quadratic_form(g, [&](const MetricGroup& m) {
      if (is_nondegenerate(m)) forms.push_back(m);
    });

  std::vector<std::vector<ModularExtension>> found(forms.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < forms.size(); i += step)
      for (const auto& map : all_isometric_embeddings(c, forms[i])) {
        ModularExtension x{e, c, iota_e, forms[i], {c, forms[i], map}};
        if (is_modular_extension(x).ok) found[i].push_back(std::move(x));
      }
  };
  std::size_t nt = static_cast<std::size_t>(std::max(1, threads));
  if (nt == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& t : pool) t.join();
  }

  std::vector<ModularExtension> all;
  for (auto& v : found)
    for (auto& x : v) all.push_back(std::move(x));
  std::sort(all.begin(), all.end(), [](const ModularExtension& a, const ModularExtension& b) {
    return detail::candidate_key(a) < detail::candidate_key(b);
  });

  MextClassification out;
  out.candidates = all.size();
  auto autos = inner_automorphisms(c, iota_e);
  for (const auto& x : all) {
    bool known = false;
    for (const auto& r : out.classes)
      if (mext_equivalent(r, x, autos)) {
        known = true;
        break;
      }
    if (!known) out.classes.push_back(x);
  }

  if (c == e && iota_e.map == identity_embedding(e).map) {
    out.has_table = true;
    std::size_t n = out.classes.size();
    out.table.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.table[i][j] = detail::find_class(out.classes, mext_mul(out.classes[i], out.classes[j]));
    out.unit_class = detail::find_class(out.classes, mext_unit(e));
    for (const auto& x : out.classes) out.inverse_class.push_back(detail::find_class(out.classes, mext_inverse(x)));
  }
  return out;
}

/// Group axioms of a Cayley table with the given unit and inverses.
inline Report check_group_table(const std::vector<std::vector<int>>& t, int unit, const std::vector<int>& inverse) {
  Report r;
  int n = static_cast<int>(t.size());
  bool closed = true;
  for (const auto& row : t)
    for (int v : row)
      if (v < 0 || v >= n) closed = false;
  if (!closed) {
    r.fail("closure: a product lies outside the enumerated classes");
    return r;
  }
  bool perm = true;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row = t[i];
    std::sort(row.begin(), row.end());
    for (int k = 0; k < n; ++k)
      if (row[k] != k) perm = false;
  }
  perm ? r.pass("rows are permutations") : r.fail("rows are permutations");
  bool assoc = true;
  for (int a = 0; a < n && assoc; ++a)
    for (int b = 0; b < n && assoc; ++b)
      for (int c = 0; c < n && assoc; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) {
          assoc = false;
          r.fail("associativity at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
  if (assoc) r.pass("associativity");
  bool comm = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t[a][b] != t[b][a]) comm = false;
  comm ? r.pass("commutativity") : r.fail("commutativity");
  bool unital = unit >= 0 && unit < n;
  for (int a = 0; a < n && unital; ++a)
    if (t[unit][a] != a || t[a][unit] != a) unital = false;
  unital ? r.pass("unit class " + std::to_string(unit)) : r.fail("unit class");
  bool inv = static_cast<int>(inverse.size()) == n && unital;
  for (int a = 0; a < n && inv; ++a)
    if (inverse[a] < 0 || t[a][inverse[a]] != unit) inv = false;
  inv ? r.pass("inverse classes") : r.fail("inverse classes");
  return r;
}

/// Largest order of an element in the Cayley table.
inline int max_element_order(const std::vector<std::vector<int>>& t, int unit) {
  int best = 0;
  for (int a = 0; a < static_cast<int>(t.size()); ++a) {
    int x = a, k = 1;
    while (x != unit && k <= static_cast<int>(t.size())) {
      x = t[x][a];
      ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

inline std::string format_mext(const MextClassification& r) {
  std::ostringstream os;
  os << "classes: " << r.classes.size() << '\n';
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& x = r.classes[i];
    os << "class " << i << '\n' << format_metric_group(x.m) << format_embedding_line(x.iota);
    os << "gauss: " << gauss_character(x.m).str() << '\n';
  }
  if (r.has_table) {
    os << "unit: " << r.unit_class << '\n';
    os << "table:\n";
    for (const auto& row : r.table) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace strathom
