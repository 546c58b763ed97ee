#pragma once

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/metric_group.hpp"
#include "strathom/report.hpp"

namespace strathom {

/// Pointed braided E-module: carrier C with E acting through `embed`, and the
/// two halves of the E-module braiding as phase tables.
struct BraidedEModule {
  MetricGroup base;
  MetricGroup carrier;
  std::vector<int> embed;          ///< E element -> C element
  std::vector<RationalMod1> tau1;  ///< index e * |C| + x
  std::vector<RationalMod1> tau2;  ///< index x * |E| + e

  const RationalMod1& t1(int e, int x) const { return tau1[static_cast<std::size_t>(e) * carrier.order() + x]; }
  RationalMod1& t1(int e, int x) { return tau1[static_cast<std::size_t>(e) * carrier.order() + x]; }
  const RationalMod1& t2(int x, int e) const { return tau2[static_cast<std::size_t>(x) * base.order() + e]; }
  RationalMod1& t2(int x, int e) { return tau2[static_cast<std::size_t>(x) * base.order() + e]; }
  RationalMod1 tau(int e, int x) const { return t1(e, x) + t2(x, e); }

  MetricEmbedding embedding() const { return {base, carrier, embed}; }
};

inline void require_symmetric(const MetricGroup& e) {
  if (classify_symmetric(e) == SymmetricKind::NotSymmetric) throw DomainError("base not symmetric");
}

inline BraidedEModule double_braiding_module(const MetricGroup& e, const MetricGroup& c, const std::vector<int>& embed) {
  require_symmetric(e);
  MetricEmbedding emb{e, c, embed};
  std::string err = emb.validate();
  if (!err.empty()) throw DomainError("invalid embedding: " + err);
  BraidedEModule m{e, c, embed, std::vector<RationalMod1>(static_cast<std::size_t>(e.order()) * c.order()),
                   std::vector<RationalMod1>(static_cast<std::size_t>(e.order()) * c.order())};
  for (int a = 0; a < e.order(); ++a)
    for (int x = 0; x < c.order(); ++x) m.t1(a, x) = c.b(embed[a], x);
  return m;
}

struct AxiomFailure {
  std::string identity;
  int e = 0, e2 = 0, x = 0;
};

struct AxiomReport {
  Report report;
  bool defining_ok = true;
  bool derived_ok = true;
  std::vector<AxiomFailure> failures;
};

/// Exact scalar form of the defining diagrams and of the derived identities.
inline AxiomReport check_braided_module_axioms(const BraidedEModule& m) {
  AxiomReport out;
  const MetricGroup& e = m.base;
  const MetricGroup& c = m.carrier;
  const auto& ge = e.group();
  const auto& gc = c.group();
  auto r = [&](int a, int b) { return e.b(a, b); };
  auto act = [&](int a, int x) { return gc.add(m.embed[a], x); };
  struct Identity {
    std::string name;
    bool derived;
    std::function<bool(int, int, int)> holds;
  };
  std::vector<Identity> ids = {
      {"unit", false, [&](int, int, int x) { return m.tau(0, x).is_zero(); }},
      {"module-compat-left", false, [&](int a, int b, int x) { return m.t1(a, act(b, x)) == r(a, b) + m.t1(a, x); }},
      {"module-compat-right", false, [&](int a, int b, int x) { return m.t2(act(b, x), a) == m.t2(x, a) + r(b, a); }},
      {"tensor-compat-left", false,
       [&](int a, int b, int x) { return m.t1(ge.add(a, b), x) == m.t1(a, x) + m.t1(b, x); }},
      {"tensor-compat-right", false,
       [&](int a, int b, int x) { return m.t2(x, ge.add(a, b)) == m.t2(x, a) + m.t2(x, b); }},
      {"composite-left", true,
       [&](int a, int b, int x) { return m.t1(ge.add(a, b), x) == m.t1(a, act(b, x)) + m.t1(b, act(a, x)); }},
      {"composite-right", true,
       [&](int a, int b, int x) { return m.t2(x, ge.add(a, b)) == m.t2(act(a, x), b) + m.t2(act(b, x), a); }},
      {"braid-commute", true, [&](int a, int b, int x) { return m.tau(a, act(b, x)) == m.tau(a, x); }},
      {"braid-tensor", true,
       [&](int a, int b, int x) { return m.tau(ge.add(a, b), x) == m.tau(b, x) + m.tau(a, act(b, x)); }},
  };
  for (const auto& id : ids) {
    int count = 0;
    for (int a = 0; a < e.order(); ++a)
      for (int b = 0; b < e.order(); ++b)
        for (int x = 0; x < c.order(); ++x) {
          if (id.holds(a, b, x)) continue;
          if (count == 0)
            out.report.fail(id.name + " at e=" + ge.element_str(a) + " e'=" + ge.element_str(b) + " x=" + gc.element_str(x));
          out.failures.push_back({id.name, a, b, x});
          ++count;
          (id.derived ? out.derived_ok : out.defining_ok) = false;
        }
    if (count == 0)
      out.report.pass(id.name);
    else if (count > 1)
      out.report.note(id.name + ": " + std::to_string(count) + " failing tuples in total");
  }
  return out;
}

/// Relative tensor product with the bookkeeping of the construction.
struct RelativeTensor {
  BraidedEModule module;
  DirectSum sum;
  Subgroup antidiagonal;
  Subgroup local;
  std::vector<int> cls;  ///< sum element -> result element, or -1 when not local
};

/// Local part of A (+) B quotiented by {(i_A e, -i_B e)}; locality compares
/// the E-module braidings of the two factors.
inline RelativeTensor relative_tensor_with_maps(const BraidedEModule& a, const BraidedEModule& b) {
  if (a.base != b.base) throw DomainError("base mismatch");
  const MetricGroup& e = a.base;
  DirectSum ds = direct_sum_with_maps(a.carrier, b.carrier);
  const auto& gs = ds.sum.group();
  Subgroup anti;
  for (int x = 0; x < e.order(); ++x)
    anti.push_back(gs.add(ds.inl[a.embed[x]], ds.inr[b.carrier.group().neg(b.embed[x])]));
  std::sort(anti.begin(), anti.end());
  if (!is_isotropic(ds.sum, anti)) throw DomainError("base not symmetric");
  Subgroup local;
  for (int s = 0; s < ds.sum.order(); ++s) {
    auto [x, y] = ds.parts[s];
    bool ok = true;
    for (int t = 0; t < e.order() && ok; ++t)
      if (a.tau(t, x) != b.tau(t, y)) ok = false;
    if (ok) local.push_back(s);
  }
  {
    std::vector<char> in(ds.sum.order(), 0);
    for (int s : local) in[s] = 1;
    for (int s : anti)
      if (!in[s]) throw DomainError("module braidings are not E-balanced");
    for (int s : local)
      for (int t : local)
        if (!in[gs.add(s, t)]) throw DomainError("module braidings are not E-balanced");
  }
  QuotientStructure qs = quotient_structure(gs, local, anti);
  std::vector<RationalMod1> q;
  for (int s : qs.rep) q.push_back(ds.sum.q(s));
  MetricGroup res(qs.group, std::move(q));
  std::vector<int> emb(e.order());
  for (int x = 0; x < e.order(); ++x) emb[x] = qs.cls[ds.inl[a.embed[x]]];
  RelativeTensor out{double_braiding_module(e, res, emb), ds, anti, local, qs.cls};
  return out;
}

inline BraidedEModule relative_tensor(const BraidedEModule& a, const BraidedEModule& b) {
  return relative_tensor_with_maps(a, b).module;
}

/// Elements on which the E-module braiding is trivial, as a metric group.
inline MetricEmbedding centralized_subcategory(const BraidedEModule& m) {
  Subgroup s;
  for (int x = 0; x < m.carrier.order(); ++x) {
    bool ok = true;
    for (int a = 0; a < m.base.order() && ok; ++a)
      if (!m.tau(a, x).is_zero()) ok = false;
    if (ok) s.push_back(x);
  }
  return restrict_to(m.carrier, s);
}

/// Isometry between carriers that matches the E-embeddings, if any.
inline std::optional<std::vector<int>> module_isometry(const BraidedEModule& a, const BraidedEModule& b) {
  if (a.base != b.base) return std::nullopt;
  std::vector<std::pair<int, int>> fixed;
  for (int x = 0; x < a.base.order(); ++x) fixed.emplace_back(a.embed[x], b.embed[x]);
  return isometry_exists(a.carrier, b.carrier, fixed);
}

/// Random tables satisfying the defining identities: on the coset iota(e') + rep_k,
/// tau1(e, .) = b(e, e') + h_k(e) and tau2(., e) = b(e', e) + g_k(e) with h_k, g_k characters of E.
template <class Rng>
BraidedEModule random_additive_module(const MetricGroup& e, const MetricGroup& c, const std::vector<int>& embed, Rng& rng) {
  BraidedEModule m = double_braiding_module(e, c, embed);
  const auto& gc = c.group();
  const auto& ge = e.group();
  std::vector<int> coset(c.order(), -1), offset(c.order(), 0);
  int k = 0;
  for (int x = 0; x < c.order(); ++x) {
    if (coset[x] >= 0) continue;
    for (int a = 0; a < e.order(); ++a) {
      int y = gc.add(embed[a], x);
      coset[y] = k;
      offset[y] = a;
    }
    ++k;
  }
  auto random_character = [&]() {
    std::vector<RationalMod1> vals(e.order());
    std::vector<int> c_i;
    for (int n : ge.factors()) c_i.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
    for (int a = 0; a < e.order(); ++a) {
      std::vector<int> t = ge.decode(a);
      RationalMod1 v;
      for (int i = 0; i < ge.rank(); ++i) v += RationalMod1(static_cast<std::int64_t>(t[i]) * c_i[i], ge.factors()[i]);
      vals[a] = v;
    }
    return vals;
  };
  std::vector<std::vector<RationalMod1>> h, g;
  for (int i = 0; i < k; ++i) {
    h.push_back(random_character());
    g.push_back(random_character());
  }
  for (int a = 0; a < e.order(); ++a)
    for (int x = 0; x < c.order(); ++x) {
      m.t1(a, x) = e.b(a, offset[x]) + h[coset[x]][a];
      m.t2(x, a) = e.b(offset[x], a) + g[coset[x]][a];
    }
  return m;
}

inline std::string format_braided_module(const BraidedEModule& m) {
  std::ostringstream os;
  os << "base:\n" << format_metric_group(m.base) << "carrier:\n" << format_metric_group(m.carrier);
  os << format_embedding_line(m.embedding());
  const auto& ge = m.base.group();
  const auto& gc = m.carrier.group();
  for (int a = 0; a < m.base.order(); ++a)
    for (int x = 0; x < m.carrier.order(); ++x)
      os << "tau1: " << ge.element_str(a) << ' ' << gc.element_str(x) << ' ' << m.t1(a, x).str() << '\n';
  for (int x = 0; x < m.carrier.order(); ++x)
    for (int a = 0; a < m.base.order(); ++a)
      os << "tau2: " << gc.element_str(x) << ' ' << ge.element_str(a) << ' ' << m.t2(x, a).str() << '\n';
  return os.str();
}

}  // namespace strathom
