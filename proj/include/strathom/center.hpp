#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strathom/braided_module.hpp"
#include "strathom/errors.hpp"
#include "strathom/library_metric.hpp"
#include "strathom/report.hpp"

namespace strathom {

/// Value of the character with coordinates k at the element x (same factors).
inline RationalMod1 character_value(const FiniteAbelianGroup& g, int k, int x) {
  std::vector<int> a = g.decode(k), b = g.decode(x);
  RationalMod1 v;
  for (int i = 0; i < g.rank(); ++i) v += RationalMod1(static_cast<std::int64_t>(a[i]) * b[i], g.factors()[i]);
  return v;
}

/// Z(Vec_G) as G x G^ with q(g, chi) = chi(g).
struct PointedDouble {
  MetricGroup m;
  std::vector<int> where;  ///< g * |G| + chi -> element of m
  int n = 1;
  int at(int g, int chi) const { return where[static_cast<std::size_t>(g) * n + chi]; }
};

inline PointedDouble drinfeld_center_pointed_with_maps(const FiniteAbelianGroup& g) {
  GroupIso iso = product_group(g, g);
  int n = g.order();
  std::vector<RationalMod1> q(iso.image.size());
  PointedDouble out;
  out.n = n;
  out.where.resize(iso.image.size());
  for (std::size_t k = 0; k < iso.image.size(); ++k) {
    int src = iso.image[k];
    q[k] = character_value(g, src % n, src / n);
    out.where[src] = static_cast<int>(k);
  }
  out.m = MetricGroup(iso.group, std::move(q));
  return out;
}

inline MetricGroup drinfeld_center_pointed(const FiniteAbelianGroup& g) { return drinfeld_center_pointed_with_maps(g).m; }

/// Vec_G with a central functor E -> Z(Vec_G), e -> (t(e), lambda(e)).
struct FusionOverE {
  std::string name;
  FiniteAbelianGroup group;
  MetricGroup base;
  std::vector<int> t;
  std::vector<int> lambda;  ///< character coordinates in the factors of `group`
};

inline bool is_homomorphism(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != a.order() || f[0] != 0) return false;
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (f[a.add(x, y)] != b.add(f[x], f[y])) return false;
  return true;
}

inline MetricEmbedding central_embedding(const FusionOverE& c) {
  PointedDouble z = drinfeld_center_pointed_with_maps(c.group);
  std::vector<int> map(c.base.order());
  for (int e = 0; e < c.base.order(); ++e) map[e] = z.at(c.t[e], c.lambda[e]);
  return {c.base, z.m, map};
}

inline void validate_fusion_over_e(const FusionOverE& c) {
  const auto& ge = c.base.group();
  if (!is_homomorphism(ge, c.group, c.t)) throw DomainError("t is not a homomorphism");
  if (!is_homomorphism(ge, c.group, c.lambda)) throw DomainError("lambda is not a homomorphism");
  std::vector<int> img = c.t;
  std::sort(img.begin(), img.end());
  if (std::unique(img.begin(), img.end()) != img.end()) throw DomainError("t is not injective");
  if (!central_embedding(c).validate().empty()) throw DomainError("not a category over E");
}

/// Homomorphisms a -> b in lexicographic order of the generator images.
inline void for_each_homomorphism(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b,
                                  const std::function<bool(const std::vector<int>&)>& visit) {
  int r = a.rank();
  std::vector<int> imgs(r);
  std::function<bool(int)> rec = [&](int i) {
    if (i == r) return visit(extend_from_generators(a, b, imgs));
    for (int y = 0; y < b.order(); ++y) {
      if (b.mul(a.factors()[i], y) != 0) continue;
      imgs[i] = y;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  rec(0);
}

inline const std::vector<std::string>& fusion_names() {
  static const std::vector<std::string> names = {"vec-1", "vec-z2", "vec-z3", "vec-z4", "vec-z2xz2"};
  return names;
}

inline FiniteAbelianGroup fusion_group(const std::string& name) {
  if (name == "vec-1") return FiniteAbelianGroup(std::vector<int>{});
  if (name == "vec-z2") return FiniteAbelianGroup({2});
  if (name == "vec-z3") return FiniteAbelianGroup({3});
  if (name == "vec-z4") return FiniteAbelianGroup({4});
  if (name == "vec-z2xz2") return FiniteAbelianGroup({2, 2});
  throw InputError("unknown fusion category: " + name);
}

/// Lexicographically first injective t and then first lambda making the
/// central functor braided.
inline std::optional<FusionOverE> try_fusion_over_e(const std::string& name, const MetricGroup& e) {
  FiniteAbelianGroup g = fusion_group(name);
  std::optional<FusionOverE> out;
  for_each_homomorphism(e.group(), g, [&](const std::vector<int>& t) {
    for_each_homomorphism(e.group(), g, [&](const std::vector<int>& lambda) {
      FusionOverE c{name, g, e, t, lambda};
      try {
        validate_fusion_over_e(c);
      } catch (const DomainError&) {
        return false;
      }
      out = c;
      return true;
    });
    return out.has_value();
  });
  return out;
}

inline FusionOverE fusion_over_e(const std::string& name, const std::string& base) {
  MetricGroup e = base_by_name(base);
  auto c = try_fusion_over_e(name, e);
  if (!c) throw DomainError(name + " admits no central structure over " + base);
  return *c;
}

/// Library entries that exist over the given base.
inline std::vector<FusionOverE> fusion_library(const std::string& base) {
  MetricGroup e = base_by_name(base);
  std::vector<FusionOverE> out;
  for (const auto& n : fusion_names())
    if (auto c = try_fusion_over_e(n, e)) out.push_back(*c);
  return out;
}

struct CenterOverE {
  MetricGroup z;
  MetricEmbedding base_embedding;  ///< E -> z
  MetricEmbedding into_double;     ///< z -> Z(Vec_G)
};

inline CenterOverE center_over_e(const FusionOverE& c) {
  validate_fusion_over_e(c);
  MetricEmbedding iota = central_embedding(c);
  Subgroup img = iota.image();
  MetricEmbedding sub = restrict_to(iota.target, orthogonal_complement(iota.target, img));
  std::vector<int> pos(iota.target.order(), -1);
  for (int k = 0; k < sub.source.order(); ++k) pos[sub.map[k]] = k;
  std::vector<int> e_map(c.base.order());
  for (int e = 0; e < c.base.order(); ++e) {
    e_map[e] = pos[iota.map[e]];
    if (e_map[e] < 0) throw DomainError("not a category over E");
  }
  MetricEmbedding be{c.base, sub.source, e_map};
  if (radical(sub.source) != be.image()) throw DomainError("centralizer of E is not nondegenerate over E");
  return {sub.source, be, sub};
}

/// Vec_{(G_C x G_D)/E} with the central structure induced from both factors.
inline FusionOverE relative_product(const FusionOverE& c, const FusionOverE& d) {
  if (c.base != d.base) throw DomainError("base mismatch");
  const auto& gc = c.group;
  const auto& gd = d.group;
  GroupIso iso = product_group(gc, gd);
  int nd = gd.order();
  std::vector<int> where(iso.image.size());
  for (std::size_t k = 0; k < iso.image.size(); ++k) where[iso.image[k]] = static_cast<int>(k);
  auto pair_at = [&](int x, int y) { return where[static_cast<std::size_t>(x) * nd + y]; };
  Subgroup anti;
  for (int e = 0; e < c.base.order(); ++e) anti.push_back(pair_at(c.t[e], gd.neg(d.t[e])));
  std::sort(anti.begin(), anti.end());
  QuotientStructure qs = quotient_structure(iso.group, whole_group(iso.group), anti);
  const FiniteAbelianGroup& q = qs.group;
  FusionOverE out{c.name + "*" + d.name, q, c.base, std::vector<int>(c.base.order()),
                  std::vector<int>(c.base.order())};
  for (int e = 0; e < c.base.order(); ++e) {
    out.t[e] = qs.cls[pair_at(c.t[e], 0)];
    auto value = [&](int s) {
      int src = iso.image[s];
      return character_value(gc, c.lambda[e], src / nd) + character_value(gd, d.lambda[e], src % nd);
    };
    for (int a : anti)
      if (!value(a).is_zero()) throw DomainError("central structures disagree on E");
    std::vector<int> k(q.rank());
    for (int i = 0; i < q.rank(); ++i) {
      Rational v = value(qs.rep[q.generator(i)]).value() * Rational(q.factors()[i]);
      k[i] = static_cast<int>(v.num());
    }
    out.lambda[e] = q.encode(k);
  }
  validate_fusion_over_e(out);
  return out;
}

inline BraidedEModule center_module(const FusionOverE& c) {
  CenterOverE z = center_over_e(c);
  return double_braiding_module(c.base, z.z, z.base_embedding.map);
}

/// Z(C,E) (.)_E Z(D,E) against Z(C (x)_E D, E), embedding-compatibly.
inline Report check_center_monoidal(const FusionOverE& c, const FusionOverE& d) {
  Report r;
  BraidedEModule lhs = relative_tensor(center_module(c), center_module(d));
  BraidedEModule rhs = center_module(relative_product(c, d));
  r.note("lhs order " + std::to_string(lhs.carrier.order()) + ", rhs order " + std::to_string(rhs.carrier.order()));
  if (auto w = module_isometry(lhs, rhs)) {
    std::string s = "isometry witness:";
    const auto& ga = lhs.carrier.group();
    for (int i = 0; i < ga.rank(); ++i)
      s += " " + ga.element_str(ga.generator(i)) + "->" + rhs.carrier.group().element_str((*w)[ga.generator(i)]);
    r.pass(s);
  } else {
    r.fail("no isometry commuting with the E-embeddings");
  }
  return r;
}

/// Morita equivalence over E detected by the centers over E.
inline Report morita_test(const FusionOverE& c, const FusionOverE& d) {
  Report r;
  if (c.base != d.base) {
    r.fail("base mismatch");
    return r;
  }
  BraidedEModule zc = center_module(c), zd = center_module(d);
  if (module_isometry(zc, zd))
    r.pass("centers over E are equivalent");
  else
    r.fail("centers over E differ (orders " + std::to_string(zc.carrier.order()) + " and " +
           std::to_string(zd.carrier.order()) + ")");
  return r;
}

/// Module category over Vec_G: subgroup H with alternating bicharacter psi.
struct ModuleCatOverPointed {
  Subgroup h;
  std::vector<RationalMod1> psi;  ///< |H| x |H|, indexed by positions in h

  RationalMod1 form(int i, int j) const { return psi[static_cast<std::size_t>(i) * h.size() + j]; }
};

inline ModuleCatOverPointed module_cat(const Subgroup& h) {
  return {h, std::vector<RationalMod1>(h.size() * h.size())};
}

inline ModuleCatOverPointed regular_module() { return module_cat({0}); }

inline void validate_module_cat(const FiniteAbelianGroup& g, const ModuleCatOverPointed& m) {
  if (m.h.empty() || generated_subgroup(g, m.h) != m.h) throw DomainError("H is not a subgroup");
  if (m.psi.size() != m.h.size() * m.h.size()) throw DomainError("psi has the wrong size");
  auto pos = [&](int x) { return static_cast<int>(std::lower_bound(m.h.begin(), m.h.end(), x) - m.h.begin()); };
  for (std::size_t i = 0; i < m.h.size(); ++i) {
    if (!m.form(i, i).is_zero()) throw DomainError("psi is not alternating");
    for (std::size_t j = 0; j < m.h.size(); ++j)
      for (std::size_t k = 0; k < m.h.size(); ++k)
        if (m.form(pos(g.add(m.h[i], m.h[j])), k) != m.form(i, k) + m.form(j, k))
          throw DomainError("psi is not biadditive");
  }
}

/// Rank of Fun_{Vec_G}(M, N): |G/(H1 + H2)| double cosets, each contributing
/// the number of irreducible (psi1 - psi2)-projective representations of
/// H1 & H2, which is the order of the radical of that form.
inline std::int64_t fun_cat_rank(const FiniteAbelianGroup& g, const ModuleCatOverPointed& m,
                                 const ModuleCatOverPointed& n) {
  validate_module_cat(g, m);
  validate_module_cat(g, n);
  Subgroup both = m.h;
  both.insert(both.end(), n.h.begin(), n.h.end());
  Subgroup sum = generated_subgroup(g, both);
  Subgroup inter;
  std::set_intersection(m.h.begin(), m.h.end(), n.h.begin(), n.h.end(), std::back_inserter(inter));
  auto pos = [](const Subgroup& h, int x) {
    return static_cast<int>(std::lower_bound(h.begin(), h.end(), x) - h.begin());
  };
  std::int64_t rad = 0;
  for (int x : inter) {
    bool ok = true;
    for (int y : inter) {
      RationalMod1 v = m.form(pos(m.h, x), pos(m.h, y)) - n.form(pos(n.h, x), pos(n.h, y));
      if (!v.is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) ++rad;
  }
  return g.order() / static_cast<std::int64_t>(sum.size()) * rad;
}

/// Rank-level check of D (x)_{Z(D,E)} Fun_D(N, N) = Fun_E(N, N), per
/// indecomposable block of N restricted to E.
inline Report verify_cylinder(const FusionOverE& d, const ModuleCatOverPointed& n) {
  Report r;
  const auto& g = d.group;
  const auto& ge = d.base.group();
  CenterOverE z = center_over_e(d);
  std::int64_t fun_d = fun_cat_rank(g, n, n);
  std::int64_t lhs_num = static_cast<std::int64_t>(g.order()) * fun_d;
  if (lhs_num % z.z.order() != 0) {
    r.fail("rank quotient is not integral");
    return r;
  }
  std::int64_t lhs = lhs_num / z.z.order();
  // N restricted along t: orbits G/(H + t(G_E)), stabilizer t^{-1}(H) with psi o t
  Subgroup gens = n.h;
  gens.insert(gens.end(), d.t.begin(), d.t.end());
  std::size_t blocks = g.order() / generated_subgroup(g, gens).size();
  Subgroup k;
  std::vector<int> kpos_in_h;
  for (int e = 0; e < ge.order(); ++e) {
    auto it = std::lower_bound(n.h.begin(), n.h.end(), d.t[e]);
    if (it != n.h.end() && *it == d.t[e]) {
      k.push_back(e);
      kpos_in_h.push_back(static_cast<int>(it - n.h.begin()));
    }
  }
  ModuleCatOverPointed block = module_cat(k);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) block.psi[i * k.size() + j] = n.form(kpos_in_h[i], kpos_in_h[j]);
  std::int64_t rhs = fun_cat_rank(ge, block, block);
  r.note(std::to_string(blocks) + " blocks of Fun_E(N, N) on the diagonal, each of rank " + std::to_string(rhs));
  if (lhs == rhs)
    r.pass("rank " + std::to_string(lhs) + " on both sides");
  else
    r.fail("lhs rank " + std::to_string(lhs) + " != rhs rank " + std::to_string(rhs));
  return r;
}

inline std::string format_center(const CenterOverE& c) {
  return format_metric_group(c.z) + format_embedding_line(c.base_embedding);
}

}  // namespace strathom
