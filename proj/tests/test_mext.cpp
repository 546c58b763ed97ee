#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "strathom/library_metric.hpp"
#include "strathom/modular_extension.hpp"

using namespace strathom;

namespace {

ModularExtension over_rep_z2(const std::string& name, std::vector<int> coords) {
  MetricGroup e = base_by_name("rep-z2");
  MetricGroup m = metric_group_by_name(name);
  int x = m.group().encode(coords);
  return {e, e, identity_embedding(e), m, {e, m, {0, x}}};
}

MextClassification classify(const std::string& base, int threads = 1) {
  MetricGroup e = base_by_name(base);
  return enumerate_mext(e, e, identity_embedding(e), threads);
}

}  // namespace

TEST(Mext, PredicateExamples) {
  EXPECT_TRUE(is_modular_extension(over_rep_z2("toric-code", {1, 0})).ok);
  EXPECT_TRUE(is_modular_extension(over_rep_z2("double-semion", {1, 1})).ok);
  Report bad = is_modular_extension(over_rep_z2("toric-code", {1, 1}));
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.str().find("not a metric embedding"), std::string::npos);
  // nondegenerate but the centralizer of E is too large
  MetricGroup e = base_by_name("rep-z2");
  ModularExtension triv{e, e, identity_embedding(e), direct_sum(e, e), {e, direct_sum(e, e), {0, 1}}};
  EXPECT_FALSE(is_modular_extension(triv).ok);
}

TEST(Mext, Unit) {
  for (const auto& b : base_names()) {
    MetricGroup e = base_by_name(b);
    ModularExtension u = mext_unit(e);
    EXPECT_TRUE(is_modular_extension(u).ok) << b;
    EXPECT_EQ(u.m.order(), e.order() * e.order());
  }
  EXPECT_TRUE(isometry_exists(mext_unit(base_by_name("rep-z2")).m, metric_group_by_name("toric-code")));
  EXPECT_EQ(mext_unit(base_by_name("trivial")).m.order(), 1);
  // sVec: q(g, chi) = q_E(g) + chi(g) = (0, 0, 1/2, 0) on (0,0),(0,1),(1,0),(1,1)
  ModularExtension s = mext_unit(base_by_name("svec"));
  std::vector<std::pair<Rational, int>> hist = {{Rational(0), 3}, {Rational(1, 2), 1}};
  EXPECT_EQ(q_histogram(s.m), hist);
}

TEST(Mext, Products) {
  ModularExtension ds = over_rep_z2("double-semion", {1, 1});
  ModularExtension unit = mext_unit(ds.base);
  EXPECT_TRUE(mext_equivalent_over_base(mext_mul(unit, ds), ds));
  ModularExtension sq = mext_mul(ds, mext_inverse(ds));
  EXPECT_TRUE(is_modular_extension(sq).ok);
  EXPECT_TRUE(mext_equivalent_over_base(sq, unit));
  ModularExtension tc = over_rep_z2("toric-code", {1, 0});
  EXPECT_TRUE(mext_equivalent_over_base(mext_mul(tc, ds), mext_mul(ds, tc)));
  EXPECT_TRUE(is_modular_extension(mext_mul(tc, ds)).ok);
}

TEST(Mext, Enumeration) {
  auto triv = classify("trivial");
  EXPECT_EQ(triv.classes.size(), 1u);
  auto sv = classify("svec");
  ASSERT_EQ(sv.classes.size(), 8u);
  EXPECT_TRUE(check_group_table(sv.table, sv.unit_class, sv.inverse_class).ok);
  EXPECT_EQ(max_element_order(sv.table, sv.unit_class), 8);
  auto rz = classify("rep-z2");
  EXPECT_TRUE(check_group_table(rz.table, rz.unit_class, rz.inverse_class).ok);
  // Extensions of order 4 containing an isotropic order-2 x with x^perp = <x>.
  EXPECT_EQ(rz.classes.size(), 2u);
}

TEST(Mext, InverseExamples) {
  auto sv = classify("svec");
  EXPECT_EQ(sv.inverse_class[sv.unit_class], sv.unit_class);
  for (std::size_t i = 0; i < sv.classes.size(); ++i) {
    const auto& x = sv.classes[i];
    ModularExtension inv = mext_inverse(x);
    for (int k = 0; k < x.m.order(); ++k) EXPECT_EQ(inv.m.q(k), -x.m.q(k));
  }
  auto rz = classify("rep-z2");
  for (std::size_t i = 0; i < rz.classes.size(); ++i) EXPECT_EQ(rz.inverse_class[i], static_cast<int>(i));
}

TEST(Mext, DeterministicAcrossThreads) {
  for (const auto& b : base_names())
    EXPECT_EQ(format_mext(classify(b, 1)), format_mext(classify(b, 4))) << b;
}

TEST(Mext, SearchBound) {
  setenv("STRATHOM_MAX_ORDER", "2", 1);
  EXPECT_THROW(classify("rep-z2"), BoundExceeded);
  setenv("STRATHOM_MAX_ORDER", "x", 1);
  EXPECT_THROW(classify("rep-z2"), InputError);
  unsetenv("STRATHOM_MAX_ORDER");
  EXPECT_NO_THROW(classify("rep-z2"));
}

TEST(MextProperty, GaussCharacter) {
  for (const auto& b : base_names()) {
    MetricGroup e = base_by_name(b);
    auto r = enumerate_mext(e, e, identity_embedding(e));
    std::size_t n = r.classes.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Cyclotomic lhs = gauss_character(r.classes[r.table[i][j]].m);
        Cyclotomic rhs = gauss_character(r.classes[i].m) * gauss_character(r.classes[j].m);
        EXPECT_EQ(lhs, rhs.normalized()) << b;
      }
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_EQ(r.table[i][r.inverse_class[i]], r.unit_class);
  }
  // the phase separates the eight sVec classes
  auto sv = classify("svec");
  std::set<std::string> phases;
  for (const auto& x : sv.classes) phases.insert(gauss_character(x.m).str());
  EXPECT_EQ(phases.size(), 8u);
}

TEST(MextProperty, ClassesAreDistinct) {
  for (const auto& b : base_names()) {
    MetricGroup e = base_by_name(b);
    auto r = enumerate_mext(e, e, identity_embedding(e));
    auto autos = inner_automorphisms(e, identity_embedding(e));
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
      EXPECT_TRUE(is_modular_extension(r.classes[i]).ok);
      for (std::size_t j = i + 1; j < r.classes.size(); ++j)
        EXPECT_FALSE(mext_equivalent(r.classes[i], r.classes[j], autos));
    }
  }
}

TEST(Mext, NontrivialInner) {
  MetricGroup e = base_by_name("rep-z2");
  // C = E + semion has Mueger center E
  DirectSum c = direct_sum_with_maps(e, metric_group_by_name("semion"));
  MetricEmbedding ie{e, c.sum, c.inl};
  auto r = enumerate_mext(e, c.sum, ie);
  EXPECT_FALSE(r.has_table);
  // two extensions up to isometries fixing C pointwise; the automorphism
  // s -> s + e of C identifies them
  EXPECT_EQ(r.classes.size(), 1u);
  for (const auto& x : r.classes) EXPECT_TRUE(is_modular_extension(x).ok);
  auto extend = [&](const ModularExtension& x) {
    DirectSum m = direct_sum_with_maps(x.m, metric_group_by_name("semion"));
    std::vector<int> iota(c.sum.order());
    for (int k = 0; k < c.sum.order(); ++k) {
      auto [u, v] = c.parts[k];
      iota[k] = m.sum.group().add(m.inl[x.iota.map[u]], m.inr[v]);
    }
    return ModularExtension{e, c.sum, ie, m.sum, {c.sum, m.sum, iota}};
  };
  ModularExtension a = extend(over_rep_z2("toric-code", {1, 0}));
  ModularExtension b = extend(over_rep_z2("double-semion", {1, 1}));
  EXPECT_TRUE(is_modular_extension(a).ok);
  EXPECT_TRUE(is_modular_extension(b).ok);
  auto autos = inner_automorphisms(a.inner, a.iotaE);
  EXPECT_EQ(autos.size(), 2u);
  EXPECT_FALSE(mext_equivalent(a, b, {autos[0]}));
  EXPECT_TRUE(mext_equivalent(a, b, autos));
  // a nondegenerate C cannot contain E in its centralizer
  MetricGroup tc = metric_group_by_name("toric-code");
  MetricEmbedding at_e{e, tc, {0, tc.group().encode({1, 0})}};
  EXPECT_TRUE(enumerate_mext(e, tc, at_e).classes.empty());
}
