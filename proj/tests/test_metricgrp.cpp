#include <gtest/gtest.h>

#include <random>
#include <set>

#include "strathom/forms.hpp"
#include "strathom/library_metric.hpp"
#include "strathom/metric_group.hpp"

using namespace strathom;

namespace {

MetricGroup named(const std::string& n) { return metric_group_by_name(n); }

int el(const MetricGroup& mg, std::vector<int> t) { return mg.group().encode(t); }

// Oracle: brute-force subgroup enumeration by closure of every subset of size <= 3.
std::set<std::vector<int>> brute_subgroups(const FiniteAbelianGroup& g) {
  std::set<std::vector<int>> out;
  int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        std::set<int> s{0};
        bool grew = true;
        while (grew) {
          grew = false;
          std::vector<int> cur(s.begin(), s.end());
          for (int x : cur)
            for (int y : {a, b, c})
              if (s.insert(g.add(x, y)).second) grew = true;
        }
        out.insert(std::vector<int>(s.begin(), s.end()));
      }
  return out;
}

std::vector<MetricGroup> small_library() {
  std::vector<MetricGroup> out;
  for (const auto& n : metric_group_names()) out.push_back(named(n));
  out.push_back(direct_sum(named("toric-code"), named("semion")));
  out.push_back(direct_sum(named("z4-1"), named("rep-z2")));
  out.push_back(direct_sum(named("toric-code"), named("toric-code")));
  return out;
}

}  // namespace

TEST(MetricGroup, LibraryValid) {
  for (const auto& n : metric_group_names()) {
    MetricGroup mg = named(n);
    EXPECT_EQ(mg.validate(), "") << n;
  }
}

TEST(MetricGroup, Bicharacter) {
  EXPECT_TRUE(named("rep-z2").b(1, 1).is_zero());
  MetricGroup tc = named("toric-code");
  int e = el(tc, {1, 0}), m = el(tc, {0, 1});
  EXPECT_EQ(tc.b(e, m), RationalMod1(1, 2));
  MetricGroup z4 = named("z4-1");
  // exhaustive table from b(x,y) = q(x+y) - q(x) - q(y) with q(x) = x^2/8
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) EXPECT_EQ(z4.b(x, y), RationalMod1(2 * x * y, 8));
  EXPECT_EQ(z4.b(1, 1), RationalMod1(1, 4));
}

TEST(MetricGroup, RadicalAndClassification) {
  EXPECT_EQ(radical(named("toric-code")).size(), 1u);
  EXPECT_EQ(radical(named("rep-z2")).size(), 2u);
  EXPECT_EQ(radical(named("svec")).size(), 2u);
  EXPECT_EQ(classify_symmetric(named("rep-z2")), SymmetricKind::Tannakian);
  EXPECT_EQ(classify_symmetric(named("svec")), SymmetricKind::SuperTannakian);
  EXPECT_EQ(classify_symmetric(named("toric-code")), SymmetricKind::NotSymmetric);
  EXPECT_EQ(classify_symmetric(named("trivial")), SymmetricKind::Tannakian);
}

TEST(MetricGroup, OrthogonalComplement) {
  MetricGroup tc = named("toric-code");
  int e = el(tc, {1, 0});
  EXPECT_EQ(orthogonal_complement(tc, {0, e}), (Subgroup{0, e}));
  EXPECT_EQ(orthogonal_complement(tc, {0}), whole_group(tc.group()));
  EXPECT_EQ(orthogonal_complement(tc, whole_group(tc.group())), (Subgroup{0}));
}

TEST(MetricGroup, IsotropicSubgroups) {
  MetricGroup tc = named("toric-code");
  auto iso = isotropic_subgroups(tc);
  ASSERT_EQ(iso.size(), 3u);
  EXPECT_EQ(iso[0], (Subgroup{0}));
  EXPECT_EQ(iso[1], (Subgroup{0, el(tc, {0, 1})}));
  EXPECT_EQ(iso[2], (Subgroup{0, el(tc, {1, 0})}));
  EXPECT_EQ(isotropic_subgroups(named("svec")).size(), 1u);
  EXPECT_EQ(isotropic_subgroups(named("rep-z2")).size(), 2u);
}

TEST(MetricGroup, SubgroupsMatchBruteForce) {
  for (auto f : std::vector<std::vector<int>>{{2, 2}, {2, 4}, {4, 4}, {2, 2, 2}, {3, 6}, {2, 2, 4}}) {
    FiniteAbelianGroup g(f);
    auto ours = all_subgroups(g);
    auto oracle = brute_subgroups(g);
    std::set<std::vector<int>> mine(ours.begin(), ours.end());
    EXPECT_EQ(mine, oracle);
    EXPECT_TRUE(std::is_sorted(ours.begin(), ours.end(), subgroup_less));
  }
}

TEST(MetricGroup, Condense) {
  MetricGroup tc = named("toric-code");
  int e = el(tc, {1, 0}), f = el(tc, {1, 1});
  EXPECT_EQ(condense(tc, {0, e}).order(), 1);
  EXPECT_EQ(condense(tc, {0}), tc);
  EXPECT_THROW(condense(tc, {0, f}), DomainError);
  DirectSum ds = direct_sum_with_maps(tc, tc);
  Subgroup anti = {0, ds.sum.group().add(ds.inl[e], ds.inr[tc.group().neg(e)])};
  std::sort(anti.begin(), anti.end());
  EXPECT_EQ(condense(ds.sum, anti).order(), 4);
}

TEST(MetricGroup, DirectSumAndConjugate) {
  EXPECT_EQ(direct_sum(named("trivial"), named("semion")), named("semion"));
  EXPECT_EQ(direct_sum(named("semion"), named("anti-semion")), named("double-semion"));
  EXPECT_EQ(direct_sum(named("toric-code"), named("toric-code")).order(), 16);
  EXPECT_EQ(conjugate(named("semion")), named("anti-semion"));
  EXPECT_EQ(conjugate(named("toric-code")), named("toric-code"));
  for (const auto& mg : small_library()) EXPECT_EQ(conjugate(conjugate(mg)), mg);
}

TEST(MetricGroup, Isometry) {
  EXPECT_FALSE(isometry_exists(named("toric-code"), named("double-semion")));
  for (const auto& mg : small_library()) {
    EXPECT_TRUE(isometry_exists(mg, mg));
    std::vector<std::pair<int, int>> fix;
    for (int x = 0; x < mg.order(); ++x) fix.emplace_back(x, x);
    auto id = isometry_exists(mg, mg, fix);
    ASSERT_TRUE(id);
    for (int x = 0; x < mg.order(); ++x) EXPECT_EQ((*id)[x], x);
  }
  EXPECT_FALSE(isometry_exists(named("z4-1"), named("z4-3")));
  // Z4 x Z2 presented in the other order is still recognised
  MetricGroup a = direct_sum(named("rep-z2"), named("z4-1"));
  MetricGroup b = direct_sum(named("z4-1"), named("rep-z2"));
  EXPECT_TRUE(isometry_exists(a, b));
}

TEST(MetricGroup, GaussSum) {
  EXPECT_EQ(gauss_sum(named("rep-z2")), Cyclotomic(2));
  EXPECT_EQ(gauss_sum(named("toric-code")), Cyclotomic(2));
  EXPECT_EQ(gauss_sum(named("semion")), Cyclotomic(1) + Cyclotomic::zeta(4));
}

TEST(MetricGroup, TextRoundTrip) {
  for (const auto& mg : small_library()) {
    std::string s = format_metric_group(mg);
    EXPECT_EQ(parse_metric_group(s), mg);
  }
  EXPECT_THROW(parse_metric_group("factors: 2\n(0) : 0\n(1) : 1/4\n(1) : 0\n"), InputError);
  EXPECT_THROW(parse_metric_group("factors: 3\n(0) : 0\n(1) : 1/2\n(2) : 0\n"), InputError);
}

TEST(MetricGroup, FormEnumerationCounts) {
  // Oracle: count quadratic forms by brute force over all functions Z2xZ2 -> (1/4)Z/Z.
  FiniteAbelianGroup g({2, 2});
  int ours = 0;
  for_each_quadratic_form(g, [&](const MetricGroup& mg) {
    EXPECT_EQ(mg.validate(), "");
    ++ours;
  });
  int brute = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        MetricGroup mg(g, {RationalMod1(), RationalMod1(b, 4), RationalMod1(a, 4), RationalMod1(c, 4)});
        if (mg.validate().empty()) ++brute;
      }
  EXPECT_EQ(ours, brute);
  EXPECT_EQ(abelian_groups_of_order(16).size(), 5u);
}

// ---- properties ----

TEST(MetricGroupProperty, CondenseOrderAndNondegeneracy) {
  for (const auto& mg : small_library()) {
    for (const auto& h : isotropic_subgroups(mg)) {
      MetricGroup c = condense(mg, h);
      if (is_nondegenerate(mg)) {
        EXPECT_EQ(c.order() * static_cast<int>(h.size() * h.size()), mg.order());
        EXPECT_TRUE(is_nondegenerate(c));
      }
      EXPECT_EQ(c.validate(), "");
    }
  }
}

TEST(MetricGroupProperty, DoubleComplement) {
  for (const auto& mg : small_library()) {
    if (!is_nondegenerate(mg) || mg.order() > 16) continue;
    for (const auto& h : all_subgroups(mg.group())) {
      EXPECT_EQ(orthogonal_complement(mg, orthogonal_complement(mg, h)), h);
      EXPECT_EQ(h.size() * orthogonal_complement(mg, h).size(), static_cast<std::size_t>(mg.order()));
    }
  }
}

TEST(MetricGroupProperty, GaussMultiplicative) {
  auto lib = small_library();
  for (const auto& a : lib) {
    EXPECT_EQ(gauss_sum(conjugate(a)), gauss_sum(a).conj());
    for (const auto& b : lib) {
      if (a.order() * b.order() > 64) continue;
      EXPECT_EQ(gauss_sum(direct_sum(a, b)), gauss_sum(a) * gauss_sum(b));
    }
  }
}

TEST(MetricGroupProperty, IsometryEquivalenceRelation) {
  std::vector<MetricGroup> set;
  FiniteAbelianGroup g({2, 2});
  for_each_quadratic_form(g, [&](const MetricGroup& mg) { set.push_back(mg); });
  int n = static_cast<int>(set.size());
  for (int i = 0; i < n; ++i) {
    EXPECT_TRUE(isometry_exists(set[i], set[i]));
    for (int j = 0; j < n; ++j) {
      auto w = isometry_exists(set[i], set[j]);
      auto v = isometry_exists(set[j], set[i]);
      EXPECT_EQ(bool(w), bool(v));
      if (w) {
        std::vector<int> inv = invert_map(*w);
        for (int x = 0; x < 4; ++x) EXPECT_EQ(set[i].q(inv[x]), set[j].q(x));
        for (int k = 0; k < n; ++k) {
          auto u = isometry_exists(set[j], set[k]);
          if (!u) continue;
          auto t = isometry_exists(set[i], set[k]);
          ASSERT_TRUE(t);
          for (int x = 0; x < 4; ++x) EXPECT_EQ(set[k].q((*u)[(*w)[x]]), set[i].q(x));
        }
      }
    }
  }
}

TEST(MetricGroupProperty, DiagonalCondensesToTrivial) {
  for (const auto& mg : small_library()) {
    if (!is_nondegenerate(mg) || mg.order() > 8) continue;
    DirectSum ds = direct_sum_with_maps(mg, conjugate(mg));
    Subgroup diag;
    for (int x = 0; x < mg.order(); ++x) diag.push_back(ds.sum.group().add(ds.inl[x], ds.inr[x]));
    std::sort(diag.begin(), diag.end());
    ASSERT_TRUE(is_isotropic(ds.sum, diag));
    EXPECT_EQ(condense(ds.sum, diag).order(), 1);
  }
}

TEST(MetricGroupProperty, NormalizedSubgroupStructure) {
  std::mt19937 rng(3);
  for (auto f : std::vector<std::vector<int>>{{2, 4}, {2, 2, 4}, {4, 8}, {2, 6}, {3, 3}}) {
    FiniteAbelianGroup g(f);
    for (const auto& h : all_subgroups(g)) {
      SubgroupStructure st = subgroup_structure(g, h);
      EXPECT_EQ(st.group.order(), static_cast<int>(h.size()));
      std::set<int> img(st.incl.begin(), st.incl.end());
      EXPECT_EQ(std::vector<int>(img.begin(), img.end()), h);
      for (int a = 0; a < st.group.order(); ++a)
        for (int b = 0; b < st.group.order(); ++b)
          EXPECT_EQ(st.incl[st.group.add(a, b)], g.add(st.incl[a], st.incl[b]));
    }
  }
}
