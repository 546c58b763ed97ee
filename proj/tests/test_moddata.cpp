#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "strathom/library_md.hpp"
#include "strathom/modular_data.hpp"

using namespace strathom;

namespace {

ModularData md_of(const std::string& n) { return *builtin_modular_data(n); }

std::vector<int> labels_of(const ModularData& md, std::vector<std::string> names) {
  std::vector<int> out;
  for (const auto& n : names)
    for (int i = 0; i < md.rank(); ++i)
      if (md.ring.labels[i] == n) out.push_back(i);
  return out;
}

// Oracle: numeric S from the metric-group formula.
std::complex<double> s_numeric(const MetricGroup& mg, int x, int y) {
  double b = mg.b(x, y).value().to_double();
  return std::polar(1.0 / std::sqrt(static_cast<double>(mg.order())), 2.0 * std::acos(-1.0) * b);
}

}  // namespace

TEST(ModularData, FromMetricGroup) {
  ModularData rz = md_of("rep-z2");
  Cyclotomic h = sqrt_int(2).inverse();
  EXPECT_EQ(rz.s(0, 0), h);
  EXPECT_EQ(rz.s(1, 1), h);
  EXPECT_FALSE(verify_modular_axioms(rz).ok);  // singular S
  MetricGroup tc = metric_group_by_name("toric-code");
  ModularData mtc = from_metric_group(tc);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      EXPECT_LT(std::abs(mtc.s(x, y).to_complex() - s_numeric(tc, x, y)), 1e-12);
      EXPECT_TRUE(mtc.s(x, y) == Cyclotomic(Rational(1, 2)) || mtc.s(x, y) == Cyclotomic(Rational(-1, 2)));
    }
  ModularData sem = md_of("semion");
  EXPECT_EQ(sem.s(1, 1), -h);
  EXPECT_EQ(root_of_unity(sem.T[1]), Cyclotomic::zeta(4));
}

TEST(ModularData, Verify) {
  Report r = verify_modular_axioms(md_of("toric-code"));
  EXPECT_TRUE(r.ok) << r.str();
  for (const auto& n : {"ising", "fibonacci", "semion", "double-semion", "z4-3", "three-fermion"}) {
    Report rep = verify_modular_axioms(md_of(n));
    EXPECT_TRUE(rep.ok) << n << "\n" << rep.str();
  }
  ModularData bad = md_of("toric-code");
  bad.s(1, 2) = bad.s(1, 2) + Cyclotomic(Rational(1, 8));
  bad.s(2, 1) = bad.s(1, 2);
  Report rb = verify_modular_axioms(bad);
  EXPECT_FALSE(rb.ok);
  bool verlinde_failed = false;
  for (const auto& l : rb.lines)
    if (l.find("Verlinde") != std::string::npos && l.rfind("FAIL", 0) == 0) verlinde_failed = true;
  EXPECT_TRUE(verlinde_failed) << rb.str();
}

TEST(ModularData, IsingDimensions) {
  ModularData is = md_of("ising");
  EXPECT_EQ(is.dims[1], sqrt_int(2));
  EXPECT_EQ(is.global_dim2, Cyclotomic(4));
  ModularData fib = md_of("fibonacci");
  EXPECT_LT(std::abs(fib.dims[1].to_complex() - (1 + std::sqrt(5.0)) / 2), 1e-12);
}

TEST(ModularData, Centralizer) {
  ModularData tc = md_of("toric-code");
  auto a = labels_of(tc, {"(0,0)", "(1,0)"});
  EXPECT_EQ(mueger_centralizer(tc, a), a);
  std::vector<int> all(tc.rank());
  for (int i = 0; i < tc.rank(); ++i) all[i] = i;
  EXPECT_EQ(mueger_centralizer(tc, {0}), all);
  ModularData is = md_of("ising");
  EXPECT_EQ(mueger_centralizer(is, {0, 1, 2}), std::vector<int>{0});
}

TEST(ModularData, Deligne) {
  ModularData tc = md_of("toric-code");
  ModularData triv = md_of("trivial");
  ModularData p = deligne_product(triv, tc);
  EXPECT_EQ(p.S, tc.S);
  EXPECT_EQ(p.T, tc.T);
  EXPECT_EQ(p.ring.n, tc.ring.n);
  ModularData sa = deligne_product(md_of("semion"), md_of("anti-semion"));
  ModularData ds = md_of("double-semion");
  // labels (a|b) line up with double-semion elements (a,b)
  EXPECT_EQ(sa.S, ds.S);
  EXPECT_EQ(sa.T, ds.T);
  EXPECT_EQ(deligne_product(tc, tc).rank(), 16);
}

TEST(ModularData, CondenseGroupLike) {
  ModularData tc = md_of("toric-code");
  auto a = labels_of(tc, {"(0,0)", "(1,0)"});
  EXPECT_EQ(condense_grouplike(tc, a).rank(), 1);
  ModularData same = condense_grouplike(tc, {0});
  EXPECT_EQ(same.S, tc.S);
  EXPECT_THROW(condense_grouplike(tc, labels_of(tc, {"(0,0)", "(1,1)"})), DomainError);
  EXPECT_THROW(condense_grouplike(md_of("ising"), {0, 2}), DomainError);
  // TC x TC with the antidiagonal over {1, e}: rank 4, isomorphic to TC.
  ModularData tt = deligne_product(tc, tc);
  auto anti = labels_of(tt, {"(0,0)|(0,0)", "(1,0)|(1,0)"});
  ModularData c = condense_grouplike(tt, anti);
  EXPECT_EQ(c.rank(), 4);
  EXPECT_TRUE(verify_modular_axioms(c).ok);
  // the full order-4 antidiagonal is Lagrangian
  auto full = labels_of(tt, {"(0,0)|(0,0)", "(1,0)|(1,0)", "(0,1)|(0,1)", "(1,1)|(1,1)"});
  EXPECT_EQ(condense_grouplike(tt, full).rank(), 1);
}

TEST(ModularData, VerlindeDim) {
  ModularData tc = md_of("toric-code");
  EXPECT_EQ(verlinde_genus_dim(tc, 0), 1);
  EXPECT_EQ(verlinde_genus_dim(tc, 1), 4);
  EXPECT_EQ(verlinde_genus_dim(tc, 2), 16);
  EXPECT_EQ(verlinde_genus_dim(md_of("semion"), 1), 2);
  EXPECT_EQ(verlinde_genus_dim(md_of("ising"), 1), 3);
  EXPECT_EQ(verlinde_genus_dim(md_of("ising"), 2), 10);
  EXPECT_EQ(verlinde_genus_dim(md_of("fibonacci"), 2), 5);
  for (const auto& n : {"double-semion", "z4-1", "fibonacci"}) {
    ModularData md = md_of(n);
    EXPECT_EQ(verlinde_genus_dim(md, 1), md.rank());
  }
}

TEST(ModularData, FileRoundTrip) {
  for (const auto& n : {"ising", "fibonacci", "toric-code", "z4-5"}) {
    ModularData md = md_of(n);
    std::string s = format_modular_data(md);
    ModularData back = parse_modular_data(s);
    EXPECT_EQ(back, md);
    EXPECT_EQ(format_modular_data(back), s);
  }
  EXPECT_THROW(parse_modular_data("rank: 2\nlabels: a\n"), InputError);
}

// ---- properties ----

TEST(ModularDataProperty, DoubleCentralizer) {
  for (const auto& n : {"toric-code", "double-semion", "z4-1", "three-fermion"}) {
    MetricGroup mg = metric_group_by_name(n);
    ModularData md = from_metric_group(mg);
    for (const auto& h : all_subgroups(mg.group())) {
      std::vector<int> a(h.begin(), h.end());
      EXPECT_EQ(mueger_centralizer(md, mueger_centralizer(md, a)), a) << n;
    }
  }
  MetricGroup big = direct_sum(metric_group_by_name("toric-code"), metric_group_by_name("toric-code"));
  ModularData md = from_metric_group(big);
  for (const auto& h : all_subgroups(big.group())) {
    std::vector<int> a(h.begin(), h.end());
    EXPECT_EQ(mueger_centralizer(md, mueger_centralizer(md, a)), a);
  }
}

TEST(ModularDataProperty, CondensationKeepsAxioms) {
  for (const auto& n : metric_group_names()) {
    MetricGroup mg = metric_group_by_name(n);
    if (!is_nondegenerate(mg)) continue;
    ModularData md = from_metric_group(mg);
    for (const auto& h : isotropic_subgroups(mg)) {
      ModularData c = condense_grouplike(md, std::vector<int>(h.begin(), h.end()));
      EXPECT_TRUE(verify_modular_axioms(c).ok) << n;
    }
  }
}

TEST(ModularDataProperty, VerlindeMultiplicative) {
  std::vector<std::string> names = {"toric-code", "semion", "ising", "fibonacci", "z4-3"};
  for (const auto& a : names)
    for (const auto& b : names) {
      ModularData p = deligne_product(md_of(a), md_of(b));
      for (int g = 0; g <= 2; ++g)
        EXPECT_EQ(verlinde_genus_dim(p, g), verlinde_genus_dim(md_of(a), g) * verlinde_genus_dim(md_of(b), g)) << a << " " << b;
    }
}
