#pragma once

#include <functional>
#include <vector>

#include "strathom/metric_group.hpp"

namespace strathom {

/// Quadratic form determined by q on the invariant-factor generators and b
/// on pairs of distinct generators (upper triangle, b[i][j] for i < j).
inline MetricGroup form_from_generator_data(const FiniteAbelianGroup& g, const std::vector<RationalMod1>& qgen,
                                            const std::vector<std::vector<RationalMod1>>& bgen) {
  std::vector<RationalMod1> q(g.order());
  int r = g.rank();
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> a = g.decode(x);
    RationalMod1 v;
    for (int i = 0; i < r; ++i) {
      v += static_cast<std::int64_t>(a[i]) * a[i] * qgen[i];
      for (int j = i + 1; j < r; ++j) v += static_cast<std::int64_t>(a[i]) * a[j] * bgen[i][j];
    }
    q[x] = v;
  }
  return MetricGroup(g, std::move(q));
}

/// Every quadratic form on g: q(g_i) ranges over (1/2n_i)Z or (1/n_i)Z by the
/// parity of n_i, and b(g_i, g_j) over (1/gcd(n_i, n_j))Z.
inline void for_each_quadratic_form(const FiniteAbelianGroup& g, const std::function<void(const MetricGroup&)>& visit) {
  int r = g.rank();
  const auto& n = g.factors();
  std::vector<int> qden(r);
  for (int i = 0; i < r; ++i) qden[i] = (n[i] % 2 == 0) ? 2 * n[i] : n[i];
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
  std::vector<RationalMod1> qgen(r);
  std::vector<std::vector<RationalMod1>> bgen(r, std::vector<RationalMod1>(r));
  std::function<void(int)> rec_b;
  std::function<void(int)> rec_q = [&](int i) {
    if (i == r) {
      rec_b(0);
      return;
    }
    for (int k = 0; k < qden[i]; ++k) {
      qgen[i] = RationalMod1(k, qden[i]);
      rec_q(i + 1);
    }
  };
  rec_b = [&](int p) {
    if (p == static_cast<int>(pairs.size())) {
      visit(form_from_generator_data(g, qgen, bgen));
      return;
    }
    auto [i, j] = pairs[p];
    int d = std::gcd(n[i], n[j]);
    for (int k = 0; k < d; ++k) {
      bgen[i][j] = RationalMod1(k, d);
      rec_b(p + 1);
    }
  };
  rec_q(0);
}

/// All groups of order n as invariant-factor lists, in lexicographic order.
inline std::vector<FiniteAbelianGroup> abelian_groups_of_order(int n) {
  std::vector<std::vector<int>> out;
  std::function<void(int, std::vector<int>&)> rec = [&](int rest, std::vector<int>& cur) {
    if (rest == 1) {
      out.push_back(cur);
      return;
    }
    for (int d = 2; d <= rest; ++d) {
      if (rest % d != 0) continue;
      if (!cur.empty() && d % cur.back() != 0) continue;
      // remaining factors must be multiples of d
      int r2 = rest / d;
      if (r2 != 1 && r2 % d != 0) continue;
      cur.push_back(d);
      rec(r2, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(n, cur);
  std::sort(out.begin(), out.end());
  std::vector<FiniteAbelianGroup> gs;
  for (auto& f : out) gs.emplace_back(f);
  return gs;
}

}  // namespace strathom
