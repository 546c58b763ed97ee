#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/errors.hpp"

namespace strathom {

/// Z/n1 x ... x Z/nr with n1 | n2 | ... | nr. Elements are indexed in mixed
/// radix with the first coordinate most significant, so index order is the
/// lexicographic order of tuples.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) throw InputError("invariant factor must be at least 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0) throw InputError("invariant factors must form a divisibility chain");
    }
    order_ = 1;
    for (int n : factors_) order_ *= n;
  }

  const std::vector<int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int order() const { return order_; }
  int zero() const { return 0; }

  std::vector<int> decode(int x) const {
    std::vector<int> a(factors_.size());
    for (int i = rank() - 1; i >= 0; --i) {
      a[i] = x % factors_[i];
      x /= factors_[i];
    }
    return a;
  }
  int encode(const std::vector<int>& a) const {
    int x = 0;
    for (int i = 0; i < rank(); ++i) x = x * factors_[i] + (((a[i] % factors_[i]) + factors_[i]) % factors_[i]);
    return x;
  }

  int add(int x, int y) const {
    int r = 0, mult = 1;
    for (int i = rank() - 1; i >= 0; --i) {
      int n = factors_[i];
      int d = (x % n + y % n) % n;
      x /= n;
      y /= n;
      r += d * mult;
      mult *= n;
    }
    return r;
  }
  int neg(int x) const {
    int r = 0, mult = 1;
    for (int i = rank() - 1; i >= 0; --i) {
      int n = factors_[i];
      int d = (n - x % n) % n;
      x /= n;
      r += d * mult;
      mult *= n;
    }
    return r;
  }
  int sub(int x, int y) const { return add(x, neg(y)); }
  int mul(long long k, int x) const {
    int r = 0, mult = 1;
    for (int i = rank() - 1; i >= 0; --i) {
      int n = factors_[i];
      long long d = ((k % n) * (x % n)) % n;
      if (d < 0) d += n;
      x /= n;
      r += static_cast<int>(d) * mult;
      mult *= n;
    }
    return r;
  }
  /// Index of the i-th standard generator.
  int generator(int i) const {
    std::vector<int> a(factors_.size(), 0);
    a[i] = 1;
    return encode(a);
  }
  int element_order(int x) const {
    int o = 1;
    std::vector<int> a = decode(x);
    for (int i = 0; i < rank(); ++i) {
      int n = factors_[i];
      int oi = n / std::gcd(n, a[i]);
      o = std::lcm(o, oi);
    }
    return o;
  }

  std::string element_str(int x) const {
    std::ostringstream os;
    os << '(';
    std::vector<int> a = decode(x);
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ')';
    return os.str();
  }
  int parse_element(const std::string& text) const {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || (s.front() != '(' && s.front() != '[') || (s.back() != ')' && s.back() != ']'))
      throw InputError("bad element tuple: " + text);
    s = s.substr(1, s.size() - 2);
    std::vector<int> a;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        int v = std::stoi(part, &used);
        if (used != part.size()) throw InputError("bad element tuple: " + text);
        a.push_back(v);
      } catch (const std::logic_error&) {
        throw InputError("bad element tuple: " + text);
      }
    }
    if (static_cast<int>(a.size()) != rank()) throw InputError("element tuple has wrong length: " + text);
    for (int i = 0; i < rank(); ++i)
      if (a[i] < 0 || a[i] >= factors_[i]) throw InputError("element coordinate out of range: " + text);
    return encode(a);
  }

  std::string factors_str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " " : "") << factors_[i];
    return os.str();
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return !(a == b); }

 private:
  std::vector<int> factors_;
  int order_ = 1;
};

/// A subgroup as the sorted list of its element indices.
using Subgroup = std::vector<int>;

/// Canonical subgroup order: by size, then by sorted element tuples.
inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Subgroup generated_subgroup(const FiniteAbelianGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (int x : gens) {
      int y = g.add(elems[i], x);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

inline Subgroup whole_group(const FiniteAbelianGroup& g) {
  Subgroup s(g.order());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

/// Subgroups all of whose elements pass `keep`, in canonical order. `keep` must
/// hold at 0 and be such that a subgroup qualifies iff its elements do.
inline std::vector<Subgroup> filtered_subgroups(const FiniteAbelianGroup& g, const std::function<bool(const Subgroup&)>& keep) {
  std::set<Subgroup> seen{Subgroup{0}};
  std::vector<Subgroup> found{Subgroup{0}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (int x = 0; x < g.order(); ++x) {
      if (std::binary_search(found[i].begin(), found[i].end(), x)) continue;
      std::vector<int> gens = found[i];
      gens.push_back(x);
      Subgroup s = generated_subgroup(g, gens);
      if (seen.count(s)) continue;
      seen.insert(s);
      if (!keep(s)) continue;
      found.push_back(std::move(s));
    }
  }
  std::sort(found.begin(), found.end(), subgroup_less);
  return found;
}

/// All subgroups in canonical order.
inline std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& g) {
  return filtered_subgroups(g, [](const Subgroup&) { return true; });
}

/// Invariant-factor presentation of an abstract finite abelian group.
/// `image[k]` is the source element matching index k of `group`.
struct GroupIso {
  FiniteAbelianGroup group;
  std::vector<int> image;
};

/// Finds an invariant-factor basis of the group on elements 0..m-1 with the
/// given addition. Generators are chosen by backtracking in index order.
inline GroupIso normalize_group(int m, int zero, const std::function<int(int, int)>& add) {
  std::vector<int> ord(m, 1);
  for (int x = 0; x < m; ++x) {
    int y = x, o = 1;
    while (y != zero) {
      y = add(y, x);
      ++o;
    }
    ord[x] = o;
  }
  auto times = [&](int k, int x) {
    int y = zero;
    for (int i = 0; i < k; ++i) y = add(y, x);
    return y;
  };
  std::vector<int> primes;
  {
    int r = m;
    for (int p = 2; p <= r; ++p)
      if (r % p == 0) {
        primes.push_back(p);
        while (r % p == 0) r /= p;
      }
  }
  struct PrimePart {
    int p;
    std::vector<int> exps;  // descending
    std::vector<int> gens;
  };
  std::vector<PrimePart> parts;
  for (int p : primes) {
    std::vector<int> elems;
    for (int x = 0; x < m; ++x) {
      int o = ord[x];
      while (o % p == 0) o /= p;
      if (o == 1) elems.push_back(x);
    }
    int maxe = 0;
    for (int x : elems) {
      int o = ord[x], e = 0;
      while (o > 1) {
        o /= p;
        ++e;
      }
      maxe = std::max(maxe, e);
    }
    // count[j] = |{x : p^j x = 0}|
    std::vector<int> logc(maxe + 2, 0);
    for (int j = 0; j <= maxe + 1; ++j) {
      int pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      int c = 0;
      for (int x : elems)
        if (pj % ord[x] == 0) ++c;
      int l = 0;
      while (c > 1) {
        c /= p;
        ++l;
      }
      logc[j] = l;
    }
    std::vector<int> at_least(maxe + 2, 0);  // number of factors of order >= p^j
    for (int j = 1; j <= maxe; ++j) at_least[j] = logc[j] - logc[j - 1];
    PrimePart part{p, {}, {}};
    for (int j = maxe; j >= 1; --j) {
      int exactly = at_least[j] - at_least[j + 1];
      for (int t = 0; t < exactly; ++t) part.exps.push_back(j);
    }
    // backtracking basis search
    std::vector<char> span(m, 0);
    span[zero] = 1;
    std::vector<int> span_list{zero};
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (i == part.exps.size()) return true;
      int want = 1;
      for (int t = 0; t < part.exps[i]; ++t) want *= p;
      for (int x : elems) {
        if (ord[x] != want) continue;
        bool ok = true;
        for (int k = 1; k < want && ok; ++k)
          if (span[times(k, x)]) ok = false;
        if (!ok) continue;
        std::vector<int> added;
        for (int s : span_list) {
          int y = s;
          for (int k = 1; k < want; ++k) {
            y = add(y, x);
            if (!span[y]) {
              span[y] = 1;
              added.push_back(y);
            }
          }
        }
        std::size_t old = span_list.size();
        span_list.insert(span_list.end(), added.begin(), added.end());
        part.gens.push_back(x);
        if (rec(i + 1)) return true;
        part.gens.pop_back();
        span_list.resize(old);
        for (int y : added) span[y] = 0;
      }
      return false;
    };
    if (!rec(0)) throw DomainError("invariant factor basis search failed");
    parts.push_back(std::move(part));
  }
  std::size_t slots = 0;
  for (const auto& part : parts) slots = std::max(slots, part.exps.size());
  std::vector<int> factors(slots, 1), gens(slots, zero);
  for (const auto& part : parts) {
    // exps descending; align the largest with the last slot
    for (std::size_t t = 0; t < part.exps.size(); ++t) {
      std::size_t slot = slots - 1 - t;
      int pe = 1;
      for (int u = 0; u < part.exps[t]; ++u) pe *= part.p;
      factors[slot] *= pe;
      gens[slot] = add(gens[slot], part.gens[t]);
    }
  }
  GroupIso out{FiniteAbelianGroup(factors), std::vector<int>(m, zero)};
  for (int k = 0; k < m; ++k) {
    std::vector<int> a = out.group.decode(k);
    int y = zero;
    for (std::size_t i = 0; i < slots; ++i) y = add(y, times(a[i], gens[i]));
    out.image[k] = y;
  }
  return out;
}

/// A subgroup of `g` as an abstract group; `incl[k]` is the element of g.
struct SubgroupStructure {
  FiniteAbelianGroup group;
  std::vector<int> incl;
};

inline SubgroupStructure subgroup_structure(const FiniteAbelianGroup& g, const Subgroup& h) {
  if (static_cast<int>(h.size()) == g.order()) return {g, whole_group(g)};
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);
  GroupIso iso = normalize_group(static_cast<int>(h.size()), pos[0], [&](int a, int b) { return pos[g.add(h[a], h[b])]; });
  SubgroupStructure out{iso.group, {}};
  out.incl.reserve(h.size());
  for (int k : iso.image) out.incl.push_back(h[k]);
  return out;
}

/// P / H for subgroups H <= P of g. `rep[k]` is the least element of coset k;
/// `cls[x]` is the coset of x in P, or -1 outside P.
struct QuotientStructure {
  FiniteAbelianGroup group;
  std::vector<int> rep;
  std::vector<int> cls;
};

inline QuotientStructure quotient_structure(const FiniteAbelianGroup& g, const Subgroup& p, const Subgroup& h) {
  std::vector<int> coset_of(g.order(), -1);
  std::vector<int> reps;
  for (int x : p) {
    if (coset_of[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int y : h) coset_of[g.add(x, y)] = id;
  }
  int m = static_cast<int>(reps.size());
  QuotientStructure out;
  if (m == 1) {
    out.group = FiniteAbelianGroup();
    out.rep = {reps[0]};
  } else {
    GroupIso iso = normalize_group(m, coset_of[0], [&](int a, int b) { return coset_of[g.add(reps[a], reps[b])]; });
    out.group = iso.group;
    for (int k : iso.image) out.rep.push_back(reps[k]);
  }
  std::vector<int> new_index(m);
  for (int k = 0; k < m; ++k) new_index[coset_of[out.rep[k]]] = k;
  out.cls.assign(g.order(), -1);
  for (int x : p) out.cls[x] = new_index[coset_of[x]];
  return out;
}

/// Direct product G x H with the first factor most significant in the source
/// indexing (a, b) -> a * |H| + b. `image[k]` is that source index.
inline GroupIso product_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  std::vector<int> f = a.factors();
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  bool chain = true;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] % f[i - 1] != 0) chain = false;
  int m = a.order() * b.order();
  if (chain) {
    GroupIso out{FiniteAbelianGroup(f), std::vector<int>(m)};
    std::iota(out.image.begin(), out.image.end(), 0);
    return out;
  }
  int nb = b.order();
  return normalize_group(m, 0, [&](int x, int y) { return a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb); });
}

}  // namespace strathom
