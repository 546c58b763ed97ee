#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "strathom/abelian_group.hpp"
#include "strathom/cyclotomic.hpp"
#include "strathom/errors.hpp"
#include "strathom/rational.hpp"

namespace strathom {

/// Finite abelian group with a quadratic form q: G -> Q/Z, stored as a table.
class MetricGroup {
 public:
  MetricGroup() : q_{RationalMod1()} {}
  MetricGroup(FiniteAbelianGroup g, std::vector<RationalMod1> q) : g_(std::move(g)), q_(std::move(q)) {
    if (static_cast<int>(q_.size()) != g_.order()) throw InputError("q table size does not match group order");
  }

  const FiniteAbelianGroup& group() const { return g_; }
  int order() const { return g_.order(); }
  const RationalMod1& q(int x) const { return q_[x]; }
  const std::vector<RationalMod1>& q_table() const { return q_; }
  RationalMod1 b(int x, int y) const { return q_[g_.add(x, y)] - q_[x] - q_[y]; }

  /// Empty when q is even and b is biadditive; otherwise the first violation.
  std::string validate() const {
    for (int x = 0; x < order(); ++x)
      if (q_[g_.neg(x)] != q_[x]) return "q(-x) != q(x) at x = " + g_.element_str(x);
    if (!q_[0].is_zero()) return "q(0) != 0";
    // additivity in the first slot against generators implies biadditivity (b is symmetric)
    for (int i = 0; i < g_.rank(); ++i) {
      int y = g_.generator(i);
      for (int x = 0; x < order(); ++x)
        for (int z = 0; z < order(); ++z)
          if (b(g_.add(x, y), z) != b(x, z) + b(y, z))
            return "b not biadditive at " + g_.element_str(x) + "," + g_.element_str(y) + "," + g_.element_str(z);
    }
    return {};
  }

  friend bool operator==(const MetricGroup& a, const MetricGroup& b) { return a.g_ == b.g_ && a.q_ == b.q_; }
  friend bool operator!=(const MetricGroup& a, const MetricGroup& b) { return !(a == b); }

 private:
  FiniteAbelianGroup g_;
  std::vector<RationalMod1> q_;
};

/// Injective q-preserving homomorphism; map[x] is the image of source element x.
struct MetricEmbedding {
  MetricGroup source;
  MetricGroup target;
  std::vector<int> map;

  std::string validate() const {
    const auto& gs = source.group();
    const auto& gt = target.group();
    if (static_cast<int>(map.size()) != source.order()) return "embedding map has wrong size";
    std::vector<char> hit(target.order(), 0);
    for (int x = 0; x < source.order(); ++x) {
      if (map[x] < 0 || map[x] >= target.order()) return "embedding image out of range";
      if (hit[map[x]]) return "embedding not injective";
      hit[map[x]] = 1;
      if (target.q(map[x]) != source.q(x)) return "embedding does not preserve q at " + gs.element_str(x);
      for (int y = 0; y < source.order(); ++y)
        if (map[gs.add(x, y)] != gt.add(map[x], map[y])) return "embedding not a homomorphism";
    }
    return {};
  }
  Subgroup image() const {
    Subgroup s(map.begin(), map.end());
    std::sort(s.begin(), s.end());
    return s;
  }
  friend bool operator==(const MetricEmbedding& a, const MetricEmbedding& b) {
    return a.source == b.source && a.target == b.target && a.map == b.map;
  }
};

inline MetricGroup trivial_metric_group() { return MetricGroup(); }

/// Embedding of the trivial group.
inline MetricEmbedding zero_embedding(const MetricGroup& target) { return {trivial_metric_group(), target, {0}}; }

inline MetricEmbedding identity_embedding(const MetricGroup& m) {
  std::vector<int> id(m.order());
  for (int i = 0; i < m.order(); ++i) id[i] = i;
  return {m, m, id};
}

inline std::vector<std::vector<RationalMod1>> bicharacter(const MetricGroup& mg) {
  std::vector<std::vector<RationalMod1>> t(mg.order(), std::vector<RationalMod1>(mg.order()));
  for (int x = 0; x < mg.order(); ++x)
    for (int y = 0; y < mg.order(); ++y) t[x][y] = mg.b(x, y);
  return t;
}

inline Subgroup orthogonal_complement(const MetricGroup& mg, const Subgroup& h) {
  Subgroup out;
  for (int x = 0; x < mg.order(); ++x) {
    bool ok = true;
    for (int y : h)
      if (!mg.b(x, y).is_zero()) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

inline Subgroup radical(const MetricGroup& mg) { return orthogonal_complement(mg, whole_group(mg.group())); }

inline bool is_nondegenerate(const MetricGroup& mg) { return radical(mg).size() == 1; }

enum class SymmetricKind { Tannakian, SuperTannakian, NotSymmetric };

inline SymmetricKind classify_symmetric(const MetricGroup& mg) {
  if (static_cast<int>(radical(mg).size()) != mg.order()) return SymmetricKind::NotSymmetric;
  for (int x = 0; x < mg.order(); ++x)
    if (!mg.q(x).is_zero()) return SymmetricKind::SuperTannakian;
  return SymmetricKind::Tannakian;
}

inline std::string to_string(SymmetricKind k) {
  switch (k) {
    case SymmetricKind::Tannakian:
      return "Tannakian";
    case SymmetricKind::SuperTannakian:
      return "super-Tannakian";
    default:
      return "not-symmetric";
  }
}

inline bool is_isotropic(const MetricGroup& mg, const Subgroup& h) {
  for (int x : h)
    if (!mg.q(x).is_zero()) return false;
  return true;
}

inline std::vector<Subgroup> isotropic_subgroups(const MetricGroup& mg) {
  return filtered_subgroups(mg.group(), [&](const Subgroup& s) { return is_isotropic(mg, s); });
}

/// q restricted to a subgroup, with the inclusion map.
inline MetricEmbedding restrict_to(const MetricGroup& mg, const Subgroup& h) {
  SubgroupStructure st = subgroup_structure(mg.group(), h);
  std::vector<RationalMod1> q;
  q.reserve(st.incl.size());
  for (int x : st.incl) q.push_back(mg.q(x));
  return {MetricGroup(st.group, std::move(q)), mg, st.incl};
}

/// Result of H^perp / H with the coset bookkeeping back to the input group.
struct Condensation {
  MetricGroup result;
  std::vector<int> rep;  ///< result element -> least representative
  std::vector<int> cls;  ///< input element -> result element, or -1 outside H^perp
};

inline Condensation condense_with_maps(const MetricGroup& mg, const Subgroup& h) {
  if (!is_isotropic(mg, h)) throw DomainError("non-isotropic condensation");
  Subgroup perp = orthogonal_complement(mg, h);
  QuotientStructure qs = quotient_structure(mg.group(), perp, h);
  std::vector<RationalMod1> q;
  for (int x : qs.rep) q.push_back(mg.q(x));
  return {MetricGroup(qs.group, std::move(q)), qs.rep, qs.cls};
}

inline MetricGroup condense(const MetricGroup& mg, const Subgroup& h) { return condense_with_maps(mg, h).result; }

/// Direct sum with the two coordinate inclusions.
struct DirectSum {
  MetricGroup sum;
  std::vector<int> inl;  ///< a-element -> sum element
  std::vector<int> inr;  ///< b-element -> sum element
  std::vector<std::pair<int, int>> parts;  ///< sum element -> (a, b)
};

inline DirectSum direct_sum_with_maps(const MetricGroup& a, const MetricGroup& b) {
  GroupIso iso = product_group(a.group(), b.group());
  int nb = b.order();
  DirectSum out;
  std::vector<RationalMod1> q(iso.image.size());
  std::vector<int> where(iso.image.size());
  out.parts.resize(iso.image.size());
  for (std::size_t k = 0; k < iso.image.size(); ++k) {
    int src = iso.image[k];
    q[k] = a.q(src / nb) + b.q(src % nb);
    where[src] = static_cast<int>(k);
    out.parts[k] = {src / nb, src % nb};
  }
  out.sum = MetricGroup(iso.group, std::move(q));
  out.inl.resize(a.order());
  out.inr.resize(b.order());
  for (int x = 0; x < a.order(); ++x) out.inl[x] = where[x * nb];
  for (int y = 0; y < b.order(); ++y) out.inr[y] = where[y];
  return out;
}

inline MetricGroup direct_sum(const MetricGroup& a, const MetricGroup& b) { return direct_sum_with_maps(a, b).sum; }

inline MetricGroup conjugate(const MetricGroup& mg) {
  std::vector<RationalMod1> q;
  for (const auto& v : mg.q_table()) q.push_back(-v);
  return MetricGroup(mg.group(), std::move(q));
}

inline Cyclotomic gauss_sum(const MetricGroup& mg) {
  std::map<Rational, std::int64_t> counts;
  for (const auto& v : mg.q_table()) counts[v.value()]++;
  Cyclotomic s;
  for (const auto& [v, c] : counts) s += root_of_unity(RationalMod1(v)).scaled(Rational(c));
  return s;
}

/// Depth-first search over homomorphisms defined on invariant-factor
/// generators, in lexicographic order of the generator images. Calls `visit`
/// with each injective q-preserving map (source element -> target element)
/// that sends every pair in `fixed` to its prescribed image; stops when
/// `visit` returns true.
inline void for_each_isometric_embedding(const MetricGroup& a, const MetricGroup& b,
                                         const std::vector<std::pair<int, int>>& fixed,
                                         const std::function<bool(const std::vector<int>&)>& visit) {
  const auto& ga = a.group();
  const auto& gb = b.group();
  if (b.order() % a.order() != 0) return;
  int r = ga.rank();
  std::vector<int> gens(r);
  for (int i = 0; i < r; ++i) gens[i] = ga.generator(i);
  std::vector<std::vector<int>> cand(r);
  for (int i = 0; i < r; ++i) {
    int n = ga.factors()[i];
    for (int y = 0; y < gb.order(); ++y)
      if (gb.element_order(y) == n && b.q(y) == a.q(gens[i])) cand[i].push_back(y);
    if (cand[i].empty()) return;
  }
  std::vector<int> img(r, 0);
  std::vector<int> map(a.order());
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == r) {
      std::vector<char> hit(b.order(), 0);
      for (int x = 0; x < a.order(); ++x) {
        std::vector<int> c = ga.decode(x);
        int y = 0;
        for (int j = 0; j < r; ++j) y = gb.add(y, gb.mul(c[j], img[j]));
        if (hit[y]) return;
        hit[y] = 1;
        if (b.q(y) != a.q(x)) return;
        map[x] = y;
      }
      for (const auto& [x, y] : fixed)
        if (map[x] != y) return;
      if (visit(map)) stop = true;
      return;
    }
    for (int y : cand[i]) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (b.b(img[j], y) != a.b(gens[j], gens[i])) ok = false;
      if (!ok) continue;
      img[i] = y;
      rec(i + 1);
      if (stop) return;
    }
  };
  rec(0);
}

inline std::vector<std::vector<int>> all_isometric_embeddings(const MetricGroup& a, const MetricGroup& b) {
  std::vector<std::vector<int>> out;
  for_each_isometric_embedding(a, b, {}, [&](const std::vector<int>& m) {
    out.push_back(m);
    return false;
  });
  return out;
}

/// Multiset of q values, as sorted pairs.
inline std::vector<std::pair<Rational, int>> q_histogram(const MetricGroup& mg) {
  std::map<Rational, int> h;
  for (const auto& v : mg.q_table()) h[v.value()]++;
  return {h.begin(), h.end()};
}

/// First isometry a -> b in search order honouring the `fixed` pairs, if any.
inline std::optional<std::vector<int>> isometry_exists(const MetricGroup& a, const MetricGroup& b,
                                                       const std::vector<std::pair<int, int>>& fixed = {}) {
  if (a.group() != b.group()) return std::nullopt;
  if (q_histogram(a) != q_histogram(b)) return std::nullopt;
  std::optional<std::vector<int>> found;
  for_each_isometric_embedding(a, b, fixed, [&](const std::vector<int>& m) {
    found = m;
    return true;
  });
  return found;
}

inline std::vector<int> invert_map(const std::vector<int>& m) {
  std::vector<int> inv(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = static_cast<int>(i);
  return inv;
}

// ---- text format ----

inline std::string format_metric_group(const MetricGroup& mg) {
  std::ostringstream os;
  os << "factors:";
  for (int n : mg.group().factors()) os << ' ' << n;
  os << '\n';
  for (int x = 0; x < mg.order(); ++x) os << mg.group().element_str(x) << " : " << mg.q(x).str() << '\n';
  return os.str();
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Reads "factors:" and the q lines from `lines` starting at `pos`; advances pos.
inline MetricGroup parse_metric_group_lines(const std::vector<std::string>& lines, std::size_t& pos) {
  while (pos < lines.size() && trim(lines[pos]).empty()) ++pos;
  if (pos >= lines.size()) throw InputError("missing factors line");
  std::string head = trim(lines[pos++]);
  if (head.rfind("factors:", 0) != 0) throw InputError("expected 'factors:' line, got: " + head);
  std::vector<int> factors;
  {
    std::istringstream is(head.substr(8));
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t used = 0;
        factors.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw InputError("bad invariant factor: " + tok);
      } catch (const std::logic_error&) {
        throw InputError("bad invariant factor: " + tok);
      }
    }
  }
  FiniteAbelianGroup g(factors);
  std::vector<RationalMod1> q(g.order());
  std::vector<char> seen(g.order(), 0);
  for (int count = 0; count < g.order(); ++count) {
    while (pos < lines.size() && trim(lines[pos]).empty()) ++pos;
    if (pos >= lines.size()) throw InputError("missing q lines");
    std::string line = trim(lines[pos++]);
    auto colon = line.rfind(':');
    if (colon == std::string::npos) throw InputError("expected 'tuple : p/q', got: " + line);
    int x = g.parse_element(trim(line.substr(0, colon)));
    if (seen[x]) throw InputError("duplicate element line: " + line);
    seen[x] = 1;
    q[x] = RationalMod1::parse(trim(line.substr(colon + 1)));
  }
  MetricGroup mg(g, q);
  std::string err = mg.validate();
  if (!err.empty()) throw InputError("invalid quadratic form: " + err);
  return mg;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    lines.push_back(line);
  }
  return lines;
}

inline MetricGroup parse_metric_group(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t pos = 0;
  MetricGroup mg = parse_metric_group_lines(lines, pos);
  while (pos < lines.size() && trim(lines[pos]).empty()) ++pos;
  if (pos != lines.size()) throw InputError("trailing text after metric group");
  return mg;
}

/// "embedding: img(g1) img(g2) ..." listing images of the source generators.
inline std::string format_embedding_line(const MetricEmbedding& e) {
  std::ostringstream os;
  os << "embedding:";
  for (int i = 0; i < e.source.group().rank(); ++i) os << ' ' << e.target.group().element_str(e.map[e.source.group().generator(i)]);
  os << '\n';
  return os.str();
}

/// Extends generator images to the whole source group.
inline std::vector<int> extend_from_generators(const FiniteAbelianGroup& src, const FiniteAbelianGroup& dst, const std::vector<int>& imgs) {
  std::vector<int> m(src.order());
  for (int x = 0; x < src.order(); ++x) {
    std::vector<int> c = src.decode(x);
    int y = 0;
    for (int j = 0; j < src.rank(); ++j) y = dst.add(y, dst.mul(c[j], imgs[j]));
    m[x] = y;
  }
  return m;
}

}  // namespace strathom
