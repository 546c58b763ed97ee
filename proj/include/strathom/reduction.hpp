#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/backend.hpp"
#include "strathom/moves.hpp"
#include "strathom/surface.hpp"

namespace strathom {

/// Options for the reduction drivers. With `rng` set, each step picks a
/// uniformly random applicable move instead of the deterministic one.
struct ReduceOptions {
  std::vector<std::string>* trace = nullptr;
  std::mt19937_64* rng = nullptr;
};

namespace detail {

inline void log_step(const ReduceOptions& opt, const std::string& what, const StratifiedSurface& s) {
  if (!opt.trace) return;
  CellCounts c = cell_counts(s);
  opt.trace->push_back(what + ": V=" + std::to_string(c.v) + " E=" + std::to_string(c.e) + " F=" + std::to_string(c.f) +
                       " chi=" + std::to_string(c.euler()) + " g=" + std::to_string(c.genus()));
}

template <class T>
const T& pick(const std::vector<T>& v, const ReduceOptions& opt) {
  if (!opt.rng) return v.front();
  std::uniform_int_distribution<std::size_t> u(0, v.size() - 1);
  return v[u(*opt.rng)];
}

/// Non-loop edges, first those at the vertex of dart 0 in rotation order (BFS from the least vertex).
inline std::vector<int> contractible_edges(const StratifiedSurface& s, bool all) {
  std::vector<int> out;
  int d = 0;
  do {
    if (!same_vertex(s, d, s.alpha[d])) {
      out.push_back(d);
      if (!all) return out;
    }
    d = s.sigma[d];
  } while (d != 0);
  if (!all) return out;
  for (int x = 0; x < s.darts(); ++x)
    if (x == s.canonical_of(x) && !same_vertex(s, x, s.alpha[x])) out.push_back(x);
  return out;
}

/// One step of the sphere strategy: contract toward the least vertex, then
/// collapse bigons, then remove monogons. Returns false when no edges remain.
inline bool reduce_step(StratifiedSurface& s, const ReduceOptions& opt) {
  if (s.empty()) return false;
  bool random = opt.rng != nullptr;
  auto edges = contractible_edges(s, random);
  if (!edges.empty()) {
    int d = pick(edges, opt);
    s = move_contract(s, d);
    log_step(opt, "contract " + std::to_string(d), s);
    return true;
  }
  std::vector<int> bigons, monogons;
  for (const auto& f : face_orbits(s)) {
    if (f.size() == 2 && f[1] != s.alpha[f[0]]) bigons.push_back(f[0]);
    if (f.size() == 1) monogons.push_back(f[0]);
  }
  if (random) {
    std::vector<int> all = bigons;
    all.insert(all.end(), monogons.begin(), monogons.end());
    if (all.empty()) return false;
    int x = pick(all, opt);
    bool bigon = s.phi(x) != x;
    s = bigon ? collapse_bigon_at(s, x).surface : remove_monogon(s, x);
    log_step(opt, (bigon ? "collapse-bigon " : "remove-monogon ") + std::to_string(x), s);
    return true;
  }
  if (!bigons.empty()) {
    int x = bigons.front();
    s = collapse_bigon_at(s, x).surface;
    log_step(opt, "collapse-bigon " + std::to_string(x), s);
    return true;
  }
  if (!monogons.empty()) {
    int x = monogons.front();
    s = remove_monogon(s, x);
    log_step(opt, "remove-monogon " + std::to_string(x), s);
    return true;
  }
  return false;
}

inline bool interlaced(const std::vector<int>& pos, int a1, int a2, int b1, int b2) {
  int lo = std::min(pos[a1], pos[a2]), hi = std::max(pos[a1], pos[a2]);
  bool in1 = pos[b1] > lo && pos[b1] < hi;
  bool in2 = pos[b2] > lo && pos[b2] < hi;
  return in1 != in2;
}

}  // namespace detail

/// Reduces a genus-0 surface to a single vertex with no edges.
inline StratifiedSurface reduce_to_points(StratifiedSurface s, const ReduceOptions& opt = {}) {
  if (genus(s) != 0) throw DomainError("reduce_to_points: genus is " + std::to_string(genus(s)));
  while (detail::reduce_step(s, opt)) {
  }
  return s;
}

/// Lowers the genus by one. The map is first brought to one vertex without
/// monogons or bigons; then a pair of interlaced loops with identity walls
/// inside one face category C is cut away and the vertex label P becomes
/// VertexFuse(P, ForgetTo1Disk(C), Coend(C)).
inline StratifiedSurface reduce_genus(StratifiedSurface s, const ReduceOptions& opt = {}) {
  int g = genus(s);
  if (g == 0) throw DomainError("reduce_genus: surface has genus 0");
  ReduceOptions det = opt;
  det.rng = nullptr;
  while (detail::reduce_step(s, det)) {
  }
  Backend backend(s.base);
  int n = s.darts();
  std::vector<int> pos(n);
  for (int d = 0, i = 0; i < n; d = s.sigma[d], ++i) pos[d] = i;
  auto fidx = orbit_index(face_orbits(s), n);
  std::vector<int> loops;
  for (int d = 0; d < n; ++d)
    if (s.canonical[d]) loops.push_back(d);
  std::string last_error = "no interlaced pair of loops";
  for (std::size_t i = 0; i < loops.size(); ++i) {
    for (std::size_t j = i + 1; j < loops.size(); ++j) {
      int a = loops[i], b = loops[j];
      if (!detail::interlaced(pos, a, s.alpha[a], b, s.alpha[b])) continue;
      FaceCat c;
      try {
        c = backend.face(s.face_label[a]);
        for (int d : {a, s.alpha[a], b, s.alpha[b]}) {
          for (int x = 0; x < n; ++x)
            if (fidx[x] == fidx[d] && !(backend.face(s.face_label[x]) == c))
              throw DomainError("faces around the handle differ");
          if (s.canonical[d] && !backend.wall(s.edge_label[d]).is_identity())
            throw DomainError("handle wall " + to_string(s.edge_label[d]) + " is not the identity");
        }
      } catch (const DomainError& e) {
        last_error = e.what();
        continue;
      }
      std::vector<char> removed(n, 0);
      for (int d : {a, s.alpha[a], b, s.alpha[b]}) removed[d] = 1;
      StratifiedSurface t = detail::remove_darts(s, removed).surface;
      if (genus(t) != g - 1) {
        last_error = "cutting loops " + std::to_string(a) + ", " + std::to_string(b) + " does not lower the genus";
        continue;
      }
      Label cl = s.face_label[a];
      auto relabel = [&](const Label& p) {
        return make_term("VertexFuse", {p, make_term("ForgetTo1Disk", {cl}), make_term("Coend", {cl})});
      };
      if (t.empty()) {
        t.lone_face = cl;
        t.lone_vertex = relabel(s.vertex_label[anchor_of(s, 0)]);
      } else {
        auto fo = face_orbits(t);
        for (const auto& f : fo)
          for (int d : f) t.face_label[d] = t.face_label[f[0]];
        int anchor = anchor_of(t, 0);
        t.vertex_label[anchor] = relabel(t.vertex_label[anchor]);
      }
      detail::log_step(opt, "cut-handle " + std::to_string(a) + " " + std::to_string(b), t);
      return t;
    }
  }
  throw DomainError("reduce_genus: " + last_error);
}

/// Class of u_Σ: multiplicity of each simple of E, indexed like the elements of E.
struct EvaluationResult {
  std::string base;
  std::vector<std::string> simples;
  std::vector<std::int64_t> multiplicities;
  std::int64_t gsd_unit = 0;
  std::int64_t total_dim = 0;

  friend bool operator==(const EvaluationResult&, const EvaluationResult&) = default;
};

inline std::string format_evaluation(const EvaluationResult& r) {
  std::ostringstream os;
  os << "base: " << r.base << "\n";
  os << "multiplicities:";
  for (std::size_t i = 0; i < r.simples.size(); ++i) os << " " << r.simples[i] << "=" << r.multiplicities[i];
  os << "\n";
  os << "gsd: " << r.gsd_unit << "\n";
  os << "total_dim: " << r.total_dim << "\n";
  return os.str();
}

/// Value of a one-vertex sphere in the backend.
inline EvaluationResult evaluate_reduced(const StratifiedSurface& s) {
  if (!s.empty()) throw DomainError("evaluate_reduced: surface still has edges");
  Backend backend(s.base);
  FaceCat c = backend.face(s.lone_face);
  K0Vector v = backend.point(s.lone_vertex, c);
  EvaluationResult r;
  r.base = s.base;
  r.multiplicities = backend.e_multiplicities(c, v);
  const auto& e = backend.base();
  for (int i = 0; i < e.order(); ++i) r.simples.push_back(e.group().element_str(i));
  for (auto m : r.multiplicities) {
    if (m < 0) throw DomainError("negative multiplicity in evaluation");
    r.total_dim += m;
  }
  r.gsd_unit = r.multiplicities[0];
  return r;
}

/// Reduces the genus to zero, the graph to a point, and evaluates the remaining vertex label.
inline EvaluationResult evaluate(StratifiedSurface s, const ReduceOptions& opt = {}) {
  Report v = validate_surface(s);
  if (!v.ok) {
    for (const auto& l : v.lines)
      if (l.rfind("FAIL", 0) == 0) throw DomainError("invalid surface: " + l.substr(5));
  }
  while (genus(s) > 0) s = reduce_genus(s, opt);
  s = reduce_to_points(s, opt);
  return evaluate_reduced(s);
}

}  // namespace strathom
