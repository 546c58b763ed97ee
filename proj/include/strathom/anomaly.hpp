#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "strathom/backend.hpp"
#include "strathom/center.hpp"
#include "strathom/modular_data.hpp"
#include "strathom/surface.hpp"

namespace strathom {

namespace detail {

inline std::string nondegeneracy_failure(const FaceCat& c, const Backend& b) {
  if (c.modular) {
    Report r = verify_modular_axioms(c.md);
    return r.ok ? "" : "modular data fails its axioms";
  }
  Subgroup rad = radical(c.mg);
  std::vector<int> img = c.e_map;
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  if (static_cast<int>(img.size()) != b.base().order()) return "E is not embedded";
  if (rad != img) return "degenerate over E: radical has order " + std::to_string(rad.size());
  return "";
}

inline std::string invertible_wall_failure(const Wall& w, const FaceCat& left, const FaceCat& right, const Backend& b) {
  if (!(w.left == left)) return "source category differs from the left face";
  if (!(w.right == right)) return "target category differs from the right face";
  int n = left.rank();
  if (static_cast<int>(w.map.size()) != n) return "map has the wrong size";
  std::vector<char> hit(n, 0);
  for (int x = 0; x < n; ++x) {
    if (w.map[x] < 0 || w.map[x] >= n || hit[w.map[x]]) return "map is not a bijection";
    hit[w.map[x]] = 1;
  }
  if (left.modular) {
    for (int i = 0; i < n; ++i) {
      if (left.md.T[i] != right.md.T[w.map[i]]) return "map does not preserve twists";
      for (int j = 0; j < n; ++j)
        if (left.md.s(i, j) != right.md.s(w.map[i], w.map[j])) return "map does not preserve S";
    }
    return "";
  }
  const auto& g = left.mg.group();
  const auto& h = right.mg.group();
  for (int x = 0; x < n; ++x) {
    if (left.mg.q(x) != right.mg.q(w.map[x])) return "map does not preserve q at " + g.element_str(x);
    for (int y = 0; y < n; ++y)
      if (w.map[g.add(x, y)] != h.add(w.map[x], w.map[y])) return "map is not a homomorphism";
  }
  for (int e = 0; e < b.base().order(); ++e)
    if (w.map[left.e_map[e]] != right.e_map[e]) return "map does not fix E";
  return "";
}

inline std::string fusion_wall_failure(const FusionOverE& m, const FaceCat& left, const FaceCat& right, const Backend& b) {
  if (left.modular || right.modular) return "?";
  BraidedEModule z = center_module(m);
  BraidedEModule bulk = relative_tensor(double_braiding_module(b.base(), conjugate(left.mg), left.e_map),
                                        double_braiding_module(b.base(), right.mg, right.e_map));
  if (!module_isometry(z, bulk)) return "center of " + m.name + " is not Conj(left) (x)_E right";
  return "";
}

}  // namespace detail

/// Closedness checks cell by cell. Cells whose labels lack backend data are
/// reported as assumed anomaly-free.
inline Report check_anomaly_free(const StratifiedSurface& s) {
  Report r = validate_surface(s);
  if (!r.ok) return r;
  Backend b(s.base);
  auto assumed = [&](const std::string& cell, const std::string& why) { r.note(cell + ": assumed anomaly-free (" + why + ")"); };

  auto face_cat = [&](const Label& l) -> std::optional<FaceCat> {
    try {
      return b.face(l);
    } catch (const SymbolicResidue&) {
      return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };

  auto check_face = [&](const std::string& cell, const Label& l) {
    try {
      FaceCat c = b.face(l);
      std::string why = detail::nondegeneracy_failure(c, b);
      if (why.empty())
        r.pass(cell + ": nondegenerate over E");
      else
        r.fail(cell + ": " + why);
    } catch (const SymbolicResidue& e) {
      assumed(cell, e.what());
    } catch (const DomainError& e) {
      r.fail(cell + ": " + e.what());
    }
  };

  if (s.empty()) {
    check_face("face *", s.lone_face);
    if (auto c = face_cat(s.lone_face)) {
      try {
        b.point(s.lone_vertex, *c);
        r.pass("vertex *: evaluates in its face");
      } catch (const SymbolicResidue& e) {
        assumed("vertex *", e.what());
      } catch (const DomainError& e) {
        r.fail(std::string("vertex *: ") + e.what());
      }
    }
    return r;
  }

  for (const auto& f : face_orbits(s)) check_face("face " + std::to_string(f[0]), s.face_label[f[0]]);

  for (int c = 0; c < s.darts(); ++c) {
    if (!s.canonical[c]) continue;
    std::string cell = "edge " + std::to_string(c);
    auto left = face_cat(s.face_label[c]);
    auto right = face_cat(s.face_label[s.alpha[c]]);
    try {
      Wall w = b.wall(s.edge_label[c]);
      if (!left || !right) {
        assumed(cell, "adjacent face without backend data");
        continue;
      }
      std::string why = w.invertible ? detail::invertible_wall_failure(w, *left, *right, b)
                                     : detail::fusion_wall_failure(*w.fusion, *left, *right, b);
      if (why == "?")
        assumed(cell, "fusion wall beside static modular data");
      else if (why.empty())
        r.pass(cell + (w.invertible ? ": invertible wall" : ": center matches the adjacent bulks"));
      else
        r.fail(cell + ": " + why);
    } catch (const SymbolicResidue& e) {
      assumed(cell, e.what());
    } catch (const DomainError& e) {
      r.fail(cell + ": " + e.what());
    }
  }

  for (const auto& v : vertex_orbits(s)) {
    int a = anchor_of(s, v[0]);
    std::string cell = "vertex " + std::to_string(a);
    auto ctx = face_cat(s.face_label[a]);
    if (!ctx) {
      assumed(cell, "anchor face without backend data");
      continue;
    }
    try {
      b.point(s.vertex_label[a], *ctx);
      // monodromy: carry every simple once around the vertex
      std::vector<int> map(ctx->rank());
      for (int i = 0; i < ctx->rank(); ++i) map[i] = i;
      int x = a;
      do {
        Wall w = s.canonical[x] ? b.wall(s.edge_label[x]) : b.wall(reversed(s.edge_label[s.alpha[x]]));
        if (!w.invertible) throw SymbolicResidue("fusion wall " + to_string(s.edge_label[s.canonical_of(x)]));
        for (int& m : map) m = w.map[m];
        x = s.sigma[x];
      } while (x != a);
      bool trivial = true;
      for (int i = 0; i < ctx->rank(); ++i) trivial = trivial && map[i] == i;
      if (trivial)
        r.pass(cell + ": evaluates, trivial monodromy");
      else
        r.fail(cell + ": nontrivial monodromy around the vertex");
    } catch (const SymbolicResidue& e) {
      assumed(cell, e.what());
    } catch (const DomainError& e) {
      r.fail(cell + ": " + e.what());
    }
  }
  return r;
}

}  // namespace strathom
