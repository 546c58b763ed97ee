#pragma once

#include <random>
#include <string>
#include <vector>

#include "strathom/backend.hpp"
#include "strathom/moves.hpp"
#include "strathom/surface.hpp"

namespace strathom {

/// Relabels one face: the new label F' must be isometric to the old F through
/// `iso` (a wall F' -> F). Boundary walls and anchored vertex labels are
/// composed with the isometry so that every value is unchanged.
inline StratifiedSurface gauge_flip(StratifiedSurface s, int face_dart, const Label& new_face, const Label& iso) {
  auto fidx = orbit_index(face_orbits(s), s.darts());
  Label old_face = s.face_label[face_dart];
  for (int x = 0; x < s.darts(); ++x) {
    if (fidx[x] != fidx[face_dart]) continue;
    if (s.canonical[x]) {
      s.edge_label[x] = make_term("EdgeMerge", {iso, old_face, s.edge_label[x]});
    } else {
      int c = s.alpha[x];
      s.edge_label[c] = make_term("EdgeMerge", {s.edge_label[c], old_face, reversed(iso)});
    }
    if (s.vertex_label[x]) s.vertex_label[x] = make_term("Along", {reversed(iso), s.vertex_label[x]});
  }
  for (int x = 0; x < s.darts(); ++x)
    if (fidx[x] == fidx[face_dart]) s.face_label[x] = new_face;
  return s;
}

/// Face category family for random spheres over the trivial base: a region
/// label and the gauge relabelings available for it.
struct GaugeFamily {
  Label face;
  std::vector<std::pair<Label, Label>> flips;  ///< (new face label, wall new -> old)
};

inline std::vector<GaugeFamily> gauge_families() {
  Label tc = make_atom("toric-code");
  Label ds = make_atom("double-semion");
  Label sa = make_term("RelProdOverE", {make_atom("semion"), make_atom("anti-semion")});
  Label ff = make_atom("three-fermion");
  Label z4 = make_atom("z4-1");
  return {
      {tc, {{tc, make_atom("em-swap")}}},
      {ds, {{sa, make_term("Iso", {sa, ds})}}},
      {ff, {{ff, make_term("Iso", {ff, ff})}}},
      {z4, {{make_term("Conj", {make_atom("z4-7")}), make_term("Iso", {make_term("Conj", {make_atom("z4-7")}), z4})}}},
  };
}

/// Random anomaly-free sphere over the trivial base: a random graph grown
/// by edge insertions and subdivisions, random charges at the vertices
/// (balanced to zero total charge with probability 1/2), then random gauge flips.
inline StratifiedSurface random_sphere(std::mt19937_64& rng, int steps) {
  auto fams = gauge_families();
  const GaugeFamily& fam = fams[std::uniform_int_distribution<std::size_t>(0, fams.size() - 1)(rng)];
  StratifiedSurface s = unstratified_surface("trivial", fam.face, 0);
  auto uni = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int i = 0; i < steps; ++i) {
    if (s.empty() || uni(3) != 0) {
      if (s.empty()) {
        s = move_add_edge(s, 0, 0, 0);
        continue;
      }
      auto faces = face_orbits(s);
      const auto& f = faces[uni(static_cast<int>(faces.size()))];
      s = move_add_edge(s, f[0], f[uni(static_cast<int>(f.size()))], f[uni(static_cast<int>(f.size()))]);
    } else {
      s = move_add_point(s, uni(s.darts()));
    }
  }
  Backend b("trivial");
  FaceCat c = b.face(fam.face);
  const auto& g = c.mg.group();
  std::vector<int> anchors;
  if (s.empty()) return s;
  for (const auto& v : vertex_orbits(s)) anchors.push_back(anchor_of(s, v[0]));
  bool balanced = uni(2) == 0;
  int total = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    int x = uni(g.order());
    if (balanced && i + 1 == anchors.size()) x = g.neg(total);
    total = g.add(total, x);
    s.vertex_label[anchors[i]] = make_term("Obj", {fam.face, make_tuple(g.decode(x))});
  }
  int flips = uni(4);
  for (int i = 0; i < flips; ++i) {
    auto faces = face_orbits(s);
    int fd = faces[uni(static_cast<int>(faces.size()))][0];
    Label cur = s.face_label[fd];
    if (!same_label(cur, fam.face)) continue;
    const auto& [nf, iso] = fam.flips[uni(static_cast<int>(fam.flips.size()))];
    s = gauge_flip(s, fd, nf, iso);
  }
  return s;
}

/// Kinds of single moves applied by random_move.
inline const std::vector<std::string>& move_kinds() {
  static const std::vector<std::string> k = {"contract", "fuse", "merge", "add-point", "add-edge", "remove-monogon"};
  return k;
}

/// Applies one uniformly chosen applicable move; `what` receives its description.
inline StratifiedSurface random_move(const StratifiedSurface& s, std::mt19937_64& rng, std::string& what) {
  auto uni = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (s.empty()) {
    what = "add-edge loop";
    return move_add_edge(s, 0, 0, 0);
  }
  std::vector<std::pair<std::string, std::vector<int>>> options;
  for (int d = 0; d < s.darts(); ++d) {
    if (!s.canonical[d]) continue;
    if (!detail::same_vertex(s, d, s.alpha[d])) options.push_back({"contract", {d}});
    options.push_back({"add-point", {d}});
  }
  for (const auto& f : face_orbits(s)) {
    if (f.size() == 1) options.push_back({"remove-monogon", {f[0]}});
    if (f.size() == 2 && f[1] != s.alpha[f[0]]) {
      options.push_back({"merge", {f[0], f[1]}});
      if (!s.canonical[f[0]] && !s.canonical[f[1]]) options.push_back({"fuse", {s.alpha[f[0]], s.alpha[f[1]]}});
    }
    options.push_back({"add-edge", {f[0], f[uni(static_cast<int>(f.size()))], f[uni(static_cast<int>(f.size()))]}});
  }
  const auto& [kind, a] = options[uni(static_cast<int>(options.size()))];
  what = kind;
  for (int x : a) what += " " + std::to_string(x);
  if (kind == "contract") return move_contract(s, a[0]);
  if (kind == "add-point") return move_add_point(s, a[0]);
  if (kind == "remove-monogon") return remove_monogon(s, a[0]);
  if (kind == "merge") return move_merge(s, a[0], a[1]);
  if (kind == "fuse") return move_fuse(s, a[0], a[1]);
  return move_add_edge(s, a[0], a[1], a[2]);
}

}  // namespace strathom
