#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "strathom/surface.hpp"

namespace strathom {

/// Surface after a move, with the new index of every surviving old dart (-1 if removed).
struct MoveResult {
  StratifiedSurface surface;
  std::vector<int> index;
};

namespace detail {

/// Label P moved from the corner of a to the corner of sigma(a), crossing a's edge.
inline Label cross(const StratifiedSurface& s, int a, const Label& p) {
  if (s.canonical[a]) return make_term("Along", {s.edge_label[a], p});
  return make_term("Along", {reversed(s.edge_label[s.alpha[a]]), p});
}

/// Rotates the label anchored at `from` forward until it sits at `to`; returns it and clears the anchor.
inline Label take_label_at(StratifiedSurface& s, int from, int to) {
  Label p = s.vertex_label[from];
  s.vertex_label[from] = nullptr;
  for (int a = from; a != to; a = s.sigma[a]) p = cross(s, a, p);
  return p;
}

/// Drops the darts marked in `removed`: rotations skip them, anchors on them
/// move forward to the next surviving dart.
inline MoveResult remove_darts(StratifiedSurface s, const std::vector<char>& removed) {
  int n = s.darts();
  for (int d = 0; d < n; ++d) {
    if (!removed[d] || !s.vertex_label[d]) continue;
    int x = s.sigma[d];
    while (removed[x] && x != d) x = s.sigma[x];
    if (x != d) {
      s.vertex_label[x] = s.vertex_label[d];
      s.vertex_label[d] = nullptr;
    }
  }
  for (int d = 0; d < n; ++d) {
    if (removed[d]) continue;
    int x = s.sigma[d];
    while (removed[x]) x = s.sigma[x];
    s.sigma[d] = x;
  }
  std::vector<char> keep(n);
  MoveResult out;
  out.index.assign(n, -1);
  int k = 0;
  for (int d = 0; d < n; ++d) {
    keep[d] = !removed[d];
    if (keep[d]) out.index[d] = k++;
  }
  out.surface = compact(s, keep);
  return out;
}

inline MoveResult identity_result(StratifiedSurface s) {
  MoveResult out;
  out.index.resize(s.darts());
  for (int d = 0; d < s.darts(); ++d) out.index[d] = d;
  out.surface = std::move(s);
  return out;
}

inline void check_dart(const StratifiedSurface& s, int d) {
  if (d < 0 || d >= s.darts()) throw DomainError("dart " + std::to_string(d) + " out of range");
}

inline bool same_vertex(const StratifiedSurface& s, int a, int b) {
  for (int x = s.sigma[a];; x = s.sigma[x]) {
    if (x == b) return true;
    if (x == a) return false;
  }
}

/// Collapses the bigon face {x, y}: the edge of `removed_in` disappears and
/// the other edge gets orientation `kept_canonical` and `label`.
inline MoveResult collapse_bigon(StratifiedSurface s, int x, int y, int removed_in, int kept_canonical, Label label) {
  for (int c : {x, y}) {
    int a = anchor_of(s, c);
    if (a == c) s.vertex_label[s.sigma[c]] = take_label_at(s, c, s.sigma[c]);
  }
  int kept_in = removed_in == x ? y : x;
  int removed_out = s.alpha[removed_in];
  int kept_out = s.alpha[kept_in];
  s.canonical[kept_in] = kept_canonical == kept_in;
  s.canonical[kept_out] = kept_canonical == kept_out;
  s.edge_label[kept_in] = s.edge_label[kept_out] = nullptr;
  s.edge_label[kept_canonical] = std::move(label);
  s.face_label[kept_in] = s.face_label[removed_out];
  std::vector<char> removed(s.darts(), 0);
  removed[removed_in] = removed[removed_out] = 1;
  return remove_darts(std::move(s), removed);
}

/// Bigon faces {x, y} with x on edge e1 and y on edge e2.
inline std::vector<std::pair<int, int>> bigons_between(const StratifiedSurface& s, int e1, int e2) {
  std::vector<std::pair<int, int>> out;
  for (int x : {e1, s.alpha[e1]})
    for (int y : {e2, s.alpha[e2]})
      if (s.phi(x) == y && s.phi(y) == x) out.emplace_back(x, y);
  return out;
}

}  // namespace detail

/// Flips the orientation of the edge of d; the label becomes its reverse.
inline StratifiedSurface reverse_edge(StratifiedSurface s, int d) {
  detail::check_dart(s, d);
  int c = s.canonical_of(d), a = s.alpha[c];
  s.edge_label[a] = reversed(s.edge_label[c]);
  s.edge_label[c] = nullptr;
  s.canonical[c] = 0;
  s.canonical[a] = 1;
  return s;
}

/// Contracts the edge of d joining vertices P and Q into one vertex labeled VertexFuse(P, L, Q).
inline MoveResult move_contract_indexed(StratifiedSurface s, int d) {
  detail::check_dart(s, d);
  int d2 = s.alpha[d];
  if (detail::same_vertex(s, d, d2)) throw DomainError("contract: edge " + std::to_string(d) + " is a loop");
  Label l = s.edge_label[s.canonical_of(d)];
  Label p = detail::take_label_at(s, anchor_of(s, d), d);
  Label q = detail::take_label_at(s, anchor_of(s, d2), s.sigma[d2]);
  Label fused = make_term("VertexFuse", {p, l, q});
  int sd = s.sigma[d], sd2 = s.sigma[d2];
  int anchor = sd2 != d2 ? sd2 : (sd != d ? sd : -1);
  std::swap(s.sigma[d], s.sigma[d2]);
  if (anchor == -1) {
    StratifiedSurface t;
    t.base = s.base;
    t.lone_face = s.face_label[d];
    t.lone_vertex = fused;
    return {t, std::vector<int>(s.darts(), -1)};
  }
  s.vertex_label[anchor] = fused;
  std::vector<char> removed(s.darts(), 0);
  removed[d] = removed[d2] = 1;
  return detail::remove_darts(std::move(s), removed);
}

inline StratifiedSurface move_contract(const StratifiedSurface& s, int d) { return move_contract_indexed(s, d).surface; }

/// Fuses edges M (of e1) and N (of e2) across the bigon D lying to the right of both
/// into one edge labeled RelTensorBimod(M, D, N).
inline MoveResult move_fuse_indexed(const StratifiedSurface& s, int e1, int e2) {
  detail::check_dart(s, e1);
  detail::check_dart(s, e2);
  int c1 = s.canonical_of(e1), c2 = s.canonical_of(e2);
  if (c1 == c2) throw DomainError("fuse: needs two distinct edges");
  for (auto [x, y] : detail::bigons_between(s, c1, c2)) {
    if (s.canonical[x] || s.canonical[y]) continue;
    Label l = make_term("RelTensorBimod", {s.edge_label[c1], s.face_label[x], s.edge_label[c2]});
    return detail::collapse_bigon(s, x, y, y, c1, l);
  }
  throw DomainError("fuse: edges " + std::to_string(e1) + " and " + std::to_string(e2) +
                    " do not bound a bigon on their right");
}

inline StratifiedSurface move_fuse(const StratifiedSurface& s, int e1, int e2) { return move_fuse_indexed(s, e1, e2).surface; }

/// Merges parallel edges K, L around a bigon A into one edge labeled EdgeMerge(K, A, L).
/// K is the edge ending at A. When both edges point the same way around the
/// bigon, the second one is reversed first.
inline MoveResult move_merge_indexed(const StratifiedSurface& s0, int e1, int e2) {
  detail::check_dart(s0, e1);
  detail::check_dart(s0, e2);
  StratifiedSurface s = s0;
  int c1 = s.canonical_of(e1), c2 = s.canonical_of(e2);
  if (c1 == c2) throw DomainError("merge: needs two distinct edges");
  auto bigons = detail::bigons_between(s, c1, c2);
  if (bigons.empty()) throw DomainError("merge: edges " + std::to_string(e1) + " and " + std::to_string(e2) + " do not bound a bigon");
  auto [x, y] = bigons.front();
  if (s.canonical[x] == s.canonical[y]) s = reverse_edge(s, s.canonical[x] ? y : x);
  int l_in = s.canonical[x] ? x : y;
  int k_in = l_in == x ? y : x;
  int ck = s.alpha[k_in];
  Label l = make_term("EdgeMerge", {s.edge_label[ck], s.face_label[x], s.edge_label[l_in]});
  return detail::collapse_bigon(s, x, y, k_in, l_in, l);
}

inline StratifiedSurface move_merge(const StratifiedSurface& s, int e1, int e2) { return move_merge_indexed(s, e1, e2).surface; }

/// Collapses the bigon face containing x by fuse or merge, whichever pattern applies.
inline MoveResult collapse_bigon_at(const StratifiedSurface& s, int x) {
  detail::check_dart(s, x);
  int y = s.phi(x);
  if (s.phi(y) != x || y == x || y == s.alpha[x]) throw DomainError("face of dart " + std::to_string(x) + " is not a bigon");
  if (!s.canonical[x] && !s.canonical[y]) return move_fuse_indexed(s, s.alpha[x], s.alpha[y]);
  return move_merge_indexed(s, x, y);
}

/// Subdivides the edge of e with a new vertex labeled ForgetTo0Disk(M).
/// The new darts are appended: u1 = n pairs with the canonical dart, u2 = n+1 with its partner.
inline MoveResult move_add_point_indexed(StratifiedSurface s, int e) {
  detail::check_dart(s, e);
  int n = s.darts();
  int d = s.canonical_of(e), d2 = s.alpha[d];
  Label m = s.edge_label[d];
  int u1 = n, u2 = n + 1;
  Label f_left = s.face_label[d], f_right = s.face_label[d2];
  s.alpha.push_back(d);
  s.alpha.push_back(d2);
  s.alpha[d] = u1;
  s.alpha[d2] = u2;
  s.sigma.push_back(u2);
  s.sigma.push_back(u1);
  s.canonical.push_back(0);
  s.canonical.push_back(1);
  s.face_label.push_back(f_right);
  s.face_label.push_back(f_left);
  s.edge_label.push_back(nullptr);
  s.edge_label.push_back(m);
  s.vertex_label.push_back(nullptr);
  s.vertex_label.push_back(make_term("ForgetTo0Disk", {m}));
  return detail::identity_result(std::move(s));
}

inline StratifiedSurface move_add_point(const StratifiedSurface& s, int e) { return move_add_point_indexed(s, e).surface; }

/// Adds an edge labeled ForgetTo1Disk(C) inside the face of `face_dart`, from the corner
/// of p to the corner of q (corners named by the dart that follows them). On a
/// surface without darts this adds a loop at the lone vertex.
inline MoveResult move_add_edge_indexed(StratifiedSurface s, int face_dart, int p, int q) {
  if (s.empty()) {
    Label c = s.lone_face;
    s.alpha = {1, 0};
    s.sigma = {1, 0};
    s.canonical = {1, 0};
    s.face_label = {c, c};
    s.edge_label = {make_term("ForgetTo1Disk", {c}), nullptr};
    s.vertex_label = {s.lone_vertex, nullptr};
    s.lone_face = s.lone_vertex = nullptr;
    return {s, {}};
  }
  detail::check_dart(s, face_dart);
  detail::check_dart(s, p);
  detail::check_dart(s, q);
  auto fidx = orbit_index(face_orbits(s), s.darts());
  if (fidx[p] != fidx[face_dart] || fidx[q] != fidx[face_dart])
    throw DomainError("add_edge: corners " + std::to_string(p) + ", " + std::to_string(q) + " are not on the face of dart " +
                      std::to_string(face_dart));
  int n = s.darts();
  int np = n, nq = n + 1;
  Label c = s.face_label[face_dart];
  int pp = s.sigma_inv(p), pq = s.sigma_inv(q);
  s.alpha.push_back(nq);
  s.alpha.push_back(np);
  s.sigma.push_back(p);
  s.sigma.push_back(q);
  s.canonical.push_back(1);
  s.canonical.push_back(0);
  s.face_label.push_back(c);
  s.face_label.push_back(c);
  s.edge_label.push_back(make_term("ForgetTo1Disk", {c}));
  s.edge_label.push_back(nullptr);
  s.vertex_label.push_back(nullptr);
  s.vertex_label.push_back(nullptr);
  if (p == q) {
    s.sigma[pp] = np;
    s.sigma[np] = nq;
    s.sigma[nq] = p;
  } else {
    s.sigma[pp] = np;
    s.sigma[pq] = nq;
  }
  return detail::identity_result(std::move(s));
}

inline StratifiedSurface move_add_edge(const StratifiedSurface& s, int face_dart, int p, int q) {
  return move_add_edge_indexed(s, face_dart, p, q).surface;
}

/// Removes the loop bounding the monogon face {x}: subdivide, collapse the
/// resulting bigon, contract the remaining spur.
inline MoveResult remove_monogon_indexed(const StratifiedSurface& s, int x) {
  detail::check_dart(s, x);
  if (s.phi(x) != x) throw DomainError("face of dart " + std::to_string(x) + " is not a monogon");
  MoveResult a = move_add_point_indexed(s, x);
  int u = a.surface.phi(x);
  MoveResult b = collapse_bigon_at(a.surface, x);
  int kept = b.index[x] != -1 ? b.index[x] : b.index[u];
  MoveResult c = move_contract_indexed(b.surface, kept);
  MoveResult out;
  out.surface = std::move(c.surface);
  out.index.assign(s.darts(), -1);
  for (int d = 0; d < s.darts(); ++d) {
    int i = b.index[d];
    out.index[d] = i == -1 ? -1 : c.index[i];
  }
  return out;
}

inline StratifiedSurface remove_monogon(const StratifiedSurface& s, int x) { return remove_monogon_indexed(s, x).surface; }

}  // namespace strathom
