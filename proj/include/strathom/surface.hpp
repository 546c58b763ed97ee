#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/backend.hpp"
#include "strathom/label_expr.hpp"
#include "strathom/report.hpp"

namespace strathom {

/// Closed oriented surface as a rotation system with labeled cells.
///
/// Darts are 0..n-1. `alpha` pairs the two darts of each edge; `sigma` is the
/// counterclockwise rotation at each vertex. Faces are orbits of sigma∘alpha:
/// dart d bounds the face on its right when walking away from its vertex,
/// and the corner between sigma⁻¹(d) and d lies in face(d).
///
/// An edge is oriented by its canonical dart c; face(c) is the left
/// category and face(alpha c) the right one. A vertex label sits on one
/// anchor dart and is an object of the category of face(anchor). With no
/// darts the surface is a sphere carrying `lone_face` and `lone_vertex`.
struct StratifiedSurface {
  std::string base = "trivial";
  std::vector<int> alpha, sigma;
  std::vector<char> canonical;
  std::vector<Label> face_label;    ///< per dart, constant on faces
  std::vector<Label> edge_label;    ///< set on canonical darts only
  std::vector<Label> vertex_label;  ///< set on anchors only
  Label lone_face, lone_vertex;

  int darts() const { return static_cast<int>(alpha.size()); }
  bool empty() const { return alpha.empty(); }
  int phi(int d) const { return sigma[alpha[d]]; }
  int sigma_inv(int d) const {
    int x = d;
    while (sigma[x] != d) x = sigma[x];
    return x;
  }
  int canonical_of(int d) const { return canonical[d] ? d : alpha[d]; }
};

struct CellCounts {
  int v = 1, e = 0, f = 1;
  int euler() const { return v - e + f; }
  int genus() const { return (2 - euler()) / 2; }
};

/// Orbits of a permutation, each starting at its least element, in order of that element.
inline std::vector<std::vector<int>> orbits(const std::vector<int>& perm) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(perm.size(), 0);
  for (int d = 0; d < static_cast<int>(perm.size()); ++d) {
    if (seen[d]) continue;
    out.emplace_back();
    for (int x = d; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      out.back().push_back(x);
    }
  }
  return out;
}

inline std::vector<int> face_permutation(const StratifiedSurface& s) {
  std::vector<int> p(s.darts());
  for (int d = 0; d < s.darts(); ++d) p[d] = s.phi(d);
  return p;
}

inline std::vector<std::vector<int>> vertex_orbits(const StratifiedSurface& s) { return orbits(s.sigma); }
inline std::vector<std::vector<int>> face_orbits(const StratifiedSurface& s) { return orbits(face_permutation(s)); }

/// Orbit index of every dart.
inline std::vector<int> orbit_index(const std::vector<std::vector<int>>& orbs, int n) {
  std::vector<int> idx(n, -1);
  for (int i = 0; i < static_cast<int>(orbs.size()); ++i)
    for (int d : orbs[i]) idx[d] = i;
  return idx;
}

inline CellCounts cell_counts(const StratifiedSurface& s) {
  if (s.empty()) return {};
  return {static_cast<int>(vertex_orbits(s).size()), s.darts() / 2, static_cast<int>(face_orbits(s).size())};
}

inline int genus(const StratifiedSurface& s) { return cell_counts(s).genus(); }

/// Anchor dart of the vertex containing d.
inline int anchor_of(const StratifiedSurface& s, int d) {
  for (int x = d;;) {
    if (s.vertex_label[x]) return x;
    x = s.sigma[x];
    if (x == d) return -1;
  }
}

inline Label face_of(const StratifiedSurface& s, int d) { return s.empty() ? s.lone_face : s.face_label[d]; }

/// Keeps the darts with keep[d] set, renumbered in increasing order.
inline StratifiedSurface compact(const StratifiedSurface& s, const std::vector<char>& keep) {
  std::vector<int> idx(s.darts(), -1);
  int n = 0;
  for (int d = 0; d < s.darts(); ++d)
    if (keep[d]) idx[d] = n++;
  StratifiedSurface t;
  t.base = s.base;
  t.lone_face = s.lone_face;
  t.lone_vertex = s.lone_vertex;
  t.alpha.resize(n);
  t.sigma.resize(n);
  t.canonical.resize(n);
  t.face_label.resize(n);
  t.edge_label.resize(n);
  t.vertex_label.resize(n);
  for (int d = 0; d < s.darts(); ++d) {
    if (!keep[d]) continue;
    int i = idx[d];
    t.alpha[i] = idx[s.alpha[d]];
    t.sigma[i] = idx[s.sigma[d]];
    t.canonical[i] = s.canonical[d];
    t.face_label[i] = s.face_label[d];
    t.edge_label[i] = s.edge_label[d];
    t.vertex_label[i] = s.vertex_label[d];
  }
  return t;
}

// ---- text format ----

namespace detail {

inline std::string cycles_str(const std::vector<int>& perm) {
  std::string out;
  for (const auto& o : orbits(perm)) {
    if (!out.empty()) out += ' ';
    out += '(';
    for (std::size_t i = 0; i < o.size(); ++i) out += (i ? " " : "") + std::to_string(o[i]);
    out += ')';
  }
  return out;
}

inline std::vector<int> parse_cycles(const std::string& text, int n, const std::string& what) {
  std::vector<int> perm(n, -1);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError(what + ": expected '(' at column " + std::to_string(i + 1));
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw InputError(what + ": expected a dart at column " + std::to_string(i + 1));
      int d = std::stoi(text.substr(i, j - i));
      if (d >= n) throw InputError(what + ": dart " + std::to_string(d) + " out of range");
      cyc.push_back(d);
      i = j;
    }
    if (cyc.empty()) throw InputError(what + ": empty cycle");
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (perm[cyc[k]] != -1) throw InputError(what + ": dart " + std::to_string(cyc[k]) + " appears twice");
      perm[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    skip();
  }
  for (int d = 0; d < n; ++d)
    if (perm[d] == -1) perm[d] = d;
  return perm;
}

}  // namespace detail

/// Canonical text: faces by least dart, edges by canonical dart, vertices by anchor.
inline std::string format_surface(const StratifiedSurface& s) {
  std::ostringstream os;
  os << "base " << s.base << "\n";
  os << "darts " << s.darts() << "\n";
  if (s.empty()) {
    os << "face * " << to_string(s.lone_face) << "\n";
    os << "vertex * " << to_string(s.lone_vertex) << "\n";
    return os.str();
  }
  os << "alpha " << detail::cycles_str(s.alpha) << "\n";
  os << "sigma " << detail::cycles_str(s.sigma) << "\n";
  for (const auto& f : face_orbits(s)) os << "face " << f[0] << " " << to_string(s.face_label[f[0]]) << "\n";
  for (int d = 0; d < s.darts(); ++d)
    if (s.canonical[d]) os << "edge " << d << " " << to_string(s.edge_label[d]) << "\n";
  for (int d = 0; d < s.darts(); ++d)
    if (s.vertex_label[d]) os << "vertex " << d << " " << to_string(s.vertex_label[d]) << "\n";
  return os.str();
}

/// Parses the line format written by format_surface. `#` starts a comment.
/// Structural errors (duplicate labels, missing cells) are left to validate_surface.
inline StratifiedSurface parse_surface(const std::string& text) {
  StratifiedSurface s;
  std::istringstream is(text);
  std::string line;
  int n = -1, lineno = 0;
  bool have_base = false;
  std::string alpha_text, sigma_text;
  struct Pending {
    std::string kind;
    int dart;
    Label label;
    int line;
  };
  std::vector<Pending> cells;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    std::string rest;
    std::getline(ls, rest);
    if (key == "base") {
      std::istringstream rs(rest);
      if (!(rs >> s.base)) throw InputError(where() + "base needs a name");
      base_by_name(s.base);
      have_base = true;
    } else if (key == "darts") {
      std::istringstream rs(rest);
      if (!(rs >> n) || n < 0 || n % 2 != 0) throw InputError(where() + "darts needs an even nonnegative count");
    } else if (key == "alpha") {
      alpha_text = rest;
    } else if (key == "sigma") {
      sigma_text = rest;
    } else if (key == "face" || key == "edge" || key == "vertex") {
      std::istringstream rs(rest);
      std::string dart;
      if (!(rs >> dart)) throw InputError(where() + key + " needs a dart");
      std::string label_text;
      std::getline(rs, label_text);
      int d = -1;
      if (dart != "*") {
        try {
          std::size_t used = 0;
          d = std::stoi(dart, &used);
          if (used != dart.size() || d < 0) throw InputError("");
        } catch (const std::exception&) {
          throw InputError(where() + "bad dart '" + dart + "'");
        }
      }
      Label l;
      try {
        l = parse_label(label_text);
      } catch (const InputError& e) {
        throw InputError(where() + e.what());
      }
      cells.push_back({key, d, l, lineno});
    } else {
      throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_base) throw InputError("missing base line");
  if (n < 0) throw InputError("missing darts line");
  s.alpha = detail::parse_cycles(alpha_text, n, "alpha");
  s.sigma = detail::parse_cycles(sigma_text, n, "sigma");
  s.canonical.assign(n, 0);
  s.face_label.assign(n, nullptr);
  s.edge_label.assign(n, nullptr);
  s.vertex_label.assign(n, nullptr);
  std::vector<int> fidx = n ? orbit_index(face_orbits(s), n) : std::vector<int>{};
  for (const auto& c : cells) {
    auto where = "line " + std::to_string(c.line) + ": ";
    if (c.dart == -1) {
      if (n != 0) throw InputError(where + "'*' is only allowed when there are no darts");
      if (c.kind == "face") {
        if (s.lone_face) throw InputError(where + "second face label");
        s.lone_face = c.label;
      } else if (c.kind == "vertex") {
        if (s.lone_vertex) throw InputError(where + "second vertex label");
        s.lone_vertex = c.label;
      } else {
        throw InputError(where + "edge needs a dart");
      }
      continue;
    }
    if (c.dart >= n) throw InputError(where + "dart " + std::to_string(c.dart) + " out of range");
    if (c.kind == "face") {
      for (int d = 0; d < n; ++d)
        if (fidx[d] == fidx[c.dart]) {
          if (s.face_label[d]) throw InputError(where + "face of dart " + std::to_string(c.dart) + " labeled twice");
          s.face_label[d] = c.label;
        }
    } else if (c.kind == "edge") {
      if (s.canonical[c.dart]) throw InputError(where + "edge dart " + std::to_string(c.dart) + " labeled twice");
      s.canonical[c.dart] = 1;
      s.edge_label[c.dart] = c.label;
    } else {
      if (s.vertex_label[c.dart]) throw InputError(where + "vertex dart " + std::to_string(c.dart) + " labeled twice");
      s.vertex_label[c.dart] = c.label;
    }
  }
  return s;
}

/// Structural checks, label sorts and side convention. Reports genus on success.
inline Report validate_surface(const StratifiedSurface& s) {
  Report r;
  int n = s.darts();
  try {
    base_by_name(s.base);
  } catch (const std::exception& e) {
    r.fail(std::string("base: ") + e.what());
    return r;
  }
  auto sort_of = [&](const Label& l, Sort want, const std::string& cell) {
    SortCheck c = backend_sort_check(l, want);
    if (!c.ok) {
      r.fail(cell + ": sort error " + c.error);
      return;
    }
    for (const auto& a : c.symbolic) r.note(cell + ": atom '" + a + "' has no backend data");
  };
  if (n == 0) {
    if (!s.lone_face) r.fail("face label missing");
    if (!s.lone_vertex) r.fail("vertex label missing");
    if (!r.ok) return r;
    sort_of(s.lone_face, Sort::Region, "face *");
    sort_of(s.lone_vertex, Sort::Point, "vertex *");
    if (r.ok) r.pass("V=1 E=0 F=1 genus 0");
    return r;
  }
  if (static_cast<int>(s.sigma.size()) != n) {
    r.fail("sigma and alpha sizes differ");
    return r;
  }
  std::vector<char> hit(n, 0);
  for (int d = 0; d < n; ++d) {
    if (s.sigma[d] < 0 || s.sigma[d] >= n || hit[s.sigma[d]]) {
      r.fail("sigma is not a permutation");
      return r;
    }
    hit[s.sigma[d]] = 1;
  }
  for (int d = 0; d < n; ++d)
    if (s.alpha[d] < 0 || s.alpha[d] >= n || s.alpha[d] == d || s.alpha[s.alpha[d]] != d) {
      r.fail("alpha is not a fixed-point-free involution at dart " + std::to_string(d));
      return r;
    }
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    for (int x : {s.alpha[d], s.sigma[d]})
      if (!seen[x]) {
        seen[x] = 1;
        ++reached;
        stack.push_back(x);
      }
  }
  if (reached != n) {
    r.fail("surface is not connected");
    return r;
  }
  for (const auto& f : face_orbits(s)) {
    std::string cell = "face " + std::to_string(f[0]);
    if (!s.face_label[f[0]]) {
      r.fail(cell + ": label missing");
      continue;
    }
    for (int d : f)
      if (!s.face_label[d] || !same_label(s.face_label[d], s.face_label[f[0]])) {
        r.fail(cell + ": label not constant on the face");
        break;
      }
    sort_of(s.face_label[f[0]], Sort::Region, cell);
  }
  for (int d = 0; d < n; ++d) {
    if (d > s.alpha[d]) continue;
    std::string cell = "edge " + std::to_string(d);
    int a = s.alpha[d];
    if (s.canonical[d] && s.canonical[a]) {
      r.fail(cell + ": orientation error, both darts " + std::to_string(d) + " and " + std::to_string(a) + " oriented");
      continue;
    }
    if (!s.canonical[d] && !s.canonical[a]) {
      r.fail(cell + ": orientation missing");
      continue;
    }
    int c = s.canonical[d] ? d : a;
    if (!s.edge_label[c]) {
      r.fail(cell + ": label missing");
      continue;
    }
    if (s.edge_label[s.alpha[c]]) r.fail(cell + ": label on the non-oriented dart");
    sort_of(s.edge_label[c], Sort::Line, "edge " + std::to_string(c));
  }
  for (const auto& v : vertex_orbits(s)) {
    std::string cell = "vertex " + std::to_string(v[0]);
    int anchors = 0, at = -1;
    for (int d : v)
      if (s.vertex_label[d]) {
        ++anchors;
        at = d;
      }
    if (anchors != 1) {
      r.fail(cell + ": expected one label, found " + std::to_string(anchors));
      continue;
    }
    sort_of(s.vertex_label[at], Sort::Point, "vertex " + std::to_string(at));
  }
  if (r.ok) {
    CellCounts c = cell_counts(s);
    if ((2 - c.euler()) % 2 != 0 || c.euler() > 2) {
      r.fail("Euler characteristic " + std::to_string(c.euler()) + " is not that of a closed orientable surface");
    } else {
      r.pass("V=" + std::to_string(c.v) + " E=" + std::to_string(c.e) + " F=" + std::to_string(c.f) + " genus " +
             std::to_string(c.genus()));
    }
  }
  return r;
}

/// Unlabeled genus-g surface with face C: one vertex, 2g loops in the pattern a b a⁻¹ b⁻¹.
inline StratifiedSurface unstratified_surface(const std::string& base, const Label& c, int g) {
  StratifiedSurface s;
  s.base = base;
  if (g == 0) {
    s.lone_face = c;
    s.lone_vertex = make_atom("Unit");
    return s;
  }
  int n = 4 * g;
  s.alpha.resize(n);
  s.sigma.resize(n);
  s.canonical.assign(n, 0);
  s.face_label.assign(n, c);
  s.edge_label.assign(n, nullptr);
  s.vertex_label.assign(n, nullptr);
  // handle i: darts 4i..4i+3 in rotation order a+ b+ a- b-
  for (int i = 0; i < g; ++i) {
    int a1 = 4 * i, b1 = a1 + 1, a2 = a1 + 2, b2 = a1 + 3;
    s.alpha[a1] = a2;
    s.alpha[a2] = a1;
    s.alpha[b1] = b2;
    s.alpha[b2] = b1;
    s.canonical[a1] = s.canonical[b1] = 1;
    s.edge_label[a1] = s.edge_label[b1] = make_term("ForgetTo1Disk", {c});
  }
  for (int d = 0; d < n; ++d) s.sigma[d] = (d + 1) % n;
  s.vertex_label[0] = make_atom("Unit");
  return s;
}

}  // namespace strathom
