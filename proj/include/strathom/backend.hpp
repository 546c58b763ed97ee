#pragma once

#include <algorithm>
#include <numeric>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strathom/center.hpp"
#include "strathom/label_expr.hpp"
#include "strathom/library_md.hpp"
#include "strathom/library_metric.hpp"
#include "strathom/modular_data.hpp"

namespace strathom {

/// Evaluation reached a label with no backend data.
class SymbolicResidue : public std::runtime_error {
 public:
  explicit SymbolicResidue(const std::string& expr) : std::runtime_error("symbolic residue: " + expr), expr_(expr) {}
  const std::string& expression() const { return expr_; }

 private:
  std::string expr_;
};

/// Category on a 2-cell: a pointed braided category over E, or static modular data (E trivial).
struct FaceCat {
  bool modular = false;
  MetricGroup mg;
  std::vector<int> e_map;  ///< E element -> simple of the face
  ModularData md;

  int rank() const { return modular ? md.rank() : mg.order(); }
  std::string simple_str(int i) const { return modular ? md.ring.labels[i] : mg.group().element_str(i); }
  int dual(int i) const { return modular ? md.ring.dual[i] : mg.group().neg(i); }

  friend bool operator==(const FaceCat& a, const FaceCat& b) {
    if (a.modular != b.modular) return false;
    if (a.modular) return a.md == b.md;
    return a.mg == b.mg && a.e_map == b.e_map;
  }
};

/// K0 class of an object of a face category.
using K0Vector = std::vector<std::int64_t>;

inline K0Vector k0_unit(const FaceCat& c) {
  K0Vector v(c.rank(), 0);
  v[0] = 1;
  return v;
}

inline K0Vector k0_product(const FaceCat& c, const K0Vector& a, const K0Vector& b) {
  int r = c.rank();
  K0Vector out(r, 0);
  for (int i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      if (!c.modular) {
        out[c.mg.group().add(i, j)] += a[i] * b[j];
      } else {
        for (int k = 0; k < r; ++k) out[k] += a[i] * b[j] * c.md.ring.N(i, j, k);
      }
    }
  }
  return out;
}

/// Value of a 1-cell label: an invertible wall (a q-preserving bijection
/// fixing E) or a pointed fusion category over E placed on the wall.
struct Wall {
  bool invertible = true;
  FaceCat left, right;
  std::vector<int> map;  ///< left simple -> right simple
  std::optional<FusionOverE> fusion;

  bool is_identity() const {
    if (!invertible || !(left == right)) return false;
    for (int i = 0; i < static_cast<int>(map.size()); ++i)
      if (map[i] != i) return false;
    return true;
  }
};

inline std::optional<Sort> library_atom_sort(const std::string& name) {
  if (builtin_metric_group(name)) return Sort::Region;
  for (const auto& n : static_modular_names())
    if (n == name) return Sort::Region;
  for (const auto& n : fusion_names())
    if (n == name) return Sort::Line;
  if (name == "em-swap") return Sort::Line;
  return std::nullopt;
}


/// Evaluates labels against the pointed backend over a fixed symmetric base E.
class Backend {
 public:
  explicit Backend(std::string base_name) : base_name_(std::move(base_name)), e_(base_by_name(base_name_)) {}

  const std::string& base_name() const { return base_name_; }
  const MetricGroup& base() const { return e_; }

  FaceCat pointed(const MetricGroup& mg, std::vector<int> e_map) const {
    FaceCat c;
    c.mg = mg;
    c.e_map = std::move(e_map);
    return c;
  }

  /// E-embedding of a library metric group: first embedding onto the radical,
  /// else the first embedding at all.
  std::vector<int> default_embedding(const MetricGroup& mg, const std::string& name) const {
    Subgroup rad = radical(mg);
    std::optional<std::vector<int>> first, onto;
    for_each_isometric_embedding(e_, mg, {}, [&](const std::vector<int>& m) {
      if (!first) first = m;
      std::vector<int> img = m;
      std::sort(img.begin(), img.end());
      if (img == rad) {
        onto = m;
        return true;
      }
      return false;
    });
    if (onto) return *onto;
    if (first) return *first;
    throw DomainError(name + " is not a category over " + base_name_);
  }

  FaceCat face(const Label& l) const {
    auto it = face_cache_.find(l.get());
    if (it != face_cache_.end()) return it->second.second;
    FaceCat c = face_uncached(l);
    face_cache_.emplace(l.get(), std::make_pair(l, c));
    return c;
  }

  Wall wall(const Label& l) const {
    auto it = wall_cache_.find(l.get());
    if (it != wall_cache_.end()) return it->second.second;
    Wall w = wall_uncached(l);
    wall_cache_.emplace(l.get(), std::make_pair(l, w));
    return w;
  }

  FaceCat face_uncached(const Label& l) const {
    if (l->is_tuple) throw DomainError("element tuple used as a 2-cell label");
    if (l->args.empty()) {
      if (auto mg = builtin_metric_group(l->head)) return pointed(*mg, default_embedding(*mg, l->head));
      for (const auto& n : static_modular_names())
        if (n == l->head) {
          if (e_.order() != 1) throw DomainError(n + " is only available over the trivial base");
          FaceCat c;
          c.modular = true;
          c.md = *builtin_modular_data(n);
          return c;
        }
      throw SymbolicResidue(to_string(l));
    }
    const std::string& h = l->head;
    if (h == "Conj" || h == "Rev") {
      FaceCat c = face(l->args[0]);
      if (c.modular)
        c.md = conjugate(c.md);
      else
        c.mg = conjugate(c.mg);
      return c;
    }
    if (h == "RelProdOverE") {
      FaceCat a = face(l->args[0]), b = face(l->args[1]);
      if (!a.modular && !b.modular) {
        BraidedEModule m = relative_tensor(double_braiding_module(e_, a.mg, a.e_map),
                                           double_braiding_module(e_, b.mg, b.e_map));
        return pointed(m.carrier, m.embed);
      }
      if (e_.order() != 1) throw DomainError("modular data products need the trivial base");
      FaceCat c;
      c.modular = true;
      c.md = deligne_product(a.modular ? a.md : from_metric_group(a.mg), b.modular ? b.md : from_metric_group(b.mg));
      return c;
    }
    if (h == "CenterOverE") {
      Wall w = wall(l->args[0]);
      if (!w.fusion) throw DomainError("CenterOverE needs a pointed fusion category: " + to_string(l->args[0]));
      CenterOverE z = center_over_e(*w.fusion);
      return pointed(z.z, z.base_embedding.map);
    }
    throw DomainError("not a 2-cell expression: " + to_string(l));
  }

  Wall identity_wall(const FaceCat& c) const {
    Wall w;
    w.left = w.right = c;
    w.map.resize(c.rank());
    std::iota(w.map.begin(), w.map.end(), 0);
    return w;
  }

  Wall wall_uncached(const Label& l) const {
    if (l->is_tuple) throw DomainError("element tuple used as a 1-cell label");
    const std::string& h = l->head;
    if (l->args.empty()) {
      if (h == "em-swap") {
        if (e_.order() != 1) throw DomainError("em-swap is only available over the trivial base");
        FaceCat tc = face(make_atom("toric-code"));
        Wall w = identity_wall(tc);
        const auto& g = tc.mg.group();
        int e = g.encode({1, 0}), m = g.encode({0, 1});
        std::swap(w.map[e], w.map[m]);
        return w;
      }
      for (const auto& n : fusion_names())
        if (n == h) {
          Wall w;
          w.invertible = false;
          w.fusion = fusion_over_e(n, base_name_);
          return w;
        }
      throw SymbolicResidue(to_string(l));
    }
    if (h == "ForgetTo1Disk") return identity_wall(face(l->args[0]));
    if (h == "Rev") {
      Wall w = wall(l->args[0]);
      if (!w.invertible) return w;
      std::swap(w.left, w.right);
      w.map = invert_map(w.map);
      return w;
    }
    if (h == "Iso") {
      FaceCat a = face(l->args[0]), b = face(l->args[1]);
      Wall w;
      w.left = a;
      w.right = b;
      if (a.modular != b.modular) throw DomainError("no isometry between " + to_string(l->args[0]) + " and " + to_string(l->args[1]));
      std::optional<std::vector<int>> m;
      if (a.modular) {
        m = modular_isomorphism(a.md, b.md);
      } else {
        std::vector<std::pair<int, int>> fixed;
        for (int e = 0; e < e_.order(); ++e) fixed.emplace_back(a.e_map[e], b.e_map[e]);
        if (a.mg.order() == b.mg.order()) m = isometry_exists(a.mg, b.mg, fixed);
      }
      if (!m) throw DomainError("no isometry between " + to_string(l->args[0]) + " and " + to_string(l->args[1]));
      w.map = *m;
      return w;
    }
    if (h == "RelTensorBimod" || h == "EdgeMerge") {
      Wall a = wall(l->args[0]);
      FaceCat mid = face(l->args[1]);
      Wall b = wall(l->args[2]);
      if (!a.invertible || !b.invertible) throw SymbolicResidue(to_string(l));
      if (h == "RelTensorBimod") {
        // M: C -> D, N: B -> D; M (x)_D N^rev: C -> B
        if (!(a.right == mid) || !(b.right == mid)) throw DomainError("middle category mismatch in " + to_string(l));
        b = wall(reversed(l->args[2]));
      } else if (!(a.right == mid) || !(b.left == mid)) {
        throw DomainError("middle category mismatch in " + to_string(l));
      }
      Wall w;
      w.left = a.left;
      w.right = b.right;
      w.map.resize(a.map.size());
      for (std::size_t i = 0; i < a.map.size(); ++i) w.map[i] = b.map[a.map[i]];
      return w;
    }
    if (h == "FunE") throw SymbolicResidue(to_string(l));
    throw DomainError("not a 1-cell expression: " + to_string(l));
  }

  /// K0 class of a 0-cell label as an object of the anchor category `ctx`.
  K0Vector point(const Label& l, const FaceCat& ctx) const {
    if (l->is_tuple) throw DomainError("element tuple used as a 0-cell label");
    const std::string& h = l->head;
    if (l->args.empty()) {
      if (h == "Unit") return k0_unit(ctx);
      throw SymbolicResidue(to_string(l));
    }
    if (h == "ForgetTo0Disk") {
      wall(l->args[0]);
      return k0_unit(ctx);
    }
    if (h == "Obj") {
      FaceCat c = face(l->args[0]);
      if (c.modular) throw DomainError("objects of static modular data cannot label 0-cells");
      if (!(c == ctx)) throw DomainError("object category does not match the anchor face: " + to_string(l));
      const Label& t = l->args[1];
      const auto& g = c.mg.group();
      if (!t->is_tuple || static_cast<int>(t->coords.size()) != g.rank())
        throw DomainError("element " + to_string(t) + " does not fit factors " + g.factors_str());
      for (int i = 0; i < g.rank(); ++i)
        if (t->coords[i] >= g.factors()[i]) throw DomainError("element " + to_string(t) + " out of range");
      K0Vector v(ctx.rank(), 0);
      v[g.encode(t->coords)] = 1;
      return v;
    }
    if (h == "Along") {
      Wall w = wall(l->args[0]);
      if (!w.invertible) throw SymbolicResidue(to_string(l));
      if (!(w.right == ctx)) throw DomainError("wall does not end in the anchor face: " + to_string(l));
      K0Vector src = point(l->args[1], w.left);
      K0Vector v(ctx.rank(), 0);
      for (int x = 0; x < static_cast<int>(src.size()); ++x) v[w.map[x]] += src[x];
      return v;
    }
    if (h == "VertexFuse") {
      Wall w = wall(l->args[1]);
      if (!w.invertible) throw SymbolicResidue(to_string(l));
      return k0_product(ctx, point(l->args[0], ctx), point(l->args[2], ctx));
    }
    if (h == "Coend") {
      FaceCat c = face(l->args[0]);
      if (!(c == ctx)) throw DomainError("coend category does not match the anchor face: " + to_string(l));
      K0Vector v(ctx.rank(), 0);
      if (!c.modular) {
        v[0] = c.mg.order() / e_.order();
      } else {
        for (int i = 0; i < c.rank(); ++i)
          for (int k = 0; k < c.rank(); ++k) v[k] += c.md.ring.N(i, c.md.ring.dual[i], k);
      }
      return v;
    }
    throw DomainError("not a 0-cell expression: " + to_string(l));
  }

  /// Multiplicities of the simples of E in the internal hom [1, v]_E.
  std::vector<std::int64_t> e_multiplicities(const FaceCat& c, const K0Vector& v) const {
    std::vector<std::int64_t> m(e_.order(), 0);
    if (c.modular) {
      m[0] = v[0];
      return m;
    }
    for (int e = 0; e < e_.order(); ++e) m[e] = v[c.e_map[e]];
    return m;
  }

 private:
  std::string base_name_;
  MetricGroup e_;
  // keyed by node address; the stored Label keeps the node alive
  mutable std::map<const LabelNode*, std::pair<Label, FaceCat>> face_cache_;
  mutable std::map<const LabelNode*, std::pair<Label, Wall>> wall_cache_;
};

inline SortCheck backend_sort_check(const Label& l, Sort expected) {
  return check_label_sort(l, expected, [](const std::string& n) { return library_atom_sort(n); });
}

}  // namespace strathom
