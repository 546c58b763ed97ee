#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "strathom/errors.hpp"

namespace strathom {

/// Cell dimension an expression labels: points, lines (walls, bimodules) or regions.
enum class Sort { Point = 0, Line = 1, Region = 2, Element = 3 };

inline std::string to_string(Sort s) {
  switch (s) {
    case Sort::Point: return "0-cell";
    case Sort::Line: return "1-cell";
    case Sort::Region: return "2-cell";
    case Sort::Element: return "element";
  }
  return "?";
}

struct LabelNode;
using Label = std::shared_ptr<const LabelNode>;

/// Prefix term: an atom, a constructor applied to arguments, or an element tuple "[a,b]".
struct LabelNode {
  std::string head;
  std::vector<Label> args;
  bool is_tuple = false;
  std::vector<int> coords;
};

inline Label make_atom(std::string name) {
  auto n = std::make_shared<LabelNode>();
  n->head = std::move(name);
  return n;
}

inline Label make_term(std::string head, std::vector<Label> args) {
  auto n = std::make_shared<LabelNode>();
  n->head = std::move(head);
  n->args = std::move(args);
  return n;
}

inline Label make_tuple(std::vector<int> coords) {
  auto n = std::make_shared<LabelNode>();
  n->is_tuple = true;
  n->coords = std::move(coords);
  return n;
}

inline std::string to_string(const Label& l) {
  if (l->is_tuple) {
    std::string s = "[";
    for (std::size_t i = 0; i < l->coords.size(); ++i) s += (i ? "," : "") + std::to_string(l->coords[i]);
    return s + "]";
  }
  if (l->args.empty()) return l->head;
  std::string s = l->head + "(";
  for (std::size_t i = 0; i < l->args.size(); ++i) s += (i ? "," : "") + to_string(l->args[i]);
  return s + ")";
}

inline bool operator==(const LabelNode& a, const LabelNode& b) {
  if (a.is_tuple != b.is_tuple || a.head != b.head || a.coords != b.coords || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(*a.args[i] == *b.args[i])) return false;
  return true;
}

inline bool same_label(const Label& a, const Label& b) { return *a == *b; }

namespace detail {

class LabelParser {
 public:
  explicit LabelParser(const std::string& s) : s_(s) {}

  Label parse_all() {
    Label l = term();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return l;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("label parse error at column " + std::to_string(pos_ + 1) + " in '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Label term() {
    skip();
    if (eat('[')) {
      std::vector<int> coords;
      if (eat(']')) return make_tuple(coords);
      do {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a nonnegative integer");
        coords.push_back(std::stoi(s_.substr(start, pos_ - start)));
      } while (eat(','));
      if (!eat(']')) fail("expected ']'");
      return make_tuple(coords);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    std::string head = s_.substr(start, pos_ - start);
    if (!eat('(')) return make_atom(head);
    std::vector<Label> args;
    do {
      args.push_back(term());
    } while (eat(','));
    if (!eat(')')) fail("expected ')' or ','");
    return make_term(head, std::move(args));
  }
};

}  // namespace detail

inline Label parse_label(const std::string& s) { return detail::LabelParser(s).parse_all(); }

/// Signature of a constructor: argument sorts and result sort. Rev is
/// polymorphic and handled separately.
struct ConstructorSig {
  std::vector<Sort> args;
  Sort result;
};

inline const std::map<std::string, ConstructorSig>& constructor_table() {
  static const std::map<std::string, ConstructorSig> table = {
      {"RelProdOverE", {{Sort::Region, Sort::Region}, Sort::Region}},
      {"Conj", {{Sort::Region}, Sort::Region}},
      {"CenterOverE", {{Sort::Line}, Sort::Region}},
      {"RelTensorBimod", {{Sort::Line, Sort::Region, Sort::Line}, Sort::Line}},
      {"VertexFuse", {{Sort::Point, Sort::Line, Sort::Point}, Sort::Point}},
      {"EdgeMerge", {{Sort::Line, Sort::Region, Sort::Line}, Sort::Line}},
      {"ForgetTo1Disk", {{Sort::Region}, Sort::Line}},
      {"ForgetTo0Disk", {{Sort::Line}, Sort::Point}},
      {"FunE", {{Sort::Point, Sort::Point}, Sort::Line}},
      {"Obj", {{Sort::Region, Sort::Element}, Sort::Point}},
      {"Along", {{Sort::Line, Sort::Point}, Sort::Point}},
      {"Coend", {{Sort::Region}, Sort::Point}},
      {"Iso", {{Sort::Region, Sort::Region}, Sort::Line}},
  };
  return table;
}

/// Sorts of library atoms; supplied by the backend.
using AtomSortFn = std::optional<Sort> (*)(const std::string&);

struct SortCheck {
  bool ok = true;
  std::string error;
  std::vector<std::string> symbolic;  ///< atoms without backend data
};

namespace detail {

inline void check_sort(const Label& l, Sort expected, AtomSortFn atom_sort, SortCheck& out) {
  if (!out.ok) return;
  auto bad = [&](const std::string& why) {
    out.ok = false;
    out.error = "'" + to_string(l) + "': " + why;
  };
  if (l->is_tuple) {
    if (expected != Sort::Element) bad("element tuple where a " + to_string(expected) + " label is expected");
    return;
  }
  if (l->args.empty()) {
    if (l->head == "Unit") {
      if (expected != Sort::Point) bad("Unit is a 0-cell label");
      return;
    }
    if (expected == Sort::Element) {
      bad("expected an element tuple");
      return;
    }
    std::optional<Sort> s = atom_sort(l->head);
    if (!s) {
      out.symbolic.push_back(l->head);
      return;
    }
    if (*s != expected) bad("atom is a " + to_string(*s) + " label, expected " + to_string(expected));
    return;
  }
  if (l->head == "Rev") {
    if (l->args.size() != 1) return bad("Rev takes 1 argument");
    if (expected != Sort::Line && expected != Sort::Region) return bad("Rev applies to 1-cell or 2-cell labels");
    check_sort(l->args[0], expected, atom_sort, out);
    return;
  }
  auto it = constructor_table().find(l->head);
  if (it == constructor_table().end()) return bad("unknown constructor " + l->head);
  const ConstructorSig& sig = it->second;
  if (sig.args.size() != l->args.size())
    return bad(l->head + " takes " + std::to_string(sig.args.size()) + " arguments");
  if (sig.result != expected) return bad(l->head + " builds a " + to_string(sig.result) + " label, expected " + to_string(expected));
  for (std::size_t i = 0; i < sig.args.size(); ++i) check_sort(l->args[i], sig.args[i], atom_sort, out);
}

}  // namespace detail

inline SortCheck check_label_sort(const Label& l, Sort expected, AtomSortFn atom_sort) {
  SortCheck out;
  detail::check_sort(l, expected, atom_sort, out);
  return out;
}

/// Rev(Rev(x)) = x.
inline Label reversed(const Label& l) {
  if (!l->is_tuple && l->head == "Rev" && l->args.size() == 1) return l->args[0];
  return make_term("Rev", {l});
}

}  // namespace strathom
