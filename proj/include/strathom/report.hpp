#pragma once

#include <string>
#include <vector>

namespace strathom {

/// Line-oriented check report; `ok` is false once any failure is recorded.
struct Report {
  bool ok = true;
  std::vector<std::string> lines;

  void fail(const std::string& msg) {
    ok = false;
    lines.push_back("FAIL " + msg);
  }
  void pass(const std::string& msg) { lines.push_back("ok   " + msg); }
  void note(const std::string& msg) { lines.push_back("note " + msg); }
  /// Number of failure lines.
  int failures() const {
    int n = 0;
    for (const auto& l : lines)
      if (l.rfind("FAIL", 0) == 0) ++n;
    return n;
  }
  std::string str() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    s += ok ? "result: pass\n" : "result: fail\n";
    return s;
  }
};

}  // namespace strathom
