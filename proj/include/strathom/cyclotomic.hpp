/** @file cyclotomic.hpp
 *  @brief Exact arithmetic in cyclotomic fields Q(zeta_N).
 *
 *  A value at conductor N is stored in the basis 1, z, ..., z^(phi(N)-1) of
 *  Q[z]/Phi_N(z). Binary operations lift both sides to the lcm of the
 *  conductors. normalize() moves a value to its minimal conductor.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "strathom/errors.hpp"
#include "strathom/rational.hpp"

namespace strathom {

namespace detail {

inline std::atomic<int>& conductor_limit_ref() {
  static std::atomic<int> limit{720};
  return limit;
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Integer coefficients of Phi_n, lowest degree first.
inline std::vector<std::int64_t> cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<std::int64_t> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<std::int64_t> den = cyclotomic_polynomial(d);
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<std::int64_t> quot(dn - dd + 1, 0);
    for (int i = dn - dd; i >= 0; --i) {
      std::int64_t c = num[i + dd];  // den is monic
      quot[i] = c;
      for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
    }
    num = quot;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, num);
  return num;
}

/// Row j holds z^j mod Phi_n for 0 <= j < n.
struct ReductionTable {
  int n = 1;
  int phi = 1;
  std::vector<std::vector<std::int64_t>> rows;
};

inline std::shared_ptr<const ReductionTable> reduction_table(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ReductionTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<ReductionTable>();
  t->n = n;
  t->phi = euler_phi(n);
  std::vector<std::int64_t> phi_poly = cyclotomic_polynomial(n);
  std::vector<std::int64_t> cur(t->phi, 0);
  cur[0] = 1;
  if (t->phi == 1 && n == 2) cur[0] = 1;
  t->rows.reserve(n);
  for (int j = 0; j < n; ++j) {
    t->rows.push_back(cur);
    // multiply by z, then reduce the z^phi term using the monic Phi_n
    std::int64_t top = cur[t->phi - 1];
    for (int i = t->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int i = 0; i < t->phi; ++i) cur[i] -= top * phi_poly[i];
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, t);
  return t;
}

}  // namespace detail

/// Conductor cap; merging past it throws BoundExceeded.
inline int max_conductor() { return detail::conductor_limit_ref().load(); }
inline void set_max_conductor(int n) { detail::conductor_limit_ref().store(n); }

class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(const Rational& r) {  // NOLINT(implicit)
    if (!r.is_zero()) c_ = {r};
  }
  Cyclotomic(std::int64_t n) : Cyclotomic(Rational(n)) {}  // NOLINT(implicit)

  /// Value of sum over (k, c) of c * zeta_n^k with arbitrary exponents k.
  static Cyclotomic from_terms(int n, const std::vector<std::pair<std::int64_t, Rational>>& terms) {
    check_conductor(n);
    std::vector<Rational> full(n);
    for (const auto& [k, c] : terms) full[static_cast<std::size_t>(((k % n) + n) % n)] += c;
    return from_full(n, full);
  }

  /// zeta_n^k.
  static Cyclotomic zeta(int n, std::int64_t k = 1) { return from_terms(n, {{k, Rational(1)}}); }

  int conductor() const { return n_; }
  /// Power-basis coefficients at the current conductor.
  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational_value() const {
    if (!is_rational()) throw DomainError("cyclotomic value is not rational");
    return c_.empty() ? Rational() : c_[0];
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int l = merged(a.n_, b.n_);
    std::vector<Rational> x = a.lifted(l), y = b.lifted(l);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return make(l, std::move(x));
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return Cyclotomic();
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    int l = merged(a.n_, b.n_);
    std::vector<Rational> x = a.lifted(l), y = b.lifted(l);
    std::vector<Rational> full(l);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j].is_zero()) continue;
        full[(i + j) % static_cast<std::size_t>(l)] += x[i] * y[j];
      }
    }
    return from_full(l, full);
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  Cyclotomic scaled(const Rational& r) const {
    if (r.is_zero()) return Cyclotomic();
    Cyclotomic out = *this;
    for (auto& c : out.c_) c *= r;
    return out;
  }

  /// Galois automorphism zeta -> zeta^a, gcd(a, conductor) = 1.
  Cyclotomic galois(std::int64_t a) const {
    if (is_rational()) return *this;
    std::vector<Rational> full(n_);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      std::int64_t e = ((static_cast<std::int64_t>(k) * a) % n_ + n_) % n_;
      full[static_cast<std::size_t>(e)] += c_[k];
    }
    return from_full(n_, full);
  }

  /// Complex conjugation.
  Cyclotomic conj() const { return galois(-1); }

  /// Multiplicative inverse; throws DomainError on zero.
  Cyclotomic inverse() const {
    if (is_zero()) throw DomainError("cyclotomic division by zero");
    if (is_rational()) return Cyclotomic(Rational(1) / c_[0]);
    auto table = detail::reduction_table(n_);
    int phi = table->phi;
    // Column j of the system is (x * z^j) in the power basis.
    std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1));
    for (int j = 0; j < phi; ++j) {
      std::vector<Rational> full(n_);
      for (std::size_t k = 0; k < c_.size(); ++k) full[(k + j) % n_] += c_[k];
      std::vector<Rational> col = reduce_full(*table, full);
      for (int i = 0; i < phi; ++i) m[i][j] = col[i];
    }
    m[0][phi] = Rational(1);
    std::vector<Rational> sol = solve(m, phi);
    return make(n_, std::move(sol));
  }

  /// Same value at the smallest possible conductor.
  Cyclotomic normalized() const {
    if (is_rational()) {
      Cyclotomic r = *this;
      r.n_ = 1;
      return r;
    }
    for (int m = 1; m < n_; ++m) {
      if (n_ % m != 0 || m % 4 == 2) continue;
      bool fixed = true;
      for (int a = 1 + m; a < n_ && fixed; a += m) {
        if (std::gcd(a, n_) != 1) continue;
        if (!(galois(a) == *this)) fixed = false;
      }
      if (!fixed) continue;
      // Solve for coefficients at conductor m.
      int phi_m = detail::euler_phi(m);
      int phi_n = static_cast<int>(detail::reduction_table(n_)->phi);
      std::vector<std::vector<Rational>> sys(phi_n, std::vector<Rational>(phi_m + 1));
      for (int j = 0; j < phi_m; ++j) {
        Cyclotomic col = zeta(n_, static_cast<std::int64_t>(j) * (n_ / m));
        std::vector<Rational> v = col.lifted(n_);
        for (int i = 0; i < phi_n; ++i) sys[i][j] = v[i];
      }
      std::vector<Rational> mine = lifted(n_);
      for (int i = 0; i < phi_n; ++i) sys[i][phi_m] = mine[i];
      std::vector<Rational> sol = solve(sys, phi_m);
      return make(m, std::move(sol));
    }
    return *this;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    if (a.is_rational() && b.is_rational()) return a.c_ == b.c_;
    int l = std::lcm(a.n_, b.n_);
    std::vector<Rational> x = a.lifted(l), y = b.lifted(l);
    return x == y;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    std::complex<double> s = 0;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      s += c_[k].to_double() * std::polar(1.0, two_pi * static_cast<double>(k) / n_);
    }
    return s;
  }

  /// Canonical text: "Z<N>[(k,p/q),...]" at the minimal conductor.
  std::string str() const {
    Cyclotomic c = normalized();
    std::ostringstream os;
    os << 'Z' << c.n_ << '[';
    bool first = true;
    for (std::size_t k = 0; k < c.c_.size(); ++k) {
      if (c.c_[k].is_zero()) continue;
      if (!first) os << ',';
      first = false;
      os << '(' << k << ',' << c.c_[k].str() << ')';
    }
    os << ']';
    return os.str();
  }

  static Cyclotomic parse(const std::string& text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 4 || s[0] != 'Z') throw InputError("bad cyclotomic: " + text);
    auto lb = s.find('[');
    if (lb == std::string::npos || s.back() != ']') throw InputError("bad cyclotomic: " + text);
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(s.substr(1, lb - 1), &used);
      if (used != lb - 1 || n <= 0) throw InputError("bad conductor: " + text);
    } catch (const std::logic_error&) {
      throw InputError("bad conductor: " + text);
    }
    std::vector<std::pair<std::int64_t, Rational>> terms;
    std::size_t pos = lb + 1;
    while (pos < s.size() - 1) {
      if (s[pos] == ',') {
        ++pos;
        continue;
      }
      if (s[pos] != '(') throw InputError("bad cyclotomic term: " + text);
      auto close = s.find(')', pos);
      if (close == std::string::npos) throw InputError("bad cyclotomic term: " + text);
      std::string body = s.substr(pos + 1, close - pos - 1);
      auto comma = body.find(',');
      if (comma == std::string::npos) throw InputError("bad cyclotomic term: " + text);
      std::int64_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoll(body.substr(0, comma), &used);
        if (used != comma || k < 0) throw InputError("bad exponent: " + text);
      } catch (const std::logic_error&) {
        throw InputError("bad exponent: " + text);
      }
      terms.emplace_back(k, Rational::parse(body.substr(comma + 1)));
      pos = close + 1;
    }
    return from_terms(n, terms);
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

 private:
  static void check_conductor(int n) {
    if (n > max_conductor())
      throw BoundExceeded("conductor " + std::to_string(n) + " exceeds limit " + std::to_string(max_conductor()));
  }
  static int merged(int a, int b) {
    int l = std::lcm(a, b);
    check_conductor(l);
    return l;
  }

  static std::vector<Rational> reduce_full(const detail::ReductionTable& t, const std::vector<Rational>& full) {
    std::vector<Rational> out(t.phi);
    for (int j = 0; j < t.n; ++j) {
      if (full[j].is_zero()) continue;
      const auto& row = t.rows[j];
      for (int i = 0; i < t.phi; ++i)
        if (row[i] != 0) out[i] += full[j] * Rational(row[i]);
    }
    return out;
  }

  static Cyclotomic from_full(int n, const std::vector<Rational>& full) {
    if (n <= 2) {
      Rational s;
      for (int j = 0; j < n; ++j) s += (j % 2 == 0) ? full[j] : -full[j];
      return Cyclotomic(s);
    }
    auto t = detail::reduction_table(n);
    return make(n, reduce_full(*t, full));
  }

  static Cyclotomic make(int n, std::vector<Rational> c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    Cyclotomic r;
    r.c_ = std::move(c);
    r.n_ = r.c_.size() <= 1 ? 1 : n;
    return r;
  }

  /// Power-basis coefficients at conductor l (a multiple of n_), length phi(l).
  std::vector<Rational> lifted(int l) const {
    int phi_l = detail::euler_phi(l);
    if (l == n_ || is_rational()) {
      std::vector<Rational> v(c_);
      v.resize(phi_l);
      return v;
    }
    auto t = detail::reduction_table(l);
    std::vector<Rational> full(l);
    int step = l / n_;
    for (std::size_t k = 0; k < c_.size(); ++k) full[k * step] += c_[k];
    return reduce_full(*t, full);
  }

  /// Gaussian elimination on an augmented system with `cols` unknowns; the
  /// system is assumed consistent with a unique solution.
  static std::vector<Rational> solve(std::vector<std::vector<Rational>>& m, int cols) {
    int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
      int p = -1;
      for (int i = r; i < rows; ++i)
        if (!m[i][c].is_zero()) {
          p = i;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[r]);
      Rational inv = Rational(1) / m[r][c];
      for (int j = c; j <= cols; ++j) m[r][j] *= inv;
      for (int i = 0; i < rows; ++i) {
        if (i == r || m[i][c].is_zero()) continue;
        Rational f = m[i][c];
        for (int j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
      }
      pivot_col.push_back(c);
      ++r;
    }
    std::vector<Rational> sol(cols);
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) sol[pivot_col[i]] = m[i][cols];
    return sol;
  }

  int n_ = 1;
  std::vector<Rational> c_;
};

/// e^(2 pi i r).
inline Cyclotomic root_of_unity(const RationalMod1& r) {
  const Rational& v = r.value();
  if (v.is_zero()) return Cyclotomic(1);
  return Cyclotomic::zeta(static_cast<int>(v.den()), v.num()).normalized();
}

/// Positive square root of a nonnegative integer, via quadratic Gauss sums.
inline Cyclotomic sqrt_int(std::int64_t n) {
  if (n < 0) throw DomainError("sqrt of negative integer");
  if (n == 0) return Cyclotomic();
  std::int64_t square = 1, rest = 1;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      square *= p;
    }
    if (m % p == 0) {
      m /= p;
      rest *= p;
    }
  }
  rest *= m;
  Cyclotomic out(square);
  std::int64_t r = rest;
  for (std::int64_t p = 2; r > 1; ++p) {
    if (r % p != 0) continue;
    r /= p;
    Cyclotomic root;
    if (p == 2) {
      root = Cyclotomic::from_terms(8, {{1, Rational(1)}, {7, Rational(1)}});
    } else {
      std::vector<std::pair<std::int64_t, Rational>> terms;
      for (std::int64_t a = 1; a < p; ++a) {
        std::int64_t ls = 1;  // Legendre symbol by Euler's criterion
        std::int64_t e = (p - 1) / 2, base = a % p, acc = 1;
        while (e > 0) {
          if (e & 1) acc = acc * base % p;
          base = base * base % p;
          e >>= 1;
        }
        ls = (acc == 1) ? 1 : -1;
        terms.emplace_back(a, Rational(ls));
      }
      Cyclotomic g = Cyclotomic::from_terms(static_cast<int>(p), terms);
      root = (p % 4 == 1) ? g : g * Cyclotomic::zeta(4, 3);
    }
    out = out * root;
  }
  return out;
}

/// Positive square root of a nonnegative rational.
inline Cyclotomic sqrt_rational(const Rational& r) {
  if (r < Rational(0)) throw DomainError("sqrt of negative rational");
  return sqrt_int(r.num() * r.den()).scaled(Rational(1, r.den()));
}

}  // namespace strathom
