#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "parkfn/numeric.hpp"

namespace parkfn {

/// Dense polynomial in one variable with unbounded-integer coefficients.
/// Trailing zero coefficients are never stored, so equality is coefficient-wise.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

  static UnivariatePolynomial constant(const BigInt& c) { return UnivariatePolynomial({c}); }
  static UnivariatePolynomial monomial(std::size_t degree, const BigInt& c = 1) {
    std::vector<BigInt> v(degree + 1);
    v[degree] = c;
    return UnivariatePolynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : BigInt(0); }

  /// Horner evaluation.
  Rational evaluate(const Rational& at) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + Rational(*it);
    return acc;
  }
  BigInt evaluate(const BigInt& at) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  UnivariatePolynomial& operator+=(const UnivariatePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  UnivariatePolynomial& operator*=(const BigInt& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend UnivariatePolynomial operator+(UnivariatePolynomial a, const UnivariatePolynomial& b) { return a += b; }
  friend UnivariatePolynomial operator*(UnivariatePolynomial a, const BigInt& c) { return a *= c; }
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UnivariatePolynomial(std::move(out));
  }
  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

  std::string to_string(char var = 'y') const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t d = 0; d < coeffs_.size(); ++d) {
      if (coeffs_[d] == 0) continue;
      append_term(out, coeffs_[d], d == 0 ? std::string() : power(var, d));
    }
    return out;
  }

 private:
  friend class BivariatePolynomial;

  static std::string power(char var, std::size_t d) {
    std::string s(1, var);
    if (d > 1) s += "^" + std::to_string(d);
    return s;
  }

  static void append_term(std::string& out, const BigInt& c, const std::string& mono) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (mono.empty() || mag != 1) out += mag.str();
    out += mono;
  }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// Sparse polynomial in x and y; zero coefficients are never stored.
class BivariatePolynomial {
 public:
  using Exponents = std::pair<std::int64_t, std::int64_t>;  // (x-degree, y-degree)

  BivariatePolynomial() = default;

  static BivariatePolynomial constant(const BigInt& c) { return monomial(0, 0, c); }
  static BivariatePolynomial monomial(std::int64_t xdeg, std::int64_t ydeg, const BigInt& c = 1) {
    BivariatePolynomial p;
    p.add_term(xdeg, ydeg, c);
    return p;
  }

  void add_term(std::int64_t xdeg, std::int64_t ydeg, const BigInt& c) {
    if (xdeg < 0 || ydeg < 0) throw InputError("negative exponent in polynomial term");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({xdeg, ydeg}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  BigInt coefficient(std::int64_t xdeg, std::int64_t ydeg) const {
    auto it = terms_.find({xdeg, ydeg});
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  Rational evaluate(const Rational& x, const Rational& y) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) acc += Rational(c) * rpow(x, e.first) * rpow(y, e.second);
    return acc;
  }

  /// Substitutes x = 1, leaving a polynomial in y.
  UnivariatePolynomial at_x_one() const {
    UnivariatePolynomial out;
    for (const auto& [e, c] : terms_) out += UnivariatePolynomial::monomial(static_cast<std::size_t>(e.second), c);
    return out;
  }

  BivariatePolynomial& operator+=(const BivariatePolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
    return *this;
  }
  BivariatePolynomial& operator*=(const BigInt& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
  friend BivariatePolynomial operator*(BivariatePolynomial a, const BigInt& c) { return a *= c; }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return out;
  }
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

  /// Terms ordered by descending total degree, then descending x-degree: "x^2 + x + y".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, BigInt>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      const auto da = a.first.first + a.first.second;
      const auto db = b.first.first + b.first.second;
      if (da != db) return da > db;
      return a.first.first > b.first.first;
    });
    std::string out;
    for (const auto& [e, c] : ordered) {
      std::string mono;
      if (e.first > 0) mono += UnivariatePolynomial::power('x', static_cast<std::size_t>(e.first));
      if (e.second > 0) mono += UnivariatePolynomial::power('y', static_cast<std::size_t>(e.second));
      UnivariatePolynomial::append_term(out, c, mono);
    }
    return out;
  }

 private:
  std::map<Exponents, BigInt> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const UnivariatePolynomial& p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const BivariatePolynomial& p) { return os << p.to_string(); }

}  // namespace parkfn
