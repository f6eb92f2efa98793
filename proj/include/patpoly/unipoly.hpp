#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patpoly/exactlinalg.hpp"

namespace patpoly {

/// Univariate polynomial with rational coefficients, lowest degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(QVector coeffs);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(int k, const Rational& c = 1);
  /// binom(m + shift, k) as a polynomial in m.
  static UniPoly binomial(int shift, int k);
  /// Unique polynomial of degree <= values.size()-1 with p(i) = values[i].
  static UniPoly interpolate_from_zero(const std::vector<Integer>& values);
  static UniPoly interpolate(const QVector& xs, const QVector& ys);
  static UniPoly from_json(const nlohmann::json& j);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  const QVector& coeffs() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const;
  Rational operator()(long x) const { return (*this)(Rational(x)); }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& s) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  /// "1 + 11/3 m + 9 m^2 + 31/3 m^3"
  std::string to_string(std::string_view var = "m") const;
  nlohmann::json to_json() const;

 private:
  void trim();
  QVector c_;
};

}  // namespace patpoly
