#include "patpoly/unipoly.hpp"

#include "patpoly/error.hpp"

namespace patpoly {

UniPoly::UniPoly(QVector coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(QVector{c}); }

UniPoly UniPoly::monomial(int k, const Rational& c) {
  QVector v(k + 1);
  v[k] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::binomial(int shift, int k) {
  UniPoly p = constant(1);
  for (int i = 0; i < k; ++i) {
    // factor (m + shift - i) / (i + 1)
    p = p * UniPoly(QVector{make_rational(shift - i, i + 1), make_rational(1, i + 1)});
  }
  return p;
}

UniPoly UniPoly::interpolate(const QVector& xs, const QVector& ys) {
  if (xs.size() != ys.size()) fail(ErrorCode::invalid_argument, "interpolation shape mismatch");
  UniPoly result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly basis = constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly(QVector{-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    if (denom == 0) fail(ErrorCode::invalid_argument, "repeated interpolation node");
    result = result + basis * Rational(ys[i] / denom);
  }
  return result;
}

UniPoly UniPoly::interpolate_from_zero(const std::vector<Integer>& values) {
  QVector xs, ys;
  for (std::size_t i = 0; i < values.size(); ++i) {
    xs.emplace_back(static_cast<long>(i));
    ys.emplace_back(values[i]);
  }
  return interpolate(xs, ys);
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  QVector v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o * Rational(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  QVector v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const Rational& s) const {
  QVector v = c_;
  for (auto& x : v) x *= s;
  return UniPoly(std::move(v));
}

std::string UniPoly::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    Rational mag = abs(c_[k]);
    if (first) {
      if (c_[k] < 0) out += "-";
    } else {
      out += c_[k] < 0 ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + " ";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

nlohmann::json UniPoly::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& x : c_) arr.push_back(rational_to_string(x));
  return arr;
}

UniPoly UniPoly::from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "polynomial must be a coefficient array");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_string(x.get<std::string>()));
  return UniPoly(std::move(v));
}

}  // namespace patpoly
