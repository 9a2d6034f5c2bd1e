#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace steiner {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent vector; entry r is the multiplicity of variable x_r.
using Monomial = std::vector<int>;

int monomial_degree(const Monomial& m);

/// Graded lexicographic order with x_0 > x_1 > ...; true when `a` precedes `b`.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of `degree` in `var_count` variables, in graded-lex order.
std::vector<Monomial> monomials_of_degree(int var_count, int degree);

/// Number of ordered tuples whose multiplicity vector is `m`.
Integer multinomial(const Monomial& m);

/*
 * Homogeneous polynomial with arbitrary-precision integer coefficients.
 *
 * Terms are kept in graded-lex order; zero coefficients are never stored, so
 * structural equality is plain term-map equality.
 */
class HomogeneousForm {
 public:
  using TermMap = std::map<Monomial, Integer, GradedLexGreater>;

  HomogeneousForm(int var_count, int degree);

  /// sum_i coefficients[i] * x_i
  static HomogeneousForm linear(std::span<const Integer> coefficients);
  static HomogeneousForm monomial(const Monomial& exponents, const Integer& coefficient = 1);

  int var_count() const { return var_count_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Integer& c);

  HomogeneousForm& operator+=(const HomogeneousForm& other);
  HomogeneousForm& operator-=(const HomogeneousForm& other);
  HomogeneousForm& operator*=(const Integer& scalar);

  friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
  friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
  friend HomogeneousForm operator*(HomogeneousForm a, const Integer& s) { return a *= s; }
  friend HomogeneousForm operator*(const Integer& s, HomogeneousForm a) { return a *= s; }
  friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
  HomogeneousForm operator-() const { return *this * Integer(-1); }

  bool operator==(const HomogeneousForm& other) const {
    return var_count_ == other.var_count_ && degree_ == other.degree_ && terms_ == other.terms_;
  }

  std::string to_string() const;

 private:
  void check_compatible(const HomogeneousForm& other) const;

  int var_count_;
  int degree_;
  TermMap terms_;
};

HomogeneousForm pow(const HomogeneousForm& f, int exponent);

HomogeneousForm partial_derivative(const HomogeneousForm& f, int r);

template <typename Scalar>
Scalar scalar_from_integer(const Integer& c);

template <>
inline Rational scalar_from_integer<Rational>(const Integer& c) {
  return Rational(c);
}

template <>
inline std::complex<double> scalar_from_integer<std::complex<double>>(const Integer& c) {
  return {c.get_d(), 0.0};
}

template <>
inline double scalar_from_integer<double>(const Integer& c) {
  return c.get_d();
}

/// Value of f at `point`; the point must have one coordinate per variable.
template <typename Scalar>
Scalar evaluate(const HomogeneousForm& f, std::span<const Scalar> point) {
  if (static_cast<int>(point.size()) != f.var_count())
    throw std::invalid_argument("evaluate: point has " + std::to_string(point.size()) + " coordinates, form has " +
                                std::to_string(f.var_count()) + " variables");
  Scalar total(0);
  for (const auto& [m, c] : f.terms()) {
    Scalar term = scalar_from_integer<Scalar>(c);
    for (int r = 0; r < f.var_count(); ++r)
      for (int e = 0; e < m[r]; ++e) term *= point[r];
    total += term;
  }
  return total;
}

inline Rational evaluate(const HomogeneousForm& f, const std::vector<Rational>& point) {
  return evaluate<Rational>(f, std::span<const Rational>(point));
}

/// Probabilistic identity test: f - g is evaluated at `trials` random integer
/// points drawn from a range of size >= 4 * degree * trials.
bool forms_equal_pit(const HomogeneousForm& f, const HomogeneousForm& g, int trials, std::uint64_t seed);

nlohmann::json to_json(const HomogeneousForm& f);
HomogeneousForm form_from_json(const nlohmann::json& j);

}  // namespace steiner
