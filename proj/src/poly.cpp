#include "steiner/poly.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace steiner {

int monomial_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = monomial_degree(a);
  const int db = monomial_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void fill_monomials(Monomial& current, int index, int remaining, std::vector<Monomial>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (index == last) {
    current[index] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[index] = e;
    fill_monomials(current, index + 1, remaining - e, out);
  }
  current[index] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int var_count, int degree) {
  if (var_count < 1) throw std::invalid_argument("monomials_of_degree: need at least one variable");
  std::vector<Monomial> out;
  Monomial current(var_count, 0);
  fill_monomials(current, 0, degree, out);
  return out;
}

Integer multinomial(const Monomial& m) {
  Integer result = 1;
  unsigned long so_far = 0;
  for (int e : m) {
    for (int j = 1; j <= e; ++j) {
      ++so_far;
      result *= so_far;
      result /= j;
    }
  }
  return result;
}

HomogeneousForm::HomogeneousForm(int var_count, int degree) : var_count_(var_count), degree_(degree) {
  if (var_count < 1) throw std::invalid_argument("HomogeneousForm: need at least one variable");
  if (degree < 0) throw std::invalid_argument("HomogeneousForm: negative degree");
}

HomogeneousForm HomogeneousForm::linear(std::span<const Integer> coefficients) {
  HomogeneousForm f(static_cast<int>(coefficients.size()), 1);
  for (std::size_t r = 0; r < coefficients.size(); ++r) {
    Monomial m(coefficients.size(), 0);
    m[r] = 1;
    f.add_term(m, coefficients[r]);
  }
  return f;
}

HomogeneousForm HomogeneousForm::monomial(const Monomial& exponents, const Integer& coefficient) {
  HomogeneousForm f(static_cast<int>(exponents.size()), monomial_degree(exponents));
  f.add_term(exponents, coefficient);
  return f;
}

Integer HomogeneousForm::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void HomogeneousForm::add_term(const Monomial& m, const Integer& c) {
  if (static_cast<int>(m.size()) != var_count_) throw std::invalid_argument("add_term: wrong exponent length");
  if (std::any_of(m.begin(), m.end(), [](int e) { return e < 0; }))
    throw std::invalid_argument("add_term: negative exponent");
  if (monomial_degree(m) != degree_) throw std::invalid_argument("add_term: monomial degree differs from form degree");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void HomogeneousForm::check_compatible(const HomogeneousForm& other) const {
  if (var_count_ != other.var_count_ || degree_ != other.degree_)
    throw std::invalid_argument("forms differ in variable count or degree");
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

HomogeneousForm& HomogeneousForm::operator*=(const Integer& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.var_count() != b.var_count()) throw std::invalid_argument("product of forms in different variable counts");
  HomogeneousForm out(a.var_count(), a.degree() + b.degree());
  Monomial m(a.var_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (int r = 0; r < a.var_count(); ++r) m[r] = ma[r] + mb[r];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string HomogeneousForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer magnitude = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const bool constant = monomial_degree(m) == 0;
    if (magnitude != 1 || constant) os << magnitude;
    bool need_star = magnitude != 1;
    for (int r = 0; r < var_count_; ++r) {
      if (m[r] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << r;
      if (m[r] > 1) os << '^' << m[r];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

HomogeneousForm pow(const HomogeneousForm& f, int exponent) {
  if (exponent < 0) throw std::invalid_argument("pow: negative exponent");
  HomogeneousForm result = HomogeneousForm::monomial(Monomial(f.var_count(), 0));
  for (int i = 0; i < exponent; ++i) result = result * f;
  return result;
}

HomogeneousForm partial_derivative(const HomogeneousForm& f, int r) {
  if (r < 0 || r >= f.var_count()) throw std::invalid_argument("partial_derivative: variable index out of range");
  HomogeneousForm out(f.var_count(), std::max(f.degree() - 1, 0));
  if (f.degree() == 0) return out;
  for (const auto& [m, c] : f.terms()) {
    if (m[r] == 0) continue;
    Monomial lowered = m;
    --lowered[r];
    out.add_term(lowered, c * m[r]);
  }
  return out;
}

bool forms_equal_pit(const HomogeneousForm& f, const HomogeneousForm& g, int trials, std::uint64_t seed) {
  if (f.var_count() != g.var_count()) throw std::invalid_argument("forms_equal_pit: variable counts differ");
  if (f.degree() != g.degree()) return f.is_zero() && g.is_zero();
  const HomogeneousForm diff = f - g;
  const long range = std::max<long>(4L * std::max(f.degree(), 1) * std::max(trials, 1), 1L << 20);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(-range / 2, range / 2);
  std::vector<Rational> point(f.var_count());
  for (int t = 0; t < trials; ++t) {
    for (auto& x : point) x = Rational(draw(rng));
    if (evaluate(diff, point) != 0) return false;
  }
  return true;
}

nlohmann::json to_json(const HomogeneousForm& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back({{"exp", m}, {"coef", c.get_str()}});
  return {{"vars", f.var_count()}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

HomogeneousForm form_from_json(const nlohmann::json& j) {
  HomogeneousForm f(j.at("vars").get<int>(), j.at("degree").get<int>());
  for (const auto& term : j.at("terms")) {
    Integer c;
    if (c.set_str(term.at("coef").get<std::string>(), 10) != 0)
      throw std::invalid_argument("form JSON: coefficient is not a decimal integer");
    f.add_term(term.at("exp").get<Monomial>(), c);
  }
  return f;
}

}  // namespace steiner
