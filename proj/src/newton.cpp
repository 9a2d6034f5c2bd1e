#include "steiner/newton.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace steiner {

namespace {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Flattened form for repeated floating point evaluation.
struct CompiledForm {
  std::vector<std::vector<int>> exponents;
  std::vector<double> coefficients;

  explicit CompiledForm(const HomogeneousForm& f) {
    for (const auto& [e, c] : f.terms()) {
      exponents.push_back(e);
      coefficients.push_back(c.get_d());
    }
  }

  Complex operator()(const ComplexVector& x) const {
    Complex sum = 0.0;
    for (std::size_t t = 0; t < coefficients.size(); ++t) {
      Complex term = coefficients[t];
      for (std::size_t i = 0; i < exponents[t].size(); ++i) {
        for (int p = 0; p < exponents[t][i]; ++p) term *= x[static_cast<Eigen::Index>(i)];
      }
      sum += term;
    }
    return sum;
  }
};

struct System {
  std::vector<CompiledForm> values;
  std::vector<std::vector<CompiledForm>> jacobian;  // [r][j] = d f_r / d x_j

  explicit System(const std::vector<HomogeneousForm>& forms) {
    for (const auto& f : forms) {
      values.emplace_back(f);
      jacobian.emplace_back();
      for (int j = 0; j < f.var_count(); ++j) jacobian.back().emplace_back(partial_derivative(f, j));
    }
  }

  ComplexVector evaluate(const ComplexVector& x) const {
    ComplexVector out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t r = 0; r < values.size(); ++r) out[static_cast<Eigen::Index>(r)] = values[r](x);
    return out;
  }
};

double unit_residual_of(const System& system, const ComplexVector& x) {
  const double norm = x.norm();
  if (norm == 0.0) return INFINITY;
  return system.evaluate(x / norm).cwiseAbs().maxCoeff();
}

}  // namespace

double unit_residual(const std::vector<HomogeneousForm>& forms, const std::vector<Complex>& x) {
  const System system(forms);
  return unit_residual_of(system, Eigen::Map<const ComplexVector>(x.data(), static_cast<Eigen::Index>(x.size())));
}

NewtonResult newton_nullvector(const std::vector<HomogeneousForm>& forms, const NewtonOptions& options) {
  NewtonResult result;
  result.residual = INFINITY;
  if (forms.empty()) return result;
  const int n = forms.front().var_count();
  const System system(forms);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;

  for (int restart = 0; restart < options.restarts; ++restart) {
    ++result.restarts_used;
    const int chart = restart % n;
    ComplexVector x(n);
    for (int i = 0; i < n; ++i) x[i] = Complex(normal(rng), normal(rng));
    x[chart] = 1.0;

    ComplexVector f = system.evaluate(x);
    double size = f.norm();
    for (int it = 0; it < options.max_iterations; ++it) {
      ++result.iterations;
      const double res = unit_residual_of(system, x);
      result.residual = std::min(result.residual, res);
      if (res < options.tolerance) {
        // A few full Newton steps past the threshold sharpen the point.
        for (int polish = 0; polish < 3; ++polish) {
          ComplexMatrix jac(static_cast<Eigen::Index>(forms.size()), n - 1);
          for (std::size_t r = 0; r < forms.size(); ++r)
            for (int j = 0, col = 0; j < n; ++j)
              if (j != chart) jac(static_cast<Eigen::Index>(r), col++) = system.jacobian[r][static_cast<std::size_t>(j)](x);
          const ComplexVector delta = jac.completeOrthogonalDecomposition().solve(system.evaluate(x));
          ComplexVector trial = x;
          for (int j = 0, col = 0; j < n; ++j)
            if (j != chart) trial[j] -= delta[col++];
          const double polished = unit_residual_of(system, trial);
          if (!(polished < result.residual)) break;
          x = trial;
          result.residual = polished;
        }
        result.found = true;
        const ComplexVector unit = x / x.norm();
        result.point.assign(unit.data(), unit.data() + n);
        return result;
      }
      if (x.norm() > 1e12) break;  // drifting to the hyperplane x_chart = 0

      ComplexMatrix jac(static_cast<Eigen::Index>(forms.size()), n - 1);
      for (std::size_t r = 0; r < forms.size(); ++r) {
        for (int j = 0, col = 0; j < n; ++j) {
          if (j == chart) continue;
          jac(static_cast<Eigen::Index>(r), col++) = system.jacobian[r][static_cast<std::size_t>(j)](x);
        }
      }
      const ComplexVector delta = jac.completeOrthogonalDecomposition().solve(f);

      double lambda = 1.0;
      bool improved = false;
      ComplexVector trial = x;
      for (int shrink = 0; shrink < 40; ++shrink) {
        for (int j = 0, col = 0; j < n; ++j) {
          if (j == chart) continue;
          trial[j] = x[j] - lambda * delta[col++];
        }
        const ComplexVector ft = system.evaluate(trial);
        if (ft.norm() < size) {
          x = trial;
          f = ft;
          size = ft.norm();
          improved = true;
          break;
        }
        lambda *= options.damping;
      }
      if (!improved) break;
    }
  }
  return result;
}

}  // namespace steiner
