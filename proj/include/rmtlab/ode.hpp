#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace rmtlab {

struct IntegrationError : std::runtime_error {
  double last_good_x;
  IntegrationError(const std::string& what, double x)
      : std::runtime_error(what), last_good_x(x) {}
};

using OdeRhs = std::function<void(double x, const std::vector<double>& y, std::vector<double>& dy)>;

/// Dense ODE solution: accepted steps with derivatives, evaluated in between
/// by cubic Hermite interpolation.
class OdeSolution {
 public:
  void push(double x, std::vector<double> y, std::vector<double> dy);

  double x_front() const { return xs_.front(); }
  double x_back() const { return xs_.back(); }
  std::size_t size() const { return xs_.size(); }
  double x_at(std::size_t i) const { return xs_[i]; }
  const std::vector<double>& y_at(std::size_t i) const { return ys_[i]; }
  const std::vector<double>& dy_at(std::size_t i) const { return dys_[i]; }

  std::vector<double> eval(double x) const;
  std::vector<double> eval_derivative(double x) const;

 private:
  std::size_t locate(double x) const;
  std::vector<double> xs_;
  std::vector<std::vector<double>> ys_;
  std::vector<std::vector<double>> dys_;
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) from x0 to x1 with
/// local error <= tol per step component (mixed abs/rel).
OdeSolution ode_solve(const OdeRhs& rhs, double x0, double x1, const std::vector<double>& y0,
                      double tol);

}  // namespace rmtlab
