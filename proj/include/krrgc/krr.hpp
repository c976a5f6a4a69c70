#pragma once

#include <optional>

#include "krrgc/lag_design.hpp"
#include "krrgc/panel.hpp"

namespace krrgc {

struct KernelConfig {
  double lambda = 1.0;
  // Unset means 1 / D, resolved at fit time from the design width.
  std::optional<double> gamma;

  double resolve_gamma(std::size_t dim) const;
  void validate() const;
};

class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernel ridge regression with the RBF kernel, solved in the dual:
// alpha = (K + lambda I)^-1 y via a Cholesky factorization.
class KrrModel {
 public:
  // Retries once with 1e-10 added to the diagonal if the factorization
  // fails, then throws NotPositiveDefinite.
  static KrrModel fit(Matrix train_rows, const Vector& y, const KernelConfig& config);

  Vector predict(const Matrix& rows) const;

  const Vector& alpha() const { return alpha_; }
  const Matrix& train_rows() const { return train_rows_; }
  double gamma() const { return gamma_; }
  double lambda() const { return lambda_; }
  bool jittered() const { return jittered_; }

 private:
  KrrModel() = default;

  Matrix train_rows_;
  Vector alpha_;
  double gamma_ = 0.0;
  double lambda_ = 0.0;
  bool jittered_ = false;
};

KrrModel krr_fit(const LagDesign& train, const KernelConfig& config);
Vector krr_predict(const KrrModel& model, const Matrix& rows);

}  // namespace krrgc
