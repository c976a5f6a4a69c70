#include "krrgc/krr.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "krrgc/kernel.hpp"

namespace krrgc {

void KernelConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
  if (gamma && (!(*gamma > 0.0) || !std::isfinite(*gamma))) {
    throw std::invalid_argument("gamma must be positive");
  }
}

double KernelConfig::resolve_gamma(std::size_t dim) const {
  if (gamma) return *gamma;
  if (dim == 0) throw std::invalid_argument("cannot resolve gamma for a zero-width design");
  return 1.0 / static_cast<double>(dim);
}

KrrModel KrrModel::fit(Matrix train_rows, const Vector& y, const KernelConfig& config) {
  config.validate();
  if (train_rows.rows() != y.size()) throw std::invalid_argument("krr_fit: row/target length mismatch");
  if (train_rows.rows() < 1) throw std::invalid_argument("krr_fit: no training rows");
  if (train_rows.cols() < 1) throw std::invalid_argument("krr_fit: design has no columns");

  KrrModel m;
  m.gamma_ = config.resolve_gamma(static_cast<std::size_t>(train_rows.cols()));
  m.lambda_ = config.lambda;

  Eigen::MatrixXd system = gram_matrix(train_rows, m.gamma_);
  system.diagonal().array() += m.lambda_;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    system.diagonal().array() += 1e-10;
    llt.compute(system);
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite("krr_fit: K + lambda I is not numerically positive definite");
    }
    m.jittered_ = true;
  }
  m.alpha_ = llt.solve(y);
  m.train_rows_ = std::move(train_rows);
  return m;
}

Vector KrrModel::predict(const Matrix& rows) const {
  return kernel_predict(train_rows_, alpha_, rows, gamma_);
}

KrrModel krr_fit(const LagDesign& train, const KernelConfig& config) {
  return KrrModel::fit(train.features, train.target, config);
}

Vector krr_predict(const KrrModel& model, const Matrix& rows) { return model.predict(rows); }

}  // namespace krrgc
