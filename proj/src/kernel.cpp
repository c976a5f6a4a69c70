#include "krrgc/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace krrgc {

namespace {

inline double squared_distance(const double* a, const double* b, Eigen::Index dim) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive");
}

void check_predict_args(const Matrix& train, const Vector& alpha, const Matrix& query, double gamma) {
  check_gamma(gamma);
  if (train.rows() != alpha.size()) throw std::invalid_argument("alpha length must match training rows");
  if (train.cols() != query.cols()) {
    throw std::invalid_argument("query dimension " + std::to_string(query.cols()) +
                                " does not match training dimension " + std::to_string(train.cols()));
  }
}

inline double gram_entry(const Matrix& rows, Eigen::Index i, Eigen::Index j, double gamma) {
  return std::exp(-gamma * squared_distance(rows.row(i).data(), rows.row(j).data(), rows.cols()));
}

inline double predict_one(const Matrix& train, const Vector& alpha, const double* q, double gamma) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < train.rows(); ++i) {
    acc += alpha[i] * std::exp(-gamma * squared_distance(train.row(i).data(), q, train.cols()));
  }
  return acc;
}

}  // namespace

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  if (a.size() != b.size()) throw std::invalid_argument("rbf_kernel: dimension mismatch");
  check_gamma(gamma);
  return std::exp(-gamma * squared_distance(a.data(), b.data(), static_cast<Eigen::Index>(a.size())));
}

Eigen::MatrixXd gram_matrix(const Matrix& rows, double gamma) {
  check_gamma(gamma);
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd k(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) k(i, j) = gram_entry(rows, i, j, gamma);
  }
  // Mirror afterwards so each column is written by one thread only.
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) k(j, i) = k(i, j);
  return k;
}

Vector kernel_predict(const Matrix& train, const Vector& alpha, const Matrix& query, double gamma) {
  check_predict_args(train, alpha, query, gamma);
  Vector out(query.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index m = 0; m < query.rows(); ++m) {
    out[m] = predict_one(train, alpha, query.row(m).data(), gamma);
  }
  return out;
}

namespace reference {

Eigen::MatrixXd gram_matrix(const Matrix& rows, double gamma) {
  check_gamma(gamma);
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      k(i, j) = gram_entry(rows, i, j, gamma);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Vector kernel_predict(const Matrix& train, const Vector& alpha, const Matrix& query, double gamma) {
  check_predict_args(train, alpha, query, gamma);
  Vector out(query.rows());
  for (Eigen::Index m = 0; m < query.rows(); ++m) {
    out[m] = predict_one(train, alpha, query.row(m).data(), gamma);
  }
  return out;
}

}  // namespace reference

}  // namespace krrgc
