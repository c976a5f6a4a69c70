#include "krrgc/linear.hpp"

#include <Eigen/QR>

namespace krrgc {

OlsFit ols_with_intercept(const Matrix& x, const Vector& y, const std::vector<std::string>& column_names) {
  if (x.rows() != y.size()) throw std::invalid_argument("ols: row/target length mismatch");
  if (static_cast<std::size_t>(x.cols()) != column_names.size()) {
    throw std::invalid_argument("ols: column name count mismatch");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols() + 1;
  if (n < p) throw std::invalid_argument("ols: fewer rows than coefficients");
  Eigen::MatrixXd a(n, p);
  a.col(0).setOnes();
  a.rightCols(p - 1) = x;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < p) {
    std::vector<std::string> culprits;
    std::string list;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) {
      const auto c = perm[k];
      culprits.push_back(c == 0 ? std::string("intercept") : column_names[c - 1]);
      list += (list.empty() ? "" : ", ") + culprits.back();
    }
    throw RankDeficientDesign("rank-deficient design; dependent columns: " + list, culprits);
  }
  OlsFit fit;
  fit.coefficients = qr.solve(y);
  fit.rss = (y - a * fit.coefficients).squaredNorm();
  return fit;
}

}  // namespace krrgc
