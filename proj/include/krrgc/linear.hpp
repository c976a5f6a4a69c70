#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "krrgc/panel.hpp"

namespace krrgc {

class RankDeficientDesign : public std::runtime_error {
 public:
  RankDeficientDesign(const std::string& what, std::vector<std::string> columns)
      : std::runtime_error(what), columns_(std::move(columns)) {}
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::vector<std::string> columns_;
};

struct OlsFit {
  // coefficients[0] is the intercept.
  Vector coefficients;
  double rss = 0.0;
};

// Least squares on [1 | X] by column-pivoted QR. `column_names` labels the
// columns of X and is used to name the culprits when X is rank deficient.
OlsFit ols_with_intercept(const Matrix& x, const Vector& y, const std::vector<std::string>& column_names);

}  // namespace krrgc
