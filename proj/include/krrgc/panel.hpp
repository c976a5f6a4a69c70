#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace krrgc {

// Row-major so that one lag-design row (one sample) is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Raised for malformed panel CSV input. line() is 1-based and counts the header.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A set of aligned, gap-free, equally spaced series. Rows are time points,
// columns are series. Values must be finite and names unique.
class Panel {
 public:
  Panel(Eigen::MatrixXd values, std::vector<std::string> names);

  std::size_t length() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t num_series() const { return static_cast<std::size_t>(values_.cols()); }
  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& names() const { return names_; }

  // Throws std::invalid_argument for an unknown id.
  std::size_t index_of(std::string_view name) const;

  Eigen::Ref<const Eigen::VectorXd> column(std::size_t g) const { return values_.col(g); }

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> names_;
};

// CSV panel format: header row of series names, then one row per time point.
Panel read_panel_csv(std::istream& in);
Panel read_panel_csv_file(const std::string& path);
void write_panel_csv(std::ostream& out, const Panel& panel);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace krrgc
