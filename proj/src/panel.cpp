#include "krrgc/panel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace krrgc {

Panel::Panel(Eigen::MatrixXd values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
  if (static_cast<std::size_t>(values_.cols()) != names_.size()) {
    throw std::invalid_argument("panel: " + std::to_string(names_.size()) + " names for " +
                                std::to_string(values_.cols()) + " columns");
  }
  if (names_.empty()) throw std::invalid_argument("panel: no series");
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("panel: empty series name");
    if (!seen.insert(n).second) throw std::invalid_argument("panel: duplicate series name '" + n + "'");
  }
  for (Eigen::Index g = 0; g < values_.cols(); ++g) {
    for (Eigen::Index t = 0; t < values_.rows(); ++t) {
      if (!std::isfinite(values_(t, g))) {
        throw std::invalid_argument("panel: non-finite value in series '" + names_[g] +
                                    "' at row " + std::to_string(t));
      }
    }
  }
}

std::size_t Panel::index_of(std::string_view name) const {
  for (std::size_t g = 0; g < names_.size(); ++g) {
    if (names_[g] == name) return g;
  }
  throw std::invalid_argument("unknown series id '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

}  // namespace

Panel read_panel_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw CsvError(line_no, "missing header row");
  for (auto f : split_fields(line)) names.emplace_back(f);

  const std::size_t g = names.size();
  std::vector<double> flat;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != g) {
      throw CsvError(line_no, "expected " + std::to_string(g) + " fields, found " +
                                  std::to_string(fields.size()));
    }
    for (auto f : fields) {
      if (f.empty()) throw CsvError(line_no, "missing value");
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw CsvError(line_no, "not a finite number: '" + std::string(f) + "'");
      }
      flat.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw CsvError(line_no, "no data rows");

  Eigen::MatrixXd values(rows, g);
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t j = 0; j < g; ++j) values(t, j) = flat[t * g + j];
  try {
    return Panel(std::move(values), std::move(names));
  } catch (const std::invalid_argument& e) {
    throw CsvError(1, e.what());
  }
}

Panel read_panel_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_panel_csv(in);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_panel_csv(std::ostream& out, const Panel& panel) {
  const auto& names = panel.names();
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  const auto& v = panel.values();
  for (Eigen::Index t = 0; t < v.rows(); ++t) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) out << (j ? "," : "") << format_double(v(t, j));
    out << '\n';
  }
}

}  // namespace krrgc
