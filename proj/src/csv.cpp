#include "qee/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qee {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& field, const std::string& path) {
  const std::string t = trim(field);
  if (t.empty()) throw ValidationError(path + ": empty field");
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw ValidationError(path + ": not a number: '" + t + "'");
  return value;
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& field : split_fields(line)) row.push_back(parse_number(field, path));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError(path + ": ragged rows (" + std::to_string(row.size()) + " vs " +
                            std::to_string(rows.front().size()) + " fields)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path + ": empty file");
  return rows;
}

}  // namespace

MatrixXd read_csv_matrix(const std::string& path) {
  const auto rows = read_rows(path);
  MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

VectorXd read_csv_vector(const std::string& path) {
  const MatrixXd m = read_csv_matrix(path);
  if (m.cols() != 1)
    throw ValidationError(path + ": expected a single-column vector, got " +
                          std::to_string(m.cols()) + " columns");
  return m.col(0);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv_matrix(const std::string& path, const MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_csv_vector(const std::string& path, const VectorXd& v) {
  write_csv_matrix(path, v);
}

void write_labeled_csv(const std::string& path, const std::vector<std::string>& labels,
                       const MatrixXd& values) {
  if (static_cast<Index>(labels.size()) != values.rows())
    throw ValidationError("label count does not match row count");
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << "label";
  for (Index j = 0; j < values.cols(); ++j) out << ",e" << (j + 1);
  out << '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    out << labels[static_cast<size_t>(i)];
    for (Index j = 0; j < values.cols(); ++j) out << ',' << format_double(values(i, j));
    out << '\n';
  }
}

LabeledMatrix read_labeled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  const auto header = split_fields(line);
  if (header.empty() || header.front() != "label")
    throw ValidationError(path + ": expected a 'label,e1,...' header");

  LabeledMatrix out;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw ValidationError(path + ": row width does not match header");
    out.labels.push_back(fields.front());
    std::vector<double> row;
    for (size_t k = 1; k < fields.size(); ++k) row.push_back(parse_number(fields[k], path));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path + ": no data rows");
  out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < out.values.rows(); ++i)
    for (Index j = 0; j < out.values.cols(); ++j)
      out.values(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return out;
}

}  // namespace qee
