#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qee/types.hpp"

namespace qee {

// Plain comma-separated numeric matrices, no header; vectors are
// single-column files. Numbers are written with 17 significant digits so a
// write/read round trip is bit exact for doubles.

MatrixXd read_csv_matrix(const std::string& path);
VectorXd read_csv_vector(const std::string& path);

void write_csv_matrix(const std::string& path, const MatrixXd& m);
void write_csv_vector(const std::string& path, const VectorXd& v);

std::string format_double(double value);

struct LabeledMatrix {
  std::vector<std::string> labels;
  MatrixXd values;
};

// Coordinate files: header "label,e1,...,eK", one labeled row per point.
void write_labeled_csv(const std::string& path, const std::vector<std::string>& labels,
                       const MatrixXd& values);
LabeledMatrix read_labeled_csv(const std::string& path);

}  // namespace qee
