#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace qee {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input files or instance data violate the ingestion contract.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A matrix required to be positive semi-definite is not.
class NotPsdError : public Error {
public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

// Neither point set passes the Schoenberg test.
class NeitherSetEuclideanError : public Error {
public:
  using Error::Error;
};

// The base cosine-law matrix has no usable cross-block mass.
class ZetaNonpositiveError : public Error {
public:
  ZetaNonpositiveError(const std::string& what, double zeta)
      : Error(what), zeta(zeta) {}
  double zeta;
};

// The constant search ran out of doublings (or an override was rejected).
class SearchExhaustedError : public Error {
public:
  using Error::Error;
};

}  // namespace qee
