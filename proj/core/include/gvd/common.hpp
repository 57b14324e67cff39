#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gvd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default absolute tolerance for sign predicates, applied after
// normalizing operands to unit Euclidean norm.
inline constexpr double kPredTol = 1e-9;

// Feasibility tolerance for polytope membership checks.
inline constexpr double kFeasTol = 1e-9;

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

inline void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw InvalidInputError(std::string(what) + ": non-finite entries");
}

}  // namespace gvd
