#ifndef SSR_TYPES_HPP
#define SSR_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ssr {

using Index = Eigen::Index;

// Dense row-major storage throughout; serialization dumps are row-major too.
template <typename Scalar>
using MatrixX =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative method hit its iteration cap.
struct ConvergenceError : std::runtime_error {
  Index iterations;
  ConvergenceError(const std::string& what, Index iters)
      : std::runtime_error(what), iterations(iters) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MagicMismatchError : IoError {
  using IoError::IoError;
};

struct TruncatedFileError : IoError {
  using IoError::IoError;
};

struct DimensionOverflowError : IoError {
  using IoError::IoError;
};

}  // namespace ssr

#endif  // SSR_TYPES_HPP
