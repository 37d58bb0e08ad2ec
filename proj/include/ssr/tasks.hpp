#ifndef SSR_TASKS_HPP
#define SSR_TASKS_HPP

#include "ssr/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ssr::tasks {

struct TaskDataset {
  Index task_id = 0;
  Matrix features;             // n × input_dim
  std::vector<Index> labels;   // n entries in [0, num_classes)

  Index n() const { return features.rows(); }
  Index input_dim() const { return features.cols(); }
};

struct TaskSequence {
  std::vector<TaskDataset> train;
  std::vector<TaskDataset> test;
  Index input_dim = 0;
  Index num_classes = 0;

  Index size() const { return static_cast<Index>(train.size()); }
};

/// Five sequential binary tasks in the plane.  Task k places the class-0
/// cluster at angle 2πk/5 on a radius-2 circle and the class-1 cluster
/// diametrically opposite at radius 0.8; isotropic std 0.35; 200 train and
/// 200 test points per task, split 100/100 by class.
TaskSequence synthetic2d(std::uint64_t seed);

/// Big-endian IDX container (images magic 0x803, labels magic 0x801).
/// Image payloads are scaled to [0, 1]; label payloads stay raw.
struct IdxTensor {
  std::vector<Index> dims;
  std::vector<double> values;

  Index count() const { return dims.empty() ? 0 : dims.front(); }
};

IdxTensor read_idx(const std::filesystem::path& path);
IdxTensor read_idx(std::istream& in, const std::string& name);

struct PixelPermutation {
  std::vector<Index> perm;  // bijection of [0, dim)
  std::uint64_t seed = 0;

  bool is_identity() const;
};

PixelPermutation identity_permutation(Index dim);
PixelPermutation random_permutation(Index dim, std::uint64_t seed);

/// Column gather: out(:, j) = in(:, perm[j]).
Matrix apply_permutation(const PixelPermutation& p,
                         const Eigen::Ref<const Matrix>& images);

struct MnistData {
  Matrix train_images;  // n × 784, values in [0, 1]
  std::vector<Index> train_labels;
  Matrix test_images;
  std::vector<Index> test_labels;
};

/// Reads the four standard files (train-images-idx3-ubyte, ...) from a
/// directory, accepting the common "." vs "-" magic-name variants.
MnistData load_mnist(const std::filesystem::path& dir);

bool mnist_present(const std::filesystem::path& dir);

/// Task 1 keeps pixels in place; tasks 2..T get fresh seeded permutations,
/// applied identically to train and test.
TaskSequence permuted_mnist(const MnistData& base, Index num_tasks,
                            Index subsample, std::uint64_t seed);

/// One row per example: task_id, label, then the feature values.
void export_csv(const TaskSequence& seq, std::ostream& out);

}  // namespace ssr::tasks

#endif  // SSR_TASKS_HPP
