#include "ssr/tasks.hpp"

#include "ssr/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

namespace ssr::tasks {

namespace {

constexpr double kPi = 3.14159265358979323846;

TaskDataset make_cluster_task(Index task_id, Index points_per_class,
                              double angle, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.35);
  const double c0x = 2.0 * std::cos(angle);
  const double c0y = 2.0 * std::sin(angle);
  const double c1x = 0.8 * std::cos(angle + kPi);
  const double c1y = 0.8 * std::sin(angle + kPi);

  TaskDataset task;
  task.task_id = task_id;
  task.features.resize(2 * points_per_class, 2);
  task.labels.resize(static_cast<std::size_t>(2 * points_per_class));
  for (Index i = 0; i < points_per_class; ++i) {
    task.features(i, 0) = c0x + noise(rng);
    task.features(i, 1) = c0y + noise(rng);
    task.labels[static_cast<std::size_t>(i)] = 0;
  }
  for (Index i = 0; i < points_per_class; ++i) {
    const Index r = points_per_class + i;
    task.features(r, 0) = c1x + noise(rng);
    task.features(r, 1) = c1y + noise(rng);
    task.labels[static_cast<std::size_t>(r)] = 1;
  }
  return task;
}

std::uint32_t read_u32_be(std::istream& in, const std::string& name) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) {
    throw TruncatedFileError(name + ": truncated header");
  }
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

}  // namespace

TaskSequence synthetic2d(std::uint64_t seed) {
  TaskSequence seq;
  seq.input_dim = 2;
  seq.num_classes = 2;
  for (Index k = 0; k < 5; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / 5.0;
    seq.train.push_back(make_cluster_task(
        k, 100, angle, hashing::derive_seed(seed, 2 * static_cast<std::uint64_t>(k))));
    seq.test.push_back(make_cluster_task(
        k, 100, angle,
        hashing::derive_seed(seed, 2 * static_cast<std::uint64_t>(k) + 1)));
  }
  return seq;
}

IdxTensor read_idx(std::istream& in, const std::string& name) {
  const std::uint32_t magic = read_u32_be(in, name);
  const std::uint32_t kImages = 0x00000803;
  const std::uint32_t kLabels = 0x00000801;
  if (magic != kImages && magic != kLabels) {
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "%s: magic mismatch, expected 0x%08x or 0x%08x, found 0x%08x",
                  name.c_str(), kImages, kLabels, magic);
    throw MagicMismatchError(buf);
  }
  const int ndims = magic == kImages ? 3 : 1;
  IdxTensor tensor;
  std::size_t total = 1;
  for (int d = 0; d < ndims; ++d) {
    const std::uint32_t dim = read_u32_be(in, name);
    tensor.dims.push_back(static_cast<Index>(dim));
    if (dim != 0 && total > std::numeric_limits<std::size_t>::max() / dim) {
      throw DimensionOverflowError(name + ": dimension product overflows");
    }
    total *= dim;
  }
  if (total > std::size_t{1} << 33) {
    throw DimensionOverflowError(name + ": payload implausibly large");
  }
  std::vector<unsigned char> raw(total);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(total));
  if (static_cast<std::size_t>(in.gcount()) != total) {
    throw TruncatedFileError(name + ": expected " + std::to_string(total) +
                             " payload bytes");
  }
  tensor.values.resize(total);
  const double scale = magic == kImages ? 1.0 / 255.0 : 1.0;
  for (std::size_t i = 0; i < total; ++i) {
    tensor.values[i] = scale * static_cast<double>(raw[i]);
  }
  return tensor;
}

IdxTensor read_idx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("read_idx: cannot open " + path.string());
  }
  return read_idx(in, path.filename().string());
}

bool PixelPermutation::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != static_cast<Index>(i)) return false;
  }
  return true;
}

PixelPermutation identity_permutation(Index dim) {
  PixelPermutation p;
  p.perm.resize(static_cast<std::size_t>(dim));
  std::iota(p.perm.begin(), p.perm.end(), Index{0});
  return p;
}

PixelPermutation random_permutation(Index dim, std::uint64_t seed) {
  PixelPermutation p = identity_permutation(dim);
  p.seed = seed;
  std::uint64_t state = seed;
  for (Index i = dim - 1; i > 0; --i) {
    // unbiased bounded draw via rejection
    const std::uint64_t bound = static_cast<std::uint64_t>(i) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = hashing::splitmix64(state);
    } while (x >= limit);
    std::swap(p.perm[static_cast<std::size_t>(i)],
              p.perm[static_cast<std::size_t>(x % bound)]);
  }
  return p;
}

Matrix apply_permutation(const PixelPermutation& p,
                         const Eigen::Ref<const Matrix>& images) {
  if (static_cast<Index>(p.perm.size()) != images.cols()) {
    throw DimensionError("apply_permutation: width mismatch");
  }
  Matrix out(images.rows(), images.cols());
  for (Index j = 0; j < images.cols(); ++j) {
    out.col(j) = images.col(p.perm[static_cast<std::size_t>(j)]);
  }
  return out;
}

namespace {

std::filesystem::path find_mnist_file(const std::filesystem::path& dir,
                                      const std::string& stem,
                                      const std::string& kind) {
  // both "train-images-idx3-ubyte" and "train-images.idx3-ubyte" circulate
  for (const char* sep : {"-", "."}) {
    std::filesystem::path candidate = dir / (stem + sep + kind);
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return {};
}

Matrix images_to_matrix(const IdxTensor& t, const std::string& name) {
  if (t.dims.size() != 3) {
    throw IoError(name + ": expected an image tensor");
  }
  const Index n = t.dims[0];
  const Index pixels = t.dims[1] * t.dims[2];
  Matrix m(n, pixels);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < pixels; ++j) {
      m(i, j) = t.values[static_cast<std::size_t>(i * pixels + j)];
    }
  }
  return m;
}

std::vector<Index> labels_to_vector(const IdxTensor& t, const std::string& name) {
  if (t.dims.size() != 1) {
    throw IoError(name + ": expected a label tensor");
  }
  std::vector<Index> labels(t.values.size());
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    labels[i] = static_cast<Index>(t.values[i]);
  }
  return labels;
}

}  // namespace

bool mnist_present(const std::filesystem::path& dir) {
  return !find_mnist_file(dir, "train-images", "idx3-ubyte").empty() &&
         !find_mnist_file(dir, "train-labels", "idx1-ubyte").empty() &&
         !find_mnist_file(dir, "t10k-images", "idx3-ubyte").empty() &&
         !find_mnist_file(dir, "t10k-labels", "idx1-ubyte").empty();
}

MnistData load_mnist(const std::filesystem::path& dir) {
  const auto file = [&](const std::string& stem, const std::string& kind) {
    std::filesystem::path p = find_mnist_file(dir, stem, kind);
    if (p.empty()) {
      throw IoError("load_mnist: missing " + stem + "-" + kind + " under " +
                    dir.string());
    }
    return p;
  };
  MnistData data;
  data.train_images = images_to_matrix(
      read_idx(file("train-images", "idx3-ubyte")), "train images");
  data.train_labels = labels_to_vector(
      read_idx(file("train-labels", "idx1-ubyte")), "train labels");
  data.test_images = images_to_matrix(
      read_idx(file("t10k-images", "idx3-ubyte")), "test images");
  data.test_labels = labels_to_vector(
      read_idx(file("t10k-labels", "idx1-ubyte")), "test labels");
  if (data.train_images.rows() != static_cast<Index>(data.train_labels.size()) ||
      data.test_images.rows() != static_cast<Index>(data.test_labels.size())) {
    throw IoError("load_mnist: image/label counts disagree");
  }
  return data;
}

TaskSequence permuted_mnist(const MnistData& base, Index num_tasks,
                            Index subsample, std::uint64_t seed) {
  if (num_tasks < 1) {
    throw DimensionError("permuted_mnist: need at least one task");
  }
  if (subsample < 1 || subsample > base.train_images.rows()) {
    throw DimensionError("permuted_mnist: subsample out of range");
  }
  const Index dim = base.train_images.cols();

  // one seeded subset of the training pool, shared by every task
  std::vector<Index> order(static_cast<std::size_t>(base.train_images.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::uint64_t shuffle_state = hashing::derive_seed(seed, 0xDA7AULL);
  for (Index i = static_cast<Index>(order.size()) - 1; i > 0; --i) {
    const std::uint64_t bound = static_cast<std::uint64_t>(i) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = hashing::splitmix64(shuffle_state);
    } while (x >= limit);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(x % bound)]);
  }

  Matrix train_pool(subsample, dim);
  std::vector<Index> train_labels(static_cast<std::size_t>(subsample));
  for (Index i = 0; i < subsample; ++i) {
    const Index src = order[static_cast<std::size_t>(i)];
    train_pool.row(i) = base.train_images.row(src);
    train_labels[static_cast<std::size_t>(i)] =
        base.train_labels[static_cast<std::size_t>(src)];
  }

  TaskSequence seq;
  seq.input_dim = dim;
  seq.num_classes = 10;
  for (Index task = 0; task < num_tasks; ++task) {
    PixelPermutation perm =
        task == 0 ? identity_permutation(dim)
                  : random_permutation(
                        dim, hashing::derive_seed(seed, 1000 + static_cast<std::uint64_t>(task)));
    TaskDataset train;
    train.task_id = task;
    train.features = apply_permutation(perm, train_pool);
    train.labels = train_labels;
    seq.train.push_back(std::move(train));

    TaskDataset test;
    test.task_id = task;
    test.features = apply_permutation(perm, base.test_images);
    test.labels = base.test_labels;
    seq.test.push_back(std::move(test));
  }
  return seq;
}

void export_csv(const TaskSequence& seq, std::ostream& out) {
  out << "task_id,label";
  for (Index j = 0; j < seq.input_dim; ++j) out << ",x" << j;
  out << "\n";
  char buf[32];
  for (const TaskDataset& task : seq.train) {
    for (Index i = 0; i < task.n(); ++i) {
      out << task.task_id << ','
          << task.labels[static_cast<std::size_t>(i)];
      for (Index j = 0; j < task.input_dim(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.12g", task.features(i, j));
        out << ',' << buf;
      }
      out << "\n";
    }
  }
}

}  // namespace ssr::tasks
