#include "ssr/sketch.hpp"

#include <cmath>
#include <utility>

namespace ssr::sketch {

SketchState::SketchState(hashing::HashPair hash, Index m)
    : hash_(std::move(hash)), w_tilde_(Matrix::Zero(hash_.t(), m)) {
  if (m < 1) {
    throw DimensionError("SketchState: row width must be at least 1");
  }
}

void SketchState::ingest_row(Index row_index,
                             const Eigen::Ref<const Vector>& row) {
  if (row.size() != w_tilde_.cols()) {
    throw DimensionError("SketchState: row has " + std::to_string(row.size()) +
                         " entries, sketch expects " +
                         std::to_string(w_tilde_.cols()));
  }
  const auto [bucket, sign] = hash_.eval(static_cast<std::uint64_t>(row_index));
  if (sign > 0) {
    w_tilde_.row(bucket) += row.transpose();
  } else {
    w_tilde_.row(bucket) -= row.transpose();
  }
  ++rows_ingested_;
}

void SketchState::add_to_bucket(Index bucket,
                                const Eigen::Ref<const Vector>& signed_sum,
                                Index rows_in_bucket) {
  if (bucket < 0 || bucket >= t()) {
    throw DimensionError("SketchState: bucket out of range");
  }
  if (signed_sum.size() != w_tilde_.cols()) {
    throw DimensionError("SketchState: bucket sum width mismatch");
  }
  w_tilde_.row(bucket) += signed_sum.transpose();
  rows_ingested_ += rows_in_bucket;
}

SketchState sketch_rows(const Eigen::Ref<const Matrix>& rows, Index t,
                        std::uint64_t seed) {
  SketchState state(hashing::HashPair::independent(t, seed), rows.cols());
  for (Index i = 0; i < rows.rows(); ++i) {
    state.ingest_row(i, rows.row(i).transpose());
  }
  return state;
}

AggregatedSketch AggregatedSketch::first(const SketchState& s) {
  return AggregatedSketch{s.w_tilde(), 1};
}

AggregatedSketch online_merge(const AggregatedSketch& prev,
                              const SketchState& next, double alpha) {
  if (prev.w_tau.rows() != next.t() || prev.w_tau.cols() != next.m()) {
    throw DimensionError("online_merge: sketch shapes differ");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DimensionError("online_merge: alpha must lie in (0, 1]");
  }
  AggregatedSketch out;
  out.w_tau = std::sqrt(alpha) * next.w_tilde() +
              std::sqrt(1.0 - alpha) * prev.w_tau;
  out.task_count = prev.task_count + 1;
  return out;
}

}  // namespace ssr::sketch
