#ifndef SSR_SKETCH_HPP
#define SSR_SKETCH_HPP

#include "ssr/hashing.hpp"
#include "ssr/types.hpp"

#include <cstdint>

namespace ssr::sketch {

/// Streaming CountSketch of a row stream: w̃[h(i)] += σ(i)·row(i).
/// Memory is t×m regardless of how many rows pass through.
class SketchState {
 public:
  SketchState(hashing::HashPair hash, Index m);

  void ingest_row(Index row_index, const Eigen::Ref<const Vector>& row);

  const Matrix& w_tilde() const { return w_tilde_; }
  const hashing::HashPair& hash() const { return hash_; }
  Index t() const { return w_tilde_.rows(); }
  Index m() const { return w_tilde_.cols(); }
  Index rows_ingested() const { return rows_ingested_; }
  bool empty() const { return rows_ingested_ == 0; }

  /// Direct bucket accumulation for callers that already grouped rows.
  void add_to_bucket(Index bucket, const Eigen::Ref<const Vector>& signed_sum,
                     Index rows_in_bucket);

 private:
  hashing::HashPair hash_;
  Matrix w_tilde_;
  Index rows_ingested_ = 0;
};

/// One-pass sketch of a dense row matrix with a fresh hash pair.
SketchState sketch_rows(const Eigen::Ref<const Matrix>& rows, Index t,
                        std::uint64_t seed);

/// √α-weighted running combination of per-task sketches.
struct AggregatedSketch {
  Matrix w_tau;
  Index task_count = 0;

  static AggregatedSketch first(const SketchState& s);
};

/// w_tau ← √α·next + √(1−α)·prev.  Requires matching shapes and α ∈ (0, 1].
AggregatedSketch online_merge(const AggregatedSketch& prev,
                              const SketchState& next, double alpha);

}  // namespace ssr::sketch

#endif  // SSR_SKETCH_HPP
