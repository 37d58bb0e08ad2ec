#ifndef SSR_NN_HPP
#define SSR_NN_HPP

#include "ssr/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ssr::nn {

/// Fully connected ReLU network; the last layer is linear (logits).
struct MlpSpec {
  std::vector<Index> widths;  // input, hidden..., output
  bool with_bias = true;
};

/// Flat-parameter bookkeeping: weights are out×in row-major blocks followed
/// by the optional bias, layer by layer.
struct ParameterLayout {
  struct Layer {
    Index w_offset;
    Index out;
    Index in;
    Index b_offset;  // -1 when the network has no biases
  };
  std::vector<Layer> layers;
  Index size = 0;

  static ParameterLayout make(const MlpSpec& spec);

  Eigen::Map<const Matrix> weight(const Vector& theta, std::size_t l) const {
    const Layer& ly = layers[l];
    return {theta.data() + ly.w_offset, ly.out, ly.in};
  }
  Eigen::Map<Matrix> weight(Vector& theta, std::size_t l) const {
    const Layer& ly = layers[l];
    return {theta.data() + ly.w_offset, ly.out, ly.in};
  }
  bool has_bias() const {
    return !layers.empty() && layers.front().b_offset >= 0;
  }
};

/// Per-layer inputs and pre-activations retained for the backward pass.
struct ForwardTrace {
  std::vector<Matrix> inputs;   // inputs[l]: batch × in_l
  std::vector<Matrix> pre_act;  // pre_act[l]: batch × out_l
};

/// Batched forward pass; rows of x are examples, rows of the result logits.
Matrix forward(const MlpSpec& spec, const ParameterLayout& layout,
               const Vector& theta, const Eigen::Ref<const Matrix>& x,
               ForwardTrace* trace = nullptr);

Vector forward1(const MlpSpec& spec, const ParameterLayout& layout,
                const Vector& theta, const Eigen::Ref<const Vector>& x);

/// −log softmax(logits)[label], computed with max subtraction.
double xent_loss(const Eigen::Ref<const Vector>& logits, Index label);

Matrix softmax_rows(const Eigen::Ref<const Matrix>& logits);

/// Row i is softmax(logits_i) − onehot(labels_i): the cross-entropy cotangent.
Matrix xent_cotangent(const Eigen::Ref<const Matrix>& logits,
                      std::span<const Index> labels);

/// Gradient of Σ_i ⟨cotangent_i, logits_i⟩ with respect to θ, as one flat
/// vector; the trace must come from a forward over the same inputs.
Vector backward(const MlpSpec& spec, const ParameterLayout& layout,
                const Vector& theta, const ForwardTrace& trace,
                const Eigen::Ref<const Matrix>& cotangent);

/// Accumulates Σ_i g_i ∘ g_i where g_i is the parameter gradient of example i
/// alone.  Exact: per-example weight gradients are rank-1 outer products, so
/// their squares factor into squared GEMMs.
void accumulate_squared_grads(const MlpSpec& spec, const ParameterLayout& layout,
                              const Vector& theta, const ForwardTrace& trace,
                              const Eigen::Ref<const Matrix>& cotangent,
                              Vector& accum);

/// Mean cross-entropy gradient over a labelled batch.
Vector mean_xent_gradient(const MlpSpec& spec, const ParameterLayout& layout,
                          const Vector& theta,
                          const Eigen::Ref<const Matrix>& x,
                          std::span<const Index> labels);

double mean_xent_loss(const MlpSpec& spec, const ParameterLayout& layout,
                      const Vector& theta, const Eigen::Ref<const Matrix>& x,
                      std::span<const Index> labels);

struct AdamState {
  Vector first_moment;
  Vector second_moment;
  Index step_count = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState make(Index m, double lr);
};

/// Bias-corrected moment update in place.
void adam_step(AdamState& state, Vector& theta,
               const Eigen::Ref<const Vector>& grad);

/// Fan-in-scaled uniform weights, zero biases.
Vector he_uniform_init(const MlpSpec& spec, const ParameterLayout& layout,
                       std::uint64_t seed);

}  // namespace ssr::nn

#endif  // SSR_NN_HPP
