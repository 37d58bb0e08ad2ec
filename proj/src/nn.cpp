#include "ssr/nn.hpp"

#include <cmath>
#include <random>

namespace ssr::nn {

namespace {

void check_spec(const MlpSpec& spec) {
  if (spec.widths.size() < 2) {
    throw DimensionError("MlpSpec: need at least input and output widths");
  }
  for (Index w : spec.widths) {
    if (w < 1) throw DimensionError("MlpSpec: every width must be positive");
  }
}

}  // namespace

ParameterLayout ParameterLayout::make(const MlpSpec& spec) {
  check_spec(spec);
  ParameterLayout layout;
  Index offset = 0;
  for (std::size_t l = 0; l + 1 < spec.widths.size(); ++l) {
    Layer layer;
    layer.in = spec.widths[l];
    layer.out = spec.widths[l + 1];
    layer.w_offset = offset;
    offset += layer.out * layer.in;
    layer.b_offset = spec.with_bias ? offset : -1;
    if (spec.with_bias) offset += layer.out;
    layout.layers.push_back(layer);
  }
  layout.size = offset;
  return layout;
}

Matrix forward(const MlpSpec& spec, const ParameterLayout& layout,
               const Vector& theta, const Eigen::Ref<const Matrix>& x,
               ForwardTrace* trace) {
  if (theta.size() != layout.size) {
    throw DimensionError("forward: parameter vector has wrong length");
  }
  if (x.cols() != spec.widths.front()) {
    throw DimensionError("forward: input width mismatch");
  }
  const std::size_t num_layers = layout.layers.size();
  if (trace) {
    trace->inputs.assign(num_layers, Matrix());
    trace->pre_act.assign(num_layers, Matrix());
  }
  Matrix act = x;
  for (std::size_t l = 0; l < num_layers; ++l) {
    const auto& ly = layout.layers[l];
    if (trace) trace->inputs[l] = act;
    Matrix z = act * layout.weight(theta, l).transpose();
    if (ly.b_offset >= 0) {
      z.rowwise() += theta.segment(ly.b_offset, ly.out).transpose();
    }
    if (!z.allFinite()) {
      throw NumericError("forward: non-finite pre-activation in layer " +
                         std::to_string(l));
    }
    if (trace) trace->pre_act[l] = z;
    if (l + 1 < num_layers) {
      act = z.cwiseMax(0.0);
    } else {
      act = std::move(z);
    }
  }
  return act;
}

Vector forward1(const MlpSpec& spec, const ParameterLayout& layout,
                const Vector& theta, const Eigen::Ref<const Vector>& x) {
  Matrix row = x.transpose();
  return forward(spec, layout, theta, row).row(0).transpose();
}

double xent_loss(const Eigen::Ref<const Vector>& logits, Index label) {
  if (label < 0 || label >= logits.size()) {
    throw DimensionError("xent_loss: label out of range");
  }
  const double zmax = logits.maxCoeff();
  const double lse = zmax + std::log((logits.array() - zmax).exp().sum());
  return lse - logits(label);
}

Matrix softmax_rows(const Eigen::Ref<const Matrix>& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const double zmax = logits.row(i).maxCoeff();
    p.row(i) = (logits.row(i).array() - zmax).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

Matrix xent_cotangent(const Eigen::Ref<const Matrix>& logits,
                      std::span<const Index> labels) {
  if (static_cast<Index>(labels.size()) != logits.rows()) {
    throw DimensionError("xent_cotangent: label count mismatch");
  }
  Matrix g = softmax_rows(logits);
  for (Index i = 0; i < g.rows(); ++i) {
    const Index y = labels[static_cast<std::size_t>(i)];
    if (y < 0 || y >= g.cols()) {
      throw DimensionError("xent_cotangent: label out of range");
    }
    g(i, y) -= 1.0;
  }
  return g;
}

Vector backward(const MlpSpec& spec, const ParameterLayout& layout,
                const Vector& theta, const ForwardTrace& trace,
                const Eigen::Ref<const Matrix>& cotangent) {
  (void)spec;
  const std::size_t num_layers = layout.layers.size();
  if (trace.inputs.size() != num_layers) {
    throw DimensionError("backward: trace does not match the network");
  }
  Vector grad = Vector::Zero(layout.size);
  Matrix dz = cotangent;
  for (std::size_t li = num_layers; li-- > 0;) {
    const auto& ly = layout.layers[li];
    Eigen::Map<Matrix> dw(grad.data() + ly.w_offset, ly.out, ly.in);
    dw = dz.transpose() * trace.inputs[li];
    if (ly.b_offset >= 0) {
      grad.segment(ly.b_offset, ly.out) = dz.colwise().sum().transpose();
    }
    if (li > 0) {
      Matrix da = dz * layout.weight(theta, li);
      dz = da.cwiseProduct(
          (trace.pre_act[li - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return grad;
}

void accumulate_squared_grads(const MlpSpec& spec, const ParameterLayout& layout,
                              const Vector& theta, const ForwardTrace& trace,
                              const Eigen::Ref<const Matrix>& cotangent,
                              Vector& accum) {
  (void)spec;
  const std::size_t num_layers = layout.layers.size();
  if (accum.size() != layout.size) {
    throw DimensionError("accumulate_squared_grads: accumulator length");
  }
  Matrix dz = cotangent;
  for (std::size_t li = num_layers; li-- > 0;) {
    const auto& ly = layout.layers[li];
    Eigen::Map<Matrix> dw2(accum.data() + ly.w_offset, ly.out, ly.in);
    dw2.noalias() += dz.cwiseAbs2().transpose() * trace.inputs[li].cwiseAbs2();
    if (ly.b_offset >= 0) {
      accum.segment(ly.b_offset, ly.out) +=
          dz.cwiseAbs2().colwise().sum().transpose();
    }
    if (li > 0) {
      Matrix da = dz * layout.weight(theta, li);
      dz = da.cwiseProduct(
          (trace.pre_act[li - 1].array() > 0.0).cast<double>().matrix());
    }
  }
}

Vector mean_xent_gradient(const MlpSpec& spec, const ParameterLayout& layout,
                          const Vector& theta,
                          const Eigen::Ref<const Matrix>& x,
                          std::span<const Index> labels) {
  if (x.rows() == 0) {
    throw DimensionError("mean_xent_gradient: empty batch");
  }
  ForwardTrace trace;
  Matrix logits = forward(spec, layout, theta, x, &trace);
  Matrix cot = xent_cotangent(logits, labels) / static_cast<double>(x.rows());
  return backward(spec, layout, theta, trace, cot);
}

double mean_xent_loss(const MlpSpec& spec, const ParameterLayout& layout,
                      const Vector& theta, const Eigen::Ref<const Matrix>& x,
                      std::span<const Index> labels) {
  if (x.rows() == 0) {
    throw DimensionError("mean_xent_loss: empty batch");
  }
  Matrix logits = forward(spec, layout, theta, x);
  double total = 0.0;
  for (Index i = 0; i < logits.rows(); ++i) {
    total += xent_loss(logits.row(i).transpose(),
                       labels[static_cast<std::size_t>(i)]);
  }
  return total / static_cast<double>(x.rows());
}

AdamState AdamState::make(Index m, double lr) {
  AdamState s;
  s.first_moment = Vector::Zero(m);
  s.second_moment = Vector::Zero(m);
  s.lr = lr;
  return s;
}

void adam_step(AdamState& state, Vector& theta,
               const Eigen::Ref<const Vector>& grad) {
  if (grad.size() != theta.size() || grad.size() != state.first_moment.size()) {
    throw DimensionError("adam_step: length mismatch");
  }
  if (!grad.allFinite()) {
    throw NumericError("adam_step: non-finite gradient");
  }
  ++state.step_count;
  state.first_moment =
      state.beta1 * state.first_moment + (1.0 - state.beta1) * grad;
  state.second_moment = state.beta2 * state.second_moment +
                        (1.0 - state.beta2) * grad.cwiseAbs2();
  const double c1 =
      1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  const double c2 =
      1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
  theta.array() -= state.lr * (state.first_moment.array() / c1) /
                   ((state.second_moment.array() / c2).sqrt() + state.eps);
}

Vector he_uniform_init(const MlpSpec& spec, const ParameterLayout& layout,
                       std::uint64_t seed) {
  check_spec(spec);
  std::mt19937_64 rng(seed);
  Vector theta = Vector::Zero(layout.size);
  for (std::size_t l = 0; l < layout.layers.size(); ++l) {
    const auto& ly = layout.layers[l];
    const double bound = std::sqrt(6.0 / static_cast<double>(ly.in));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    for (Index i = 0; i < ly.out * ly.in; ++i) {
      theta(ly.w_offset + i) = uniform(rng);
    }
  }
  return theta;
}

}  // namespace ssr::nn
