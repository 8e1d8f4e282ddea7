#include "vnd/objective.hpp"

#include <algorithm>

#include "vnd/error.hpp"

namespace vnd {

int penalty_indicator(double y, double outputWeight, double tau) {
  const bool high = y >= tau;
  return (high && outputWeight < 0.0) || (!high && outputWeight > 0.0) ? 1 : 0;
}

double item_penalty(const Network& net, std::span<const double> x, double y, double tau) {
  const auto h = hidden_outputs(net, x);
  double penalty = 0.0;
  for (std::size_t i = 0; i < net.hidden; ++i) {
    penalty += penalty_indicator(y, net.v[i], tau) * h[i] * h[i];
  }
  return 0.5 * penalty;
}

double item_loss(const Network& net, std::span<const double> x, double y, double tau, double beta) {
  const auto h = hidden_outputs(net, x);
  const double residual = combine(net, h) - y;
  double penalty = 0.0;
  for (std::size_t i = 0; i < net.hidden; ++i) {
    penalty += penalty_indicator(y, net.v[i], tau) * h[i] * h[i];
  }
  return 0.5 * residual * residual + 0.5 * beta * penalty;
}

namespace {

void check_batch(const Network& net, const BatchView& batch) {
  if (batch.indices.empty()) throw Error(ErrorCode::InvalidArgument, "empty batch");
  if (batch.rows.size() != batch.target.size() * net.inputs) {
    throw Error(ErrorCode::DimensionMismatch, "batch rows do not match network input count");
  }
}

}  // namespace

double batch_loss(const Network& net, const BatchView& batch, double tau, double beta) {
  check_batch(net, batch);
  double total = 0.0;
  for (std::size_t n : batch.indices) {
    total += item_loss(net, batch.rows.subspan(n * net.inputs, net.inputs), batch.target[n], tau, beta);
  }
  return total / static_cast<double>(batch.indices.size());
}

double gradients(const Network& net, const BatchView& batch, double tau, double beta, Gradients& out) {
  check_batch(net, batch);
  std::fill(out.W.begin(), out.W.end(), 0.0);
  std::fill(out.b.begin(), out.b.end(), 0.0);
  std::fill(out.v.begin(), out.v.end(), 0.0);

  const std::size_t D = net.inputs;
  const std::size_t H = net.hidden;
  const double scale = 1.0 / static_cast<double>(batch.indices.size());
  std::vector<double> h(H);
  double total = 0.0;

  for (std::size_t n : batch.indices) {
    const auto x = batch.rows.subspan(n * D, D);
    const double y = batch.target[n];
    hidden_outputs(net, x, h);
    const double residual = combine(net, h) - y;

    double penalty = 0.0;
    for (std::size_t i = 0; i < H; ++i) {
      const int a = penalty_indicator(y, net.v[i], tau);
      penalty += a * h[i] * h[i];

      out.v[i] += scale * residual * h[i];
      // dL/dz_i = (residual v_i + beta a_i h_i) * h_i (1 - h_i)
      const double dz = scale * (residual * net.v[i] + beta * a * h[i]) * h[i] * (1.0 - h[i]);
      out.b[i] += dz;
      double* gw = out.W.data() + i * D;
      for (std::size_t k = 0; k < D; ++k) gw[k] += dz * x[k];
    }
    total += 0.5 * residual * residual + 0.5 * beta * penalty;
  }
  return total * scale;
}

}  // namespace vnd
