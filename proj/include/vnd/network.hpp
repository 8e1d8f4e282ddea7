#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vnd {

/// One-hidden-layer network without an output bias:
///   h_i = sigmoid(w_i . x + b_i),   y_p = sum_i h_i v_i
struct Network {
  std::size_t inputs = 0;   // D
  std::size_t hidden = 0;   // H
  std::vector<double> W;    // H x D row-major, row i is w_i
  std::vector<double> b;    // H
  std::vector<double> v;    // H

  Network() = default;
  Network(std::size_t inputCount, std::size_t hiddenCount);

  double& weight(std::size_t node, std::size_t input) { return W[node * inputs + input]; }
  double weight(std::size_t node, std::size_t input) const { return W[node * inputs + input]; }
  std::span<const double> nodeWeights(std::size_t node) const { return {W.data() + node * inputs, inputs}; }

  bool finite() const;
  std::size_t positiveNodeCount() const;
};

double sigmoid(double z);

/// Writes h into `out` (size H).
void hidden_outputs(const Network& net, std::span<const double> x, std::span<double> out);
std::vector<double> hidden_outputs(const Network& net, std::span<const double> x);

/// Output for precomputed hidden activations.
double combine(const Network& net, std::span<const double> h);
double predict(const Network& net, std::span<const double> x);

/// W ~ U(-1/sqrt(D), 1/sqrt(D)), b = 0, v ~ U(-0.5, 0.5).
Network init_network(std::size_t inputs, std::size_t hidden, std::uint64_t seed);

}  // namespace vnd
