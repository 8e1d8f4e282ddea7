#pragma once

#include <span>
#include <vector>

#include "vnd/network.hpp"

namespace vnd {

/// 1 when a node works against the item's class: a positive node on a
/// low-value item, or an inhibitor on a high-value item. v == 0 is neutral.
int penalty_indicator(double y, double outputWeight, double tau);

/// Squared error plus the homogeneous penalty for one item:
///   0.5 (y_p - y)^2 + 0.5 beta sum_i a_i h_i^2
double item_loss(const Network& net, std::span<const double> x, double y, double tau, double beta);

/// The beta-free penalty part, 0.5 sum_i a_i h_i^2.
double item_penalty(const Network& net, std::span<const double> x, double y, double tau);

/// Items are addressed by index into a row-major input matrix.
struct BatchView {
  std::span<const double> rows;    // N x D
  std::span<const double> target;  // N
  std::span<const std::size_t> indices;
};

/// Mean loss over the batch.
double batch_loss(const Network& net, const BatchView& batch, double tau, double beta);

struct Gradients {
  std::vector<double> W;
  std::vector<double> b;
  std::vector<double> v;

  explicit Gradients(const Network& net) : W(net.W.size(), 0.0), b(net.b.size(), 0.0), v(net.v.size(), 0.0) {}
};

/// Exact gradient of batch_loss with the indicators held fixed. Items are
/// accumulated in batch order, nodes in index order. Returns the mean loss.
double gradients(const Network& net, const BatchView& batch, double tau, double beta, Gradients& out);

}  // namespace vnd
