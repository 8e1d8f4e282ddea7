#include "vnd/network.hpp"

#include <algorithm>
#include <cmath>

#include "vnd/error.hpp"
#include "vnd/random.hpp"

namespace vnd {

Network::Network(std::size_t inputCount, std::size_t hiddenCount)
    : inputs(inputCount),
      hidden(hiddenCount),
      W(inputCount * hiddenCount, 0.0),
      b(hiddenCount, 0.0),
      v(hiddenCount, 0.0) {
  if (inputCount == 0 || hiddenCount == 0) {
    throw Error(ErrorCode::InvalidArgument, "network needs at least one input and one hidden node");
  }
}

bool Network::finite() const {
  auto ok = [](const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
  };
  return ok(W) && ok(b) && ok(v);
}

std::size_t Network::positiveNodeCount() const {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x > 0.0; }));
}

double sigmoid(double z) {
  if (z > 500.0) return 1.0;
  if (z < -500.0) return 0.0;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void hidden_outputs(const Network& net, std::span<const double> x, std::span<double> out) {
  if (x.size() != net.inputs || out.size() != net.hidden) {
    throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(x.size()) +
                                                  " values, network expects " + std::to_string(net.inputs));
  }
  for (std::size_t i = 0; i < net.hidden; ++i) {
    const double* w = net.W.data() + i * net.inputs;
    double z = net.b[i];
    for (std::size_t k = 0; k < net.inputs; ++k) z += w[k] * x[k];
    out[i] = sigmoid(z);
  }
}

std::vector<double> hidden_outputs(const Network& net, std::span<const double> x) {
  std::vector<double> h(net.hidden);
  hidden_outputs(net, x, h);
  return h;
}

double combine(const Network& net, std::span<const double> h) {
  double y = 0.0;
  for (std::size_t i = 0; i < net.hidden; ++i) y += h[i] * net.v[i];
  return y;
}

double predict(const Network& net, std::span<const double> x) { return combine(net, hidden_outputs(net, x)); }

Network init_network(std::size_t inputs, std::size_t hidden, std::uint64_t seed) {
  Network net(inputs, hidden);
  Rng rng(seed);
  const double bound = 1.0 / std::sqrt(static_cast<double>(inputs));
  for (auto& w : net.W) w = rng.uniform(-bound, bound);
  for (auto& v : net.v) v = rng.uniform(-0.5, 0.5);
  return net;
}

}  // namespace vnd
