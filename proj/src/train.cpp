#include "vnd/train.hpp"

#include <cmath>
#include <numeric>

#include "vnd/objective.hpp"
#include "vnd/random.hpp"

namespace vnd {
namespace {

struct RmsProp {
  double decay;
  double epsilon;
  double rate;

  void step(std::vector<double>& params, const std::vector<double>& grad, std::vector<double>& accum) const {
    for (std::size_t j = 0; j < params.size(); ++j) {
      accum[j] = decay * accum[j] + (1.0 - decay) * grad[j] * grad[j];
      params[j] -= rate * grad[j] / std::sqrt(accum[j] + epsilon);
    }
  }
};

}  // namespace

void TrainConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (hiddenNodes == 0) fail("hiddenNodes must be >= 1");
  if (batchSize == 0) fail("batchSize must be >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta must be finite and >= 0");
  if (!(learningRate > 0.0) || !std::isfinite(learningRate)) fail("learningRate must be > 0");
  if (!(rmspropDecay > 0.0 && rmspropDecay < 1.0)) fail("rmspropDecay must lie in (0,1)");
  if (!(rmspropEpsilon > 0.0) || !std::isfinite(rmspropEpsilon)) fail("rmspropEpsilon must be > 0");
}

LossPoint evaluate(const Network& net, const Dataset& data, double beta) {
  std::vector<double> h(net.hidden);
  double loss = 0.0;
  double sq = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    hidden_outputs(net, data.row(n), h);
    const double y = data.target()[n];
    const double r = combine(net, h) - y;
    double penalty = 0.0;
    for (std::size_t i = 0; i < net.hidden; ++i) {
      penalty += penalty_indicator(y, net.v[i], data.threshold()) * h[i] * h[i];
    }
    sq += r * r;
    loss += 0.5 * r * r + 0.5 * beta * penalty;
  }
  const double count = static_cast<double>(std::max<std::size_t>(data.size(), 1));
  return {0, loss / count, sq / count};
}

TrainResult train(const Dataset& data, const TrainConfig& cfg, const TrainObserver& observer) {
  cfg.validate();
  if (data.inputCount() == 0) throw Error(ErrorCode::NoEnabledInputs, "dataset has no inputs");
  if (cfg.batchSize > data.size()) {
    throw Error(ErrorCode::InvalidArgument, "batchSize " + std::to_string(cfg.batchSize) +
                                                " exceeds item count " + std::to_string(data.size()));
  }

  TrainResult result;
  result.network = init_network(data.inputCount(), cfg.hiddenNodes, cfg.seed);
  Network& net = result.network;

  // Shuffling uses a stream independent of initialization.
  Rng rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  std::size_t cursor = 0;

  const RmsProp opt{cfg.rmspropDecay, cfg.rmspropEpsilon, cfg.learningRate};
  Gradients grad(net);
  Gradients accum(net);
  const std::size_t logEvery = std::max<std::size_t>(1, cfg.iterations / std::max<std::size_t>(cfg.logPoints, 1));

  auto record = [&](std::size_t step) {
    LossPoint p = evaluate(net, data, cfg.beta);
    p.step = step;
    result.lossCurve.push_back(p);
    return p;
  };
  record(0);

  for (std::size_t step = 1; step <= cfg.iterations; ++step) {
    if (cursor + cfg.batchSize > order.size()) {
      rng.shuffle(std::span<std::size_t>(order));
      cursor = 0;
    }
    const BatchView batch{data.rows(), data.target(),
                          std::span<const std::size_t>(order.data() + cursor, cfg.batchSize)};
    cursor += cfg.batchSize;

    const double loss = gradients(net, batch, data.threshold(), cfg.beta, grad);
    if (!std::isfinite(loss)) {
      throw TrainingDiverged("non-finite loss at step " + std::to_string(step), result.lossCurve);
    }
    opt.step(net.W, grad.W, accum.W);
    opt.step(net.b, grad.b, accum.b);
    opt.step(net.v, grad.v, accum.v);
    if (!net.finite()) {
      throw TrainingDiverged("non-finite parameters at step " + std::to_string(step), result.lossCurve);
    }

    const bool last = step == cfg.iterations;
    if (step % logEvery == 0 || last) record(step);
    if (observer && !observer(step, loss)) {
      if (!last && result.lossCurve.back().step != step) record(step);
      break;
    }
  }
  result.finalMse = result.lossCurve.back().mse;
  return result;
}

}  // namespace vnd
