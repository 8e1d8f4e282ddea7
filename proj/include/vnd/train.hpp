#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vnd/dataset.hpp"
#include "vnd/error.hpp"
#include "vnd/network.hpp"

namespace vnd {

struct TrainConfig {
  std::size_t hiddenNodes = 20;
  std::size_t iterations = 10000;
  double beta = 0.1;
  double learningRate = 0.01;
  std::size_t batchSize = 32;
  double rmspropDecay = 0.9;
  double rmspropEpsilon = 1e-8;
  std::uint64_t seed = 1;
  /// Points in the loss curve; the full-dataset loss is evaluated this often.
  std::size_t logPoints = 50;

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

struct LossPoint {
  std::size_t step = 0;
  double loss = 0.0;  // full-dataset objective including the penalty
  double mse = 0.0;   // mean (y_p - y)^2
};

struct TrainResult {
  Network network;
  std::vector<LossPoint> lossCurve;
  double finalMse = 0.0;
};

/// Called after every step with (step, batch loss). Returning false stops
/// training early; the result then reflects the steps taken so far.
using TrainObserver = std::function<bool(std::size_t step, double batchLoss)>;

class TrainingDiverged : public Error {
 public:
  TrainingDiverged(const std::string& message, std::vector<LossPoint> partialCurve)
      : Error(ErrorCode::NonFiniteLoss, message), partialCurve_(std::move(partialCurve)) {}

  const std::vector<LossPoint>& partialCurve() const { return partialCurve_; }

 private:
  std::vector<LossPoint> partialCurve_;
};

/// Full-dataset objective and mean squared error.
LossPoint evaluate(const Network& net, const Dataset& data, double beta);

/// Mini-batch RMSprop on the homogeneous-regularized loss. Batches are
/// drawn from a seeded per-epoch permutation; the tail of an epoch shorter
/// than batchSize is skipped. The threshold comes from the dataset.
TrainResult train(const Dataset& data, const TrainConfig& cfg, const TrainObserver& observer = {});

}  // namespace vnd
