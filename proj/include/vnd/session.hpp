#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "vnd/report.hpp"

namespace vnd {

enum class TrainingState { Idle, Running, Done, Failed };
std::string to_string(TrainingState state);

struct TrainingStatus {
  TrainingState state = TrainingState::Idle;
  std::size_t jobId = 0;
  std::size_t step = 0;
  std::size_t totalSteps = 0;
  double currentLoss = 0.0;
  std::string error;
};

/// Immutable once stored: a trained model with the dataset snapshot it saw.
struct StoredModel {
  std::size_t id = 0;
  std::shared_ptr<const Dataset> data;
  AnalysisModel model;
  json defaultCards;  // cards under default display options, computed once
};

/// One analyst's workspace. Mutations are serialized by an exclusive
/// guard; training runs on a background thread and publishes its progress
/// through status(), which never waits on the training thread.
class Session {
 public:
  explicit Session(std::string id, std::string snapshotDir = {});
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const { return id_; }

  /// Replaces the table, drops all models and aborts a running job.
  json uploadDataset(std::string_view csv);
  json variables() const;
  json configureVariable(const std::string& name, const json& patch);
  json setThreshold(const ThresholdChoice& choice);

  /// Returns the job id. Throws TrainingInProgress, NoTarget, InvalidArgument.
  std::size_t startTraining(const TrainConfig& cfg);
  TrainingStatus status() const;
  /// Blocks until the current job (if any) has finished. For tests and the CLI.
  void waitForTraining();

  std::vector<std::shared_ptr<const StoredModel>> models() const;
  std::shared_ptr<const StoredModel> model(std::size_t id) const;

  /// Dataset under the current configuration.
  std::shared_ptr<const Dataset> currentDataset() const;

 private:
  void requireIdle() const;
  std::shared_ptr<const Dataset> buildDataset() const;  // caller holds mutex_
  json thresholdInfo(const Dataset& data) const;
  void runJob(std::stop_token stop, std::size_t jobId, std::uint64_t generation,
              std::shared_ptr<const Dataset> data, TrainConfig cfg);
  void writeSnapshot(const StoredModel& model) const;

  std::string id_;
  std::string snapshotDir_;

  mutable std::shared_mutex mutex_;
  std::optional<RawTable> table_;
  std::vector<VariableSpec> specs_;
  ThresholdChoice threshold_;
  mutable std::shared_ptr<const Dataset> datasetCache_;
  std::vector<std::shared_ptr<const StoredModel>> models_;
  std::uint64_t generation_ = 0;
  std::size_t nextJobId_ = 1;

  mutable std::mutex statusMutex_;
  TrainingStatus status_;

  // Declared last: destroyed (stopped and joined) before the state above.
  std::mutex workerMutex_;
  std::jthread worker_;
};

class SessionStore {
 public:
  explicit SessionStore(std::string snapshotDir = {}) : snapshotDir_(std::move(snapshotDir)) {}

  std::shared_ptr<Session> create();
  /// Throws UnknownSession.
  std::shared_ptr<Session> get(const std::string& id) const;

 private:
  std::string snapshotDir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace vnd
