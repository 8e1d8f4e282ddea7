#include "vnd/session.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "vnd/error.hpp"

namespace vnd {

std::string to_string(TrainingState state) {
  switch (state) {
    case TrainingState::Idle: return "idle";
    case TrainingState::Running: return "running";
    case TrainingState::Done: return "done";
    case TrainingState::Failed: return "failed";
  }
  return "idle";
}

Session::Session(std::string id, std::string snapshotDir) : id_(std::move(id)), snapshotDir_(std::move(snapshotDir)) {}

Session::~Session() {
  std::lock_guard wlock(workerMutex_);
  if (worker_.joinable()) {
    worker_.request_stop();
    worker_.join();
  }
}

void Session::requireIdle() const {
  std::lock_guard lock(statusMutex_);
  if (status_.state == TrainingState::Running) {
    throw Error(ErrorCode::TrainingInProgress, "a training run is in progress");
  }
}

json Session::uploadDataset(std::string_view csv) {
  RawTable table = load_csv(csv);
  auto specs = infer_specs(table);
  std::lock_guard wlock(workerMutex_);
  if (worker_.joinable()) {
    worker_.request_stop();
    worker_.join();
  }
  std::unique_lock lock(mutex_);
  table_ = std::move(table);
  specs_ = std::move(specs);
  threshold_ = {};
  datasetCache_.reset();
  models_.clear();
  ++generation_;
  {
    std::lock_guard slock(statusMutex_);
    status_ = TrainingStatus{};
  }
  return {{"rows", table_->rowCount()}, {"variables", variable_summary(*table_, specs_)}};
}

json Session::thresholdInfo(const Dataset& data) const {
  const VariableSpec& target = data.targetSpec();
  const double raw = target.kind == VariableKind::Numeric ? denormalize_value(target, data.threshold()) : data.threshold();
  return {{"mode", threshold_.describe()},
          {"value", data.threshold()},
          {"raw", raw},
          {"highCount", data.highCount()},
          {"highFraction", static_cast<double>(data.highCount()) / static_cast<double>(data.size())},
          {"degenerate", data.targetDegenerate()}};
}

json Session::variables() const {
  std::shared_lock lock(mutex_);
  if (!table_) throw Error(ErrorCode::NoTarget, "no dataset loaded");
  json out{{"rows", table_->rowCount()}, {"variables", variable_summary(*table_, specs_)}};
  out["threshold"] = nullptr;
  try {
    if (auto data = buildDataset()) out["threshold"] = thresholdInfo(*data);
  } catch (const Error&) {
    // No target yet, or nothing enabled: the listing is still valid.
  }
  return out;
}

json Session::configureVariable(const std::string& name, const json& patch) {
  requireIdle();
  {
    std::unique_lock lock(mutex_);
    if (!table_) throw Error(ErrorCode::NoTarget, "no dataset loaded");
    auto specs = specs_;
    find_spec(specs, name);
    if (patch.contains("fork") && patch["fork"].get<bool>()) fork_variable(specs, *table_, name);
    if (patch.contains("enabled")) set_enabled(specs, name, patch["enabled"].get<bool>());
    if (patch.contains("logScale")) set_log_scale(specs, name, patch["logScale"].get<bool>());
    if (patch.contains("isTarget")) {
      if (patch["isTarget"].get<bool>()) {
        set_target(specs, name);
      } else {
        find_spec(specs, name).isTarget = false;
      }
    }
    specs_ = std::move(specs);
    datasetCache_.reset();
  }
  return variables();
}

json Session::setThreshold(const ThresholdChoice& choice) {
  requireIdle();
  std::unique_lock lock(mutex_);
  if (!table_) throw Error(ErrorCode::NoTarget, "no dataset loaded");
  const ThresholdChoice previous = threshold_;
  threshold_ = choice;
  datasetCache_.reset();
  try {
    return thresholdInfo(*buildDataset());
  } catch (...) {
    threshold_ = previous;
    datasetCache_.reset();
    throw;
  }
}

std::shared_ptr<const Dataset> Session::buildDataset() const {
  if (datasetCache_) return datasetCache_;
  if (!table_) throw Error(ErrorCode::NoTarget, "no dataset loaded");
  const Dataset base = normalize(*table_, specs_);
  datasetCache_ = std::make_shared<const Dataset>(base.withThreshold(threshold_.resolve(base)));
  return datasetCache_;
}

std::shared_ptr<const Dataset> Session::currentDataset() const {
  std::unique_lock lock(mutex_);
  return buildDataset();
}

std::size_t Session::startTraining(const TrainConfig& cfg) {
  std::lock_guard wlock(workerMutex_);
  std::unique_lock lock(mutex_);
  requireIdle();
  cfg.validate();
  auto data = buildDataset();
  if (cfg.batchSize > data->size()) {
    throw Error(ErrorCode::InvalidArgument, "batchSize exceeds the number of items");
  }
  if (worker_.joinable()) worker_.join();
  const std::size_t jobId = nextJobId_++;
  {
    std::lock_guard slock(statusMutex_);
    status_ = TrainingStatus{TrainingState::Running, jobId, 0, cfg.iterations, 0.0, {}};
  }
  worker_ = std::jthread([this, jobId, gen = generation_, data, cfg](std::stop_token stop) {
    runJob(stop, jobId, gen, data, cfg);
  });
  return jobId;
}

void Session::runJob(std::stop_token stop, std::size_t jobId, std::uint64_t generation,
                     std::shared_ptr<const Dataset> data, TrainConfig cfg) {
  auto observer = [&](std::size_t step, double loss) {
    std::lock_guard slock(statusMutex_);
    status_.step = step;
    status_.currentLoss = loss;
    return !stop.stop_requested();
  };
  try {
    AnalysisModel model = analyze(*data, cfg, observer);
    if (stop.stop_requested()) return;
    const DisplayOptions options;
    json cards = cards_to_json(model_cards(model, *data, options), *data, options);
    std::unique_lock lock(mutex_);
    if (generation != generation_) return;
    auto stored = std::make_shared<StoredModel>();
    stored->id = models_.size() + 1;
    stored->data = data;
    stored->model = std::move(model);
    stored->defaultCards = std::move(cards);
    models_.push_back(stored);
    writeSnapshot(*stored);
    std::lock_guard slock(statusMutex_);
    if (status_.jobId == jobId) status_.state = TrainingState::Done;
  } catch (const std::exception& e) {
    std::lock_guard slock(statusMutex_);
    if (status_.jobId == jobId) {
      status_.state = TrainingState::Failed;
      status_.error = e.what();
    }
  }
}

void Session::writeSnapshot(const StoredModel& stored) const {
  if (snapshotDir_.empty()) return;
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path dir = fs::path(snapshotDir_) / id_;
  fs::create_directories(dir, ec);
  if (ec) return;
  json snap{{"modelId", stored.id},
            {"dataset", dataset_to_json(*stored.data)},
            {"network", network_export(stored.model.result.network, stored.model.config)},
            {"lossCurve", to_json(stored.model.result.lossCurve)}};
  std::ofstream out(dir / ("model-" + std::to_string(stored.id) + ".json"));
  out << snap.dump();
}

TrainingStatus Session::status() const {
  std::lock_guard lock(statusMutex_);
  return status_;
}

void Session::waitForTraining() {
  std::lock_guard wlock(workerMutex_);
  if (worker_.joinable()) worker_.join();
}

std::vector<std::shared_ptr<const StoredModel>> Session::models() const {
  std::shared_lock lock(mutex_);
  return models_;
}

std::shared_ptr<const StoredModel> Session::model(std::size_t id) const {
  std::shared_lock lock(mutex_);
  if (id == 0 || id > models_.size()) throw Error(ErrorCode::UnknownModel, "unknown model " + std::to_string(id));
  return models_[id - 1];
}

std::shared_ptr<Session> SessionStore::create() {
  std::lock_guard lock(mutex_);
  std::random_device rd;
  std::ostringstream id;
  id << std::hex << ((static_cast<std::uint64_t>(rd()) << 32) ^ rd()) << '-' << ++counter_;
  auto session = std::make_shared<Session>(id.str(), snapshotDir_);
  sessions_.emplace(id.str(), session);
  return session;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

}  // namespace vnd
