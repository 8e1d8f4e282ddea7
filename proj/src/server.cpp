#include "vnd/server.hpp"

#include <charconv>
#include <limits>
#include <cstdlib>
#include <string_view>

#include <httplib.h>

#include "vnd/error.hpp"

namespace vnd {

namespace {

constexpr const char* kJson = "application/json";

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

std::size_t parse_size(std::string_view text, const char* what) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return out;
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message,
                json extra = json::object()) {
  extra["error"] = std::string(code);
  extra["message"] = message;
  send_json(res, extra, status);
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
  }
  return body;
}

std::size_t query_size(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  return parse_size(req.get_param_value(key), key);
}

json status_to_json(const TrainingStatus& s) {
  json out{{"state", to_string(s.state)},
           {"jobId", s.jobId},
           {"step", s.step},
           {"totalSteps", s.totalSteps},
           {"currentLoss", s.currentLoss}};
  if (!s.error.empty()) out["error"] = s.error;
  return out;
}

json model_summary(const StoredModel& m) {
  return {{"id", m.id},
          {"finalMse", m.model.result.finalMse},
          {"config", to_json(m.model.config)},
          {"lossCurve", to_json(m.model.result.lossCurve)},
          {"positiveNodes", m.model.nodes.size()},
          {"dataset", dataset_summary(*m.data)}};
}

// Wraps a handler so that library errors map onto HTTP statuses.
template <typename F>
httplib::Server::Handler guarded(F&& f) {
  return [f = std::forward<F>(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const CsvError& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what(), {{"line", e.line()}});
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 422, "InvalidArgument", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "Internal", e.what());
    }
  };
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownVariable:
    case ErrorCode::UnknownModel:
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::TrainingInProgress:
    case ErrorCode::NotCategorical:
    case ErrorCode::TargetLocked:
      return 409;
    case ErrorCode::PayloadTooLarge:
      return 413;
    case ErrorCode::NonFiniteLoss:
      return 500;
    default:
      return 422;
  }
}

ServerConfig ServerConfig::fromEnvironment() {
  ServerConfig cfg;
  const std::string port = env_or("VND_PORT", "");
  if (!port.empty()) cfg.port = static_cast<int>(parse_size(port, "VND_PORT"));
  const std::string cap = env_or("VND_MAX_UPLOAD_MB", "");
  if (!cap.empty()) cfg.maxUploadBytes = parse_size(cap, "VND_MAX_UPLOAD_MB") << 20;
  cfg.snapshotDir = env_or("VND_SNAPSHOT_DIR", "");
  return cfg;
}

Server::Server(ServerConfig config)
    : config_(std::move(config)), store_(config_.snapshotDir), http_(std::make_unique<httplib::Server>()) {
  routes();
}

Server::~Server() { stop(); }

int Server::bind() {
  if (config_.port == 0) return http_->bind_to_any_port(config_.host);
  return http_->bind_to_port(config_.host, config_.port) ? config_.port : -1;
}

bool Server::listen() { return http_->listen_after_bind(); }

void Server::stop() {
  if (http_ && http_->is_running()) http_->stop();
}

void Server::waitUntilReady() const { http_->wait_until_ready(); }

void Server::routes() {
  auto& http = *http_;
  // Uploads beyond the cap get a JSON 413 rather than a dropped connection.
  http.set_payload_max_length(config_.maxUploadBytes + 1);
  const std::size_t cap = config_.maxUploadBytes;

  if (!config_.staticDir.empty()) http.set_mount_point("/", config_.staticDir);

  const std::string s = R"(/api/v1/sessions/([^/]+))";
  auto session = [this](const httplib::Request& req) { return store_.get(req.matches[1]); };

  http.Post("/api/v1/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
              send_json(res, {{"id", store_.create()->id()}}, 201);
            }));

  http.Post(s + "/dataset", guarded([session, cap](const httplib::Request& req, httplib::Response& res) {
              auto sess = session(req);
              if (req.body.size() > cap) throw Error(ErrorCode::PayloadTooLarge, "upload exceeds the size cap");
              send_json(res, sess->uploadDataset(req.body));
            }));

  http.Get(s + "/variables", guarded([session](const httplib::Request& req, httplib::Response& res) {
             send_json(res, session(req)->variables());
           }));

  http.Patch(s + "/variables/([^/]+)", guarded([session](const httplib::Request& req, httplib::Response& res) {
               send_json(res, session(req)->configureVariable(req.matches[2].str(),
                                                              parse_body(req)));
             }));

  http.Put(s + "/threshold", guarded([session](const httplib::Request& req, httplib::Response& res) {
             auto sess = session(req);
             const json body = parse_body(req);
             ThresholdChoice choice;
             if (body.contains("value")) {
               choice.mode = ThresholdChoice::Mode::Value;
               choice.value = body["value"].get<double>();
             } else {
               choice = ThresholdChoice::parse(body.value("mode", std::string("mid")));
             }
             send_json(res, sess->setThreshold(choice));
           }));

  http.Post(s + "/train", guarded([session](const httplib::Request& req, httplib::Response& res) {
              auto sess = session(req);
              const TrainConfig cfg = train_config_from_json(parse_body(req));
              const std::size_t job = sess->startTraining(cfg);
              send_json(res, {{"jobId", job}}, 202);
            }));

  http.Get(s + "/train/status", guarded([session](const httplib::Request& req, httplib::Response& res) {
             send_json(res, status_to_json(session(req)->status()));
           }));

  http.Get(s + "/models", guarded([session](const httplib::Request& req, httplib::Response& res) {
             json list = json::array();
             for (const auto& m : session(req)->models()) list.push_back(model_summary(*m));
             send_json(res, {{"models", list}});
           }));

  http.Get(s + R"(/models/(\d+)/nodes)", guarded([session](const httplib::Request& req, httplib::Response& res) {
             auto model = session(req)->model(parse_size(req.matches[2].str(), "model id"));
             DisplayOptions options;
             options.inputBins = query_size(req, "inputBins", options.inputBins);
             options.targetBins = query_size(req, "targetBins", options.targetBins);
             options.validate();
             const std::string mode = req.has_param("coverageMode") ? req.get_param_value("coverageMode") : "target";
             if (mode != "target" && mode != "coverage") {
               throw Error(ErrorCode::InvalidArgument, "coverageMode must be 'target' or 'coverage'");
             }
             const bool coverage = mode == "coverage";
             const DisplayOptions defaults;
             if (!coverage && options.inputBins == defaults.inputBins && options.targetBins == defaults.targetBins) {
               send_json(res, model->defaultCards);
               return;
             }
             send_json(res, cards_to_json(model_cards(model->model, *model->data, options), *model->data, options,
                                          coverage));
           }));

  http.Get(s + R"(/models/(\d+)/nodes/(\d+)/pcp)",
           guarded([session](const httplib::Request& req, httplib::Response& res) {
             auto model = session(req)->model(parse_size(req.matches[2].str(), "model id"));
             const std::size_t node = parse_size(req.matches[3].str(), "node index");
             double membership = kAffectedThreshold;
             if (req.has_param("membershipThreshold")) {
               membership = parse_real(req.get_param_value("membershipThreshold"))
                                .value_or(std::numeric_limits<double>::quiet_NaN());
               if (!(membership >= 0.0 && membership <= 1.0)) {
                 throw Error(ErrorCode::InvalidArgument, "membershipThreshold must be in [0,1]");
               }
             }
             for (const auto& nc : model->model.nodes) {
               if (nc.nodeIndex != node) continue;
               const auto ranking = rank_variables(model->model.result.network, *model->data, nc);
               send_json(res, to_json(pcp_payload(nc, *model->data, ranking, membership)));
               return;
             }
             throw Error(ErrorCode::UnknownModel, "node " + std::to_string(node) + " has no positive output weight");
           }));

  http.Post(s + "/filters/eval", guarded([session](const httplib::Request& req, httplib::Response& res) {
              auto sess = session(req);
              const json body = parse_body(req);
              std::shared_ptr<const Dataset> data;
              if (body.contains("modelId") && !body["modelId"].is_null()) {
                data = sess->model(body["modelId"].get<std::size_t>())->data;
              } else {
                data = sess->currentDataset();
              }
              const RangeFilter filter = range_filter_from_json(body, *data);
              const std::size_t targetBins = body.value("targetBins", std::size_t{10});
              send_json(res, to_json(eval_range_filter(filter, *data, targetBins)));
            }));

  http.Get(s + R"(/models/(\d+)/export)", guarded([session](const httplib::Request& req, httplib::Response& res) {
             auto model = session(req)->model(parse_size(req.matches[2].str(), "model id"));
             send_json(res, network_export(model->model.result.network, model->model.config));
           }));

  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 413) {
      send_error(res, 413, "PayloadTooLarge", "upload exceeds the size cap");
    } else if (res.status == 404) {
      send_error(res, 404, "NotFound", "no such endpoint");
    }
  });
}

}  // namespace vnd
