#include "wsd/session.hpp"

#include <mutex>

#include "json.hpp"
#include "wsd/error.hpp"

namespace wsd {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(); }

Reply error_reply(int status, const std::string& msg) {
  return {status, json{{"error", msg}}.dump()};
}

}  // namespace

Session::Session(SamplerState state, Strategy strategy, std::string id)
    : state_(std::move(state)), selector_(strategy), id_(std::move(id)) {
  curve_.push_back(point());
}

SessionPoint Session::point() const {
  SessionPoint p;
  p.labels = state_.history().size();
  p.pool_accuracy = state_.pool_accuracy();
  p.accuracy = state_.tracked_accuracy();
  if (!p.accuracy) p.accuracy = p.pool_accuracy;
  p.certainty_mean = state_.certainty_mean();
  return p;
}

Reply Session::state() const {
  std::shared_lock lock(mutex_);
  const auto& cfg = state_.config();
  json j{{"session", id_},
         {"labeled", state_.database().supervised_count()},
         {"pool", state_.pool_size()},
         {"iterations", state_.history().size()},
         {"strategy", std::string(to_string(selector_.strategy().kind))},
         {"pending", pending_ ? json(*pending_) : json()},
         {"config",
          {{"k", selector_.strategy().k},
           {"lambda", cfg.engine.lambda},
           {"alpha", cfg.engine.alpha},
           {"similarity", std::string(to_string(cfg.engine.backend))},
           {"decision", std::string(to_string(cfg.engine.decision))},
           {"smoothing_level", cfg.engine.smoothing_level}}}};
  return {200, j.dump()};
}

Reply Session::next() {
  std::unique_lock lock(mutex_);
  if (!pending_) {
    if (state_.pool_empty()) return error_reply(410, "pool exhausted");
    pending_ = selector_.select(state_);
  }
  const Example& e = *state_.find_example(*pending_);
  json j = json::parse(example_to_json(e));
  j.erase("gold_sense");
  json out{{"example", j},
           {"report", json::parse(to_json(state_.report(e.id)))},
           {"senses", state_.database().senses(e.verb)},
           {"pool", state_.pool_size()}};
  return {200, out.dump()};
}

Reply Session::label(const std::string& example_id, const std::string& sense) {
  std::unique_lock lock(mutex_);
  if (!pending_ || *pending_ != example_id)
    return error_reply(409, "example '" + example_id + "' is not the pending query");
  const Example& e = *state_.find_example(example_id);
  if (!state_.database().has_sense(e.verb, sense))
    return error_reply(422, "'" + sense + "' is not a sense of '" + e.verb + "'");
  state_.commit(example_id, sense, to_string(selector_.strategy().kind));
  pending_.reset();
  curve_.push_back(point());
  json j{{"labeled", state_.database().supervised_count()},
         {"pool", state_.pool_size()},
         {"iterations", state_.history().size()},
         {"record", json::parse(to_json(state_.history().back()))}};
  return {200, j.dump()};
}

Reply Session::label_json(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("example_id") || !j.contains("sense") ||
      !j["example_id"].is_string() || !j["sense"].is_string())
    return error_reply(400, "expected {\"example_id\": string, \"sense\": string}");
  return label(j["example_id"].get<std::string>(), j["sense"].get<std::string>());
}

Reply Session::curve() const {
  std::shared_lock lock(mutex_);
  json pts = json::array();
  for (const auto& p : curve_)
    pts.push_back({{"labels", p.labels},
                   {"accuracy", opt(p.accuracy)},
                   {"pool_accuracy", opt(p.pool_accuracy)},
                   {"certainty_mean", opt(p.certainty_mean)}});
  return {200, json{{"strategy", std::string(to_string(selector_.strategy().kind))}, {"points", pts}}.dump()};
}

Reply Session::example(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const Example* e = state_.find_example(id);
  if (e == nullptr) return error_reply(404, "unknown example '" + id + "'");
  json j{{"example", json::parse(example_to_json(*e))}, {"in_pool", state_.in_pool(id)}};
  if (state_.in_pool(id)) j["report"] = json::parse(to_json(state_.report(id)));
  return {200, j.dump()};
}

std::size_t Session::labels() const {
  std::shared_lock lock(mutex_);
  return state_.history().size();
}

std::optional<std::string> Session::pending() const {
  std::shared_lock lock(mutex_);
  return pending_;
}

}  // namespace wsd
