#pragma once

#include <cstddef>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "wsd/sampler.hpp"

namespace wsd {

/// Outcome of a session call: an HTTP-style status and a JSON body.
struct Reply {
  int status = 200;
  std::string body;
};

struct SessionPoint {
  std::size_t labels = 0;
  std::optional<double> accuracy;  // tracked set when present, else pool
  std::optional<double> pool_accuracy;
  std::optional<double> certainty_mean;
};

/// One annotation campaign: a sampler state, a strategy and at most one
/// pending query. Mutating calls are serialized; reads run concurrently.
class Session {
 public:
  Session(SamplerState state, Strategy strategy, std::string id = "default");

  /// |D|, |X|, strategy, config, pending id.
  Reply state() const;
  /// Selects the next example (or repeats the pending one) with its report.
  /// 410 once the pool is empty.
  Reply next();
  /// Commits `sense` for the pending example. 409 when `example_id` is not the
  /// pending query, 422 for a sense outside the verb's inventory.
  Reply label(const std::string& example_id, const std::string& sense);
  /// Parses a `{"example_id","sense"}` body; 400 when malformed.
  Reply label_json(const std::string& body);
  Reply curve() const;
  /// 404 for an unknown id.
  Reply example(const std::string& id) const;

  std::size_t labels() const;
  std::optional<std::string> pending() const;
  /// Runs `f` on the state under a shared lock.
  template <class F>
  auto inspect(F&& f) const {
    std::shared_lock lock(mutex_);
    return f(state_);
  }

 private:
  SessionPoint point() const;

  mutable std::shared_mutex mutex_;
  SamplerState state_;
  Selector selector_;
  std::string id_;
  std::optional<std::string> pending_;
  std::vector<SessionPoint> curve_;
};

}  // namespace wsd
