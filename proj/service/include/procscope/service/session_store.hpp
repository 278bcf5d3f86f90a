#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "procscope/ocel.hpp"
#include "procscope/scope_engine.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope::service {

/// Result of the last successful enrichment. Immutable once published.
struct EnrichedState {
  Log log;
  std::vector<ScopeSummary> summaries;
};

/// One uploaded log. Writers hold `mutex`; readers take a copy of
/// `enriched` under it and then work on the immutable value unlocked.
struct Session {
  std::string id;
  Log base;

  std::mutex mutex;
  std::vector<ScopeDefinition> scopes;
  std::shared_ptr<const EnrichedState> enriched;

  std::shared_ptr<const EnrichedState> enriched_snapshot() {
    std::lock_guard lock(mutex);
    return enriched;
  }
};

/// In-memory sessions with LRU eviction and an idle timeout.
class SessionStore {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  SessionStore(std::size_t capacity, std::chrono::seconds ttl, Clock clock = {});

  std::shared_ptr<Session> create(Log base);
  /// Null when unknown or expired. Refreshes the session's idle timer.
  std::shared_ptr<Session> find(const std::string& id);
  bool erase(const std::string& id);
  std::size_t size();

 private:
  struct Entry {
    std::shared_ptr<Session> session;
    std::chrono::steady_clock::time_point last_used;
    std::list<std::string>::iterator lru;
  };

  std::string fresh_id();
  void expire(std::chrono::steady_clock::time_point now);

  std::mutex mutex_;
  std::size_t capacity_;
  std::chrono::seconds ttl_;
  Clock clock_;
  std::mt19937_64 rng_;
  std::list<std::string> lru_;  // most recently used first
  std::unordered_map<std::string, Entry> entries_;
};

}  // namespace procscope::service
