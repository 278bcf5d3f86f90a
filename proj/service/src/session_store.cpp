#include "procscope/service/session_store.hpp"

#include <cstdio>

namespace procscope::service {

SessionStore::SessionStore(std::size_t capacity, std::chrono::seconds ttl, Clock clock)
    : capacity_(capacity == 0 ? 1 : capacity),
      ttl_(ttl),
      clock_(clock ? std::move(clock) : Clock(&std::chrono::steady_clock::now)),
      rng_(std::random_device{}()) {}

std::string SessionStore::fresh_id() {
  for (;;) {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    if (entries_.count(buf) == 0) return buf;
  }
}

void SessionStore::expire(std::chrono::steady_clock::time_point now) {
  while (!lru_.empty()) {
    auto it = entries_.find(lru_.back());
    if (now - it->second.last_used < ttl_) break;
    entries_.erase(it);
    lru_.pop_back();
  }
}

std::shared_ptr<Session> SessionStore::create(Log base) {
  std::lock_guard lock(mutex_);
  const auto now = clock_();
  expire(now);
  while (entries_.size() >= capacity_) {
    entries_.erase(lru_.back());
    lru_.pop_back();
  }
  auto session = std::make_shared<Session>();
  session->id = fresh_id();
  session->base = std::move(base);
  lru_.push_front(session->id);
  entries_.emplace(session->id, Entry{session, now, lru_.begin()});
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto now = clock_();
  expire(now);
  auto it = entries_.find(id);
  if (it == entries_.end()) return nullptr;
  it->second.last_used = now;
  lru_.splice(lru_.begin(), lru_, it->second.lru);
  return it->second.session;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return false;
  lru_.erase(it->second.lru);
  entries_.erase(it);
  return true;
}

std::size_t SessionStore::size() {
  std::lock_guard lock(mutex_);
  expire(clock_());
  return entries_.size();
}

}  // namespace procscope::service
