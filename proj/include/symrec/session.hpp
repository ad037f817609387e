#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "symrec/recommender.hpp"

namespace symrec {

struct Session {
  std::string id;
  std::string dataset_id;
  ObservationSet observations;
  std::uint64_t revision = 0;

  friend bool operator==(const Session&, const Session&) = default;
};

// Pure transitions. Each bumps the revision only when the observations change.
Session session_observe(Session session, const Observation& obs, bool replace = false);
Session session_retract(Session session, std::string_view symptom);

// Append-only dataset registry shared by every session.
class DatasetStore {
 public:
  // Throws InvalidArgument when the id is taken.
  std::shared_ptr<const Dataset> add(Dataset dataset);
  std::shared_ptr<const Dataset> get(const std::string& id) const;
  std::vector<std::shared_ptr<const Dataset>> list() const;
  std::string next_id();

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::uint64_t counter_ = 0;
};

struct SessionSnapshot {
  Session session;
  Recommendation recommendation;
};

// In-memory sessions. Mutations of one session are serialized; recommending
// works on a copy taken under the session lock.
class SessionStore {
 public:
  explicit SessionStore(const DatasetStore& datasets, std::uint64_t budget = kDefaultBudget)
      : datasets_(datasets), budget_(budget) {}

  Session create(const std::string& dataset_id);
  Session get(const std::string& session_id) const;
  // With `strict`, a symptom outside the dataset's space throws UnknownSymptom.
  Session observe(const std::string& session_id, const Observation& obs, bool replace = false,
                  bool strict = false);
  Session retract(const std::string& session_id, std::string_view symptom);
  SessionSnapshot recommend(const std::string& session_id) const;

  std::vector<Session> snapshot() const;
  // Replaces every session; throws UnknownDataset for a dangling reference.
  void restore(const std::vector<Session>& sessions);

 private:
  struct Slot {
    mutable std::mutex mutex;
    Session session;
  };
  std::shared_ptr<Slot> slot(const std::string& session_id) const;

  const DatasetStore& datasets_;
  std::uint64_t budget_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

}  // namespace symrec
