#include "symrec/session.hpp"

#include <cstdio>
#include <random>

#include "symrec/errors.hpp"

namespace symrec {

namespace {

std::string random_token() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

Session session_observe(Session session, const Observation& obs, bool replace) {
  auto before = session.observations.state_of(obs.symptom);
  if (replace)
    session.observations.replace(obs);
  else
    session.observations.insert(obs);
  if (before != obs.state) ++session.revision;
  return session;
}

Session session_retract(Session session, std::string_view symptom) {
  if (session.observations.erase(symptom)) ++session.revision;
  return session;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Dataset> DatasetStore::add(Dataset dataset) {
  std::unique_lock lock(mutex_);
  auto id = dataset.id();
  if (datasets_.count(id)) throw InvalidArgument("dataset id '" + id + "' is already registered");
  auto ptr = std::make_shared<const Dataset>(std::move(dataset));
  datasets_.emplace(id, ptr);
  return ptr;
}

std::shared_ptr<const Dataset> DatasetStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = datasets_.find(id);
  if (it == datasets_.end()) throw UnknownDataset(id);
  return it->second;
}

std::vector<std::shared_ptr<const Dataset>> DatasetStore::list() const {
  std::shared_lock lock(mutex_);
  std::vector<std::shared_ptr<const Dataset>> out;
  for (const auto& [id, ds] : datasets_) out.push_back(ds);
  return out;
}

std::string DatasetStore::next_id() {
  std::unique_lock lock(mutex_);
  std::string id;
  do {
    id = "ds-" + std::to_string(++counter_);
  } while (datasets_.count(id));
  return id;
}

// ---------------------------------------------------------------------------

std::shared_ptr<SessionStore::Slot> SessionStore::slot(const std::string& session_id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw UnknownSession(session_id);
  return it->second;
}

Session SessionStore::create(const std::string& dataset_id) {
  datasets_.get(dataset_id);
  auto s = std::make_shared<Slot>();
  s->session.dataset_id = dataset_id;
  std::unique_lock lock(mutex_);
  do {
    s->session.id = "s-" + random_token();
  } while (sessions_.count(s->session.id));
  sessions_.emplace(s->session.id, s);
  return s->session;
}

Session SessionStore::get(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->session;
}

Session SessionStore::observe(const std::string& session_id, const Observation& obs, bool replace,
                              bool strict) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  if (strict && !datasets_.get(s->session.dataset_id)->space().contains(obs.symptom))
    throw UnknownSymptom(obs.symptom);
  s->session = session_observe(s->session, obs, replace);
  return s->session;
}

Session SessionStore::retract(const std::string& session_id, std::string_view symptom) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  s->session = session_retract(s->session, symptom);
  return s->session;
}

SessionSnapshot SessionStore::recommend(const std::string& session_id) const {
  Session copy = get(session_id);
  auto dataset = datasets_.get(copy.dataset_id);
  auto rec = recommend_auto(*dataset, copy.observations, budget_);
  return {std::move(copy), std::move(rec)};
}

std::vector<Session> SessionStore::snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<Session> out;
  for (const auto& [id, s] : sessions_) {
    std::lock_guard slot_lock(s->mutex);
    out.push_back(s->session);
  }
  return out;
}

void SessionStore::restore(const std::vector<Session>& sessions) {
  std::map<std::string, std::shared_ptr<Slot>> fresh;
  for (const auto& session : sessions) {
    datasets_.get(session.dataset_id);
    auto s = std::make_shared<Slot>();
    s->session = session;
    fresh.emplace(session.id, s);
  }
  std::unique_lock lock(mutex_);
  sessions_ = std::move(fresh);
}

}  // namespace symrec
