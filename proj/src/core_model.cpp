#include "symrec/core_model.hpp"

#include <bit>
#include <cctype>
#include <unordered_set>

#include "symrec/errors.hpp"

namespace symrec {

namespace {

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void check_token(std::string_view text, const char* what) {
  if (text.empty()) throw InvalidArgument(std::string(what) + " must not be empty");
  if (is_blank(text.front()) || is_blank(text.back()))
    throw InvalidArgument(std::string(what) + " '" + std::string(text) +
                          "' has leading or trailing whitespace");
  for (char c : text) {
    if (c == ',') throw InvalidArgument(std::string(what) + " '" + std::string(text) + "' contains a comma");
    if (static_cast<unsigned char>(c) < 0x20)
      throw InvalidArgument(std::string(what) + " contains a control character");
  }
}

}  // namespace

void check_symptom_name(std::string_view name) { check_token(name, "symptom name"); }
void check_disorder_label(std::string_view label) { check_token(label, "disorder label"); }

SymptomSpace::SymptomSpace(std::vector<SymptomId> symptoms) : symptoms_(std::move(symptoms)) {
  index_.reserve(symptoms_.size());
  for (std::size_t i = 0; i < symptoms_.size(); ++i) {
    check_symptom_name(symptoms_[i]);
    if (!index_.emplace(symptoms_[i], i).second)
      throw InvalidArgument("duplicate symptom '" + symptoms_[i] + "' in symptom space");
  }
}

std::optional<std::size_t> SymptomSpace::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymptomSpace build_symptom_space(std::span<const std::vector<SymptomId>> profile_sources) {
  if (profile_sources.empty()) throw EmptyCatalog();
  std::vector<SymptomId> order;
  std::unordered_set<std::string> seen;
  for (const auto& source : profile_sources)
    for (const auto& name : source)
      if (seen.insert(name).second) order.push_back(name);
  return SymptomSpace(std::move(order));
}

Profile::Profile(std::size_t width, std::span<const Word> words)
    : width_(width), words_(words.begin(), words.end()) {
  if (words_.size() != words_for(width))
    throw InvalidArgument("profile word count does not match its width");
  if (width % kWordBits != 0 && !words_.empty() &&
      (words_.back() >> (width % kWordBits)) != 0)
    throw InvalidArgument("profile has bits set beyond its width");
}

Profile Profile::from_symptoms(const SymptomSpace& space, std::span<const SymptomId> present) {
  Profile p(space.size());
  for (const auto& name : present) {
    auto column = space.index_of(name);
    if (!column) throw UnknownSymptom(name);
    p.set(*column);
  }
  return p;
}

void Profile::set(std::size_t column, bool value) {
  if (column >= width_) throw InvalidArgument("profile column out of range");
  Word mask = Word{1} << (column % kWordBits);
  if (value)
    words_[column / kWordBits] |= mask;
  else
    words_[column / kWordBits] &= ~mask;
}

std::size_t Profile::count() const noexcept {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<SymptomId> Profile::symptoms(const SymptomSpace& space) const {
  std::vector<SymptomId> out;
  for (std::size_t c = 0; c < width_; ++c)
    if (test(c)) out.push_back(space[c]);
  return out;
}

const char* to_string(ObservationState state) {
  return state == ObservationState::present ? "present" : "absent";
}

std::optional<ObservationState> parse_observation_state(std::string_view text) {
  if (text == "present") return ObservationState::present;
  if (text == "absent") return ObservationState::absent;
  return std::nullopt;
}

ObservationSet::ObservationSet(std::span<const SymptomId> present,
                               std::span<const SymptomId> absent) {
  for (const auto& s : present) insert({s, ObservationState::present});
  for (const auto& s : absent) insert({s, ObservationState::absent});
}

void ObservationSet::insert(const Observation& obs) {
  check_symptom_name(obs.symptom);
  auto [it, inserted] = entries_.emplace(obs.symptom, obs.state);
  if (!inserted && it->second != obs.state) throw ContradictoryObservation(obs.symptom);
}

bool ObservationSet::replace(const Observation& obs) {
  check_symptom_name(obs.symptom);
  auto [it, inserted] = entries_.emplace(obs.symptom, obs.state);
  if (inserted || it->second == obs.state) return false;
  it->second = obs.state;
  return true;
}

bool ObservationSet::erase(std::string_view symptom) {
  auto it = entries_.find(symptom);
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

std::optional<ObservationState> ObservationSet::state_of(std::string_view symptom) const {
  auto it = entries_.find(symptom);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymptomId> ObservationSet::present() const {
  std::vector<SymptomId> out;
  for (const auto& [name, state] : entries_)
    if (state == ObservationState::present) out.push_back(name);
  return out;
}

std::vector<SymptomId> ObservationSet::absent() const {
  std::vector<SymptomId> out;
  for (const auto& [name, state] : entries_)
    if (state == ObservationState::absent) out.push_back(name);
  return out;
}

std::vector<Observation> ObservationSet::entries() const {
  std::vector<Observation> out;
  out.reserve(entries_.size());
  for (const auto& [name, state] : entries_) out.push_back({name, state});
  return out;
}

DisorderCatalog::DisorderCatalog(std::vector<DisorderLabel> labels) {
  for (auto& label : labels) {
    check_disorder_label(label);
    if (index_.count(label)) throw InvalidArgument("duplicate disorder label '" + label + "'");
    index_.emplace(label, labels_.size());
    labels_.push_back(std::move(label));
  }
}

std::size_t DisorderCatalog::intern(const DisorderLabel& label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  check_disorder_label(label);
  index_.emplace(label, labels_.size());
  labels_.push_back(label);
  return labels_.size() - 1;
}

std::optional<std::size_t> DisorderCatalog::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace symrec
