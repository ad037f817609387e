#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace symrec {

using SymptomId = std::string;
using DisorderLabel = std::string;

// Throws InvalidArgument unless `name` is a usable symptom token: non-empty,
// no commas, no leading/trailing whitespace, no control characters.
void check_symptom_name(std::string_view name);
void check_disorder_label(std::string_view label);

// Ordered catalog of symptoms; the position of a symptom is its column.
class SymptomSpace {
 public:
  SymptomSpace() = default;
  explicit SymptomSpace(std::vector<SymptomId> symptoms);

  std::size_t size() const noexcept { return symptoms_.size(); }
  bool empty() const noexcept { return symptoms_.empty(); }
  const SymptomId& operator[](std::size_t column) const { return symptoms_[column]; }
  const std::vector<SymptomId>& symptoms() const noexcept { return symptoms_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const SymptomSpace& a, const SymptomSpace& b) {
    return a.symptoms_ == b.symptoms_;
  }

 private:
  std::vector<SymptomId> symptoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Union of all symptom names in first-seen order (sources in catalog order,
// then each source in its own column order).
SymptomSpace build_symptom_space(std::span<const std::vector<SymptomId>> profile_sources);

// Fixed-width bit row over a SymptomSpace.
class Profile {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  static constexpr std::size_t words_for(std::size_t width) noexcept {
    return (width + kWordBits - 1) / kWordBits;
  }

  Profile() = default;
  explicit Profile(std::size_t width) : width_(width), words_(words_for(width), 0) {}
  Profile(std::size_t width, std::span<const Word> words);

  // Sets the listed columns of a `space.size()`-wide row; unknown names throw.
  static Profile from_symptoms(const SymptomSpace& space, std::span<const SymptomId> present);

  std::size_t width() const noexcept { return width_; }
  std::span<const Word> words() const noexcept { return words_; }

  bool test(std::size_t column) const {
    return (words_[column / kWordBits] >> (column % kWordBits)) & 1U;
  }
  void set(std::size_t column, bool value = true);
  std::size_t count() const noexcept;

  // Names of the set columns in column order.
  std::vector<SymptomId> symptoms(const SymptomSpace& space) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<Word> words_;
};

enum class ObservationState { present, absent };

const char* to_string(ObservationState state);
std::optional<ObservationState> parse_observation_state(std::string_view text);

struct Observation {
  SymptomId symptom;
  ObservationState state = ObservationState::present;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Contradiction-free set of observations: a symptom is present or absent,
// never both. Changing a state requires `replace`.
class ObservationSet {
 public:
  ObservationSet() = default;
  ObservationSet(std::span<const SymptomId> present, std::span<const SymptomId> absent);

  // Idempotent for an identical entry; throws ContradictoryObservation when
  // the symptom is already recorded with the other state.
  void insert(const Observation& obs);
  // Returns true when an existing entry changed state.
  bool replace(const Observation& obs);
  // Returns true when the symptom was observed.
  bool erase(std::string_view symptom);

  std::optional<ObservationState> state_of(std::string_view symptom) const;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  // Both sorted by name.
  std::vector<SymptomId> present() const;
  std::vector<SymptomId> absent() const;
  std::vector<Observation> entries() const;

  friend bool operator==(const ObservationSet&, const ObservationSet&) = default;

 private:
  std::map<SymptomId, ObservationState, std::less<>> entries_;
};

// Ordered, duplicate-free list of disorders; its order is the output order.
class DisorderCatalog {
 public:
  DisorderCatalog() = default;
  explicit DisorderCatalog(std::vector<DisorderLabel> labels);

  // Appends when new; returns the label's index either way.
  std::size_t intern(const DisorderLabel& label);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const DisorderLabel& operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<DisorderLabel>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const DisorderCatalog& a, const DisorderCatalog& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<DisorderLabel> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace symrec
