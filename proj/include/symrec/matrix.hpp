#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symrec/core_model.hpp"

namespace symrec {

// Binary "all profiles" matrix: one row per (disorder, profile). Rows are
// kept grouped by catalog order (stable within a disorder) and duplicate
// (label, profile) rows are dropped on construction. Bits live in one
// contiguous word buffer, `words_per_row()` words per row.
class ProfileMatrix {
 public:
  using Word = Profile::Word;

  class Builder {
   public:
    Builder(SymptomSpace space, DisorderCatalog catalog = {});

    const SymptomSpace& space() const noexcept { return space_; }
    std::size_t words_per_row() const noexcept { return words_per_row_; }

    // Label is interned into the catalog when new.
    void add_row(const DisorderLabel& label, std::span<const Word> words);
    void add_row(std::size_t label_index, std::span<const Word> words);
    void add_row(const DisorderLabel& label, const Profile& profile);

    // Groups rows by catalog order and drops duplicates; see
    // ProfileMatrix::duplicates_dropped().
    ProfileMatrix build() &&;

   private:
    SymptomSpace space_;
    DisorderCatalog catalog_;
    std::size_t words_per_row_;
    std::vector<Word> bits_;
    std::vector<std::uint32_t> labels_;
  };

  ProfileMatrix() = default;

  const SymptomSpace& space() const noexcept { return space_; }
  const DisorderCatalog& catalog() const noexcept { return catalog_; }
  std::size_t rows() const noexcept { return labels_.size(); }
  std::size_t columns() const noexcept { return space_.size(); }
  std::size_t words_per_row() const noexcept { return words_per_row_; }
  std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

  std::span<const Word> row(std::size_t i) const {
    return {bits_.data() + i * words_per_row_, words_per_row_};
  }
  std::size_t row_label(std::size_t i) const { return labels_[i]; }
  const DisorderLabel& row_label_name(std::size_t i) const { return catalog_[labels_[i]]; }
  bool test(std::size_t row, std::size_t column) const {
    return (bits_[row * words_per_row_ + column / Profile::kWordBits] >> (column % Profile::kWordBits)) & 1U;
  }
  Profile profile(std::size_t i) const { return Profile(columns(), row(i)); }

  // Equality ignores duplicates_dropped().
  friend bool operator==(const ProfileMatrix& a, const ProfileMatrix& b) {
    return a.space_ == b.space_ && a.catalog_ == b.catalog_ && a.labels_ == b.labels_ && a.bits_ == b.bits_;
  }

 private:
  SymptomSpace space_;
  DisorderCatalog catalog_;
  std::size_t words_per_row_ = 0;
  std::vector<Word> bits_;
  std::vector<std::uint32_t> labels_;
  std::size_t duplicates_dropped_ = 0;
};

// Exact relative frequency ones/total of a column within a disorder group.
struct Frequency {
  std::uint64_t ones = 0;
  std::uint64_t total = 1;

  bool is_one() const noexcept { return ones == total; }
  bool is_zero() const noexcept { return ones == 0; }
  double value() const noexcept { return static_cast<double>(ones) / static_cast<double>(total); }
  // Reduced fraction: "1", "0", "2/3".
  std::string to_string() const;
  // Rounded to three decimals, e.g. "0.667".
  std::string to_decimal() const;

  friend bool operator==(const Frequency& a, const Frequency& b) {
    return static_cast<unsigned __int128>(a.ones) * b.total ==
           static_cast<unsigned __int128>(b.ones) * a.total;
  }
};

// Per-disorder column means of a (filtered) matrix. Only disorders with at
// least one row appear, in catalog order.
struct AggregateTable {
  SymptomSpace space;
  std::vector<DisorderLabel> labels;
  std::vector<std::uint64_t> group_sizes;
  // labels.size() x space.size(), row-major.
  std::vector<Frequency> frequencies;

  std::size_t groups() const noexcept { return labels.size(); }
  const Frequency& at(std::size_t group, std::size_t column) const {
    return frequencies[group * space.size() + column];
  }
  std::span<const Frequency> row(std::size_t group) const {
    return {frequencies.data() + group * space.size(), space.size()};
  }
};

// Symptom names in space column order.
struct InformativeSets {
  std::vector<SymptomId> s1;
  std::vector<SymptomId> s0;
  std::vector<SymptomId> s_inter;

  friend bool operator==(const InformativeSets&, const InformativeSets&) = default;
};

// (always-present disorder, never-present disorder)
using DisorderPair = std::pair<DisorderLabel, DisorderLabel>;

struct PairEntry {
  SymptomId symptom;
  std::vector<DisorderPair> pairs;
  friend bool operator==(const PairEntry&, const PairEntry&) = default;
};

// Entries in space column order; pairs in table order (first, then second).
struct PairMap {
  std::vector<PairEntry> entries;

  const std::vector<DisorderPair>* find(std::string_view symptom) const;
  bool empty() const noexcept { return entries.empty(); }
  friend bool operator==(const PairMap&, const PairMap&) = default;
};

struct MaxProfileRow {
  DisorderLabel label;
  Profile bits;
  friend bool operator==(const MaxProfileRow&, const MaxProfileRow&) = default;
};

// Observed symptoms missing from the space. A present one empties the result.
std::vector<SymptomId> unknown_symptoms(const SymptomSpace& space, const ObservationSet& obs);

// Keeps rows with every present symptom set and every absent symptom clear,
// then drops the observed columns. The catalog is kept whole.
ProfileMatrix filter(const ProfileMatrix& matrix, const ObservationSet& obs);

// Same, but skips rows whose catalog index is not flagged in `allowed`
// (e.g. a max-profile prefilter result).
ProfileMatrix filter(const ProfileMatrix& matrix, const ObservationSet& obs,
                     const std::vector<bool>& allowed);

AggregateTable aggregate(const ProfileMatrix& matrix);

InformativeSets informative_sets(const AggregateTable& table);

PairMap backtrack(const AggregateTable& table, const InformativeSets& sets);

// One row per catalog disorder: the bitwise OR of its profiles.
std::vector<MaxProfileRow> max_profiles(const ProfileMatrix& matrix);

// Labels whose max profile holds every present symptom, in `mps` order.
std::vector<DisorderLabel> mp_prefilter(std::span<const MaxProfileRow> mps, const SymptomSpace& space,
                                        std::span<const SymptomId> present);

}  // namespace symrec
