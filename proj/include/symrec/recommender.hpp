#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symrec/core_model.hpp"
#include "symrec/generator.hpp"
#include "symrec/matrix.hpp"

namespace symrec {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

// Disorder data: an explicit matrix, generator specs, or both. Immutable.
class Dataset {
 public:
  static Dataset from_matrix(std::string id, ProfileMatrix matrix);
  static Dataset from_specs(std::string id, std::vector<DisorderSpec> specs);
  // Both sources must name the same disorders; each disorder's row count and
  // a sample of its enumerated profiles are checked against the matrix.
  static Dataset from_both(std::string id, ProfileMatrix matrix, std::vector<DisorderSpec> specs);

  const std::string& id() const noexcept { return id_; }
  const DisorderCatalog& catalog() const noexcept { return catalog_; }
  const SymptomSpace& space() const noexcept { return space_; }
  bool has_matrix() const noexcept { return matrix_.has_value(); }
  bool has_specs() const noexcept { return !specs_.empty(); }
  const ProfileMatrix& matrix() const;
  const std::vector<DisorderSpec>& specs() const noexcept { return specs_; }
  const std::vector<MaxProfileRow>& max_profile_rows() const noexcept { return max_profiles_; }

 private:
  Dataset() = default;

  std::string id_;
  DisorderCatalog catalog_;
  SymptomSpace space_;
  std::optional<ProfileMatrix> matrix_;
  std::vector<DisorderSpec> specs_;
  std::vector<MaxProfileRow> max_profiles_;
};

// Symptom space for generator specs: supports in spec order.
SymptomSpace spec_symptom_space(const std::vector<DisorderSpec>& specs);

// Eagerly enumerates every profile of every spec. Throws Overbudget when the
// total exceeds `budget`.
ProfileMatrix generate_matrix(const std::vector<DisorderSpec>& specs, std::uint64_t budget = kDefaultBudget);

enum class RecommendationPath { materialized, lazy_generated };

const char* to_string(RecommendationPath path);

struct Recommendation {
  std::vector<DisorderLabel> candidates;
  std::vector<DisorderLabel> excluded;
  // Remaining columns after the observed symptoms were dropped.
  std::vector<SymptomId> columns;
  // One row per candidate, aligned with `columns`.
  std::vector<std::vector<Frequency>> frequencies;
  InformativeSets informative;
  PairMap pairs;
  std::vector<std::uint64_t> group_sizes;
  RecommendationPath path = RecommendationPath::materialized;
  bool diagnosis_complete = false;
  std::vector<std::string> warnings;

  bool no_candidates() const noexcept { return candidates.empty(); }

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

// Filter, aggregate, informative sets and pair backtracking over the
// dataset's matrix. Requires a matrix.
Recommendation recommend(const Dataset& dataset, const ObservationSet& obs);

// Same result, but profiles are generated from the specs after conditioning
// them on the observations. Throws Overbudget before generating anything when
// the conditioned profile total exceeds `budget`.
Recommendation recommend_lazy(const Dataset& dataset, const ObservationSet& obs,
                              std::uint64_t budget = kDefaultBudget);

// Materialized path when the dataset has a matrix, lazy otherwise.
Recommendation recommend_auto(const Dataset& dataset, const ObservationSet& obs,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace symrec
