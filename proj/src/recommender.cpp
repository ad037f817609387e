#include "symrec/recommender.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "symrec/errors.hpp"

namespace symrec {

namespace {

// Profiles checked per disorder when a dataset carries both sources.
constexpr std::size_t kSpotChecks = 32;

Recommendation assemble(const ProfileMatrix& filtered, RecommendationPath path,
                        std::vector<std::string> warnings) {
  auto table = aggregate(filtered);
  Recommendation rec;
  rec.informative = informative_sets(table);
  rec.pairs = backtrack(table, rec.informative);
  rec.candidates = table.labels;
  std::unordered_set<std::string> alive(table.labels.begin(), table.labels.end());
  for (const auto& label : filtered.catalog().labels())
    if (!alive.count(label)) rec.excluded.push_back(label);
  rec.columns = table.space.symptoms();
  for (std::size_t g = 0; g < table.groups(); ++g) {
    auto row = table.row(g);
    rec.frequencies.emplace_back(row.begin(), row.end());
  }
  rec.group_sizes = table.group_sizes;
  rec.path = path;
  rec.diagnosis_complete = rec.candidates.size() == 1;
  rec.warnings = std::move(warnings);
  return rec;
}

std::vector<std::string> unknown_warnings(const SymptomSpace& space, const ObservationSet& obs) {
  std::vector<std::string> out;
  for (const auto& name : unknown_symptoms(space, obs)) {
    auto state = obs.state_of(name);
    out.push_back("unknown symptom '" + name + "' observed " + to_string(*state) +
                  (state == ObservationState::present ? "; no disorder can match"
                                                      : "; ignored"));
  }
  return out;
}

DisorderCatalog catalog_of(const std::vector<DisorderSpec>& specs) {
  if (specs.empty()) throw EmptyCatalog();
  std::vector<DisorderLabel> labels;
  for (const auto& s : specs) labels.push_back(s.label());
  try {
    return DisorderCatalog(std::move(labels));
  } catch (const InvalidArgument& e) {
    throw SpecValidation(e.what());
  }
}

void add_profile(ProfileMatrix::Builder& builder, std::size_t label, std::span<const std::size_t> indices,
                 const std::vector<std::size_t>& column_of, std::vector<Profile::Word>& scratch) {
  std::fill(scratch.begin(), scratch.end(), 0);
  for (std::size_t i : indices) {
    std::size_t c = column_of[i];
    if (c == SIZE_MAX) continue;
    scratch[c / Profile::kWordBits] |= Profile::Word{1} << (c % Profile::kWordBits);
  }
  builder.add_row(label, scratch);
}

std::vector<std::size_t> columns_for(const std::vector<SymptomId>& alphabet, const SymptomSpace& space) {
  std::vector<std::size_t> out;
  out.reserve(alphabet.size());
  for (const auto& name : alphabet) out.push_back(space.index_of(name).value_or(SIZE_MAX));
  return out;
}

}  // namespace

const char* to_string(RecommendationPath path) {
  return path == RecommendationPath::materialized ? "materialized" : "lazy-generated";
}

SymptomSpace spec_symptom_space(const std::vector<DisorderSpec>& specs) {
  std::vector<std::vector<SymptomId>> sources;
  sources.reserve(specs.size());
  for (const auto& s : specs) sources.push_back(s.support());
  return build_symptom_space(sources);
}

ProfileMatrix generate_matrix(const std::vector<DisorderSpec>& specs, std::uint64_t budget) {
  auto catalog = catalog_of(specs);
  auto space = spec_symptom_space(specs);
  std::uint64_t total = 0;
  for (const auto& s : specs) {
    auto n = count_disorder(s);
    if (n > budget || total > budget - n) throw Overbudget(s.label(), n > budget ? n : total + n, budget);
    total += n;
  }
  ProfileMatrix::Builder builder(space, catalog);
  std::vector<Profile::Word> scratch(builder.words_per_row());
  for (std::size_t d = 0; d < specs.size(); ++d) {
    DisorderCursor cursor(specs[d]);
    auto column_of = columns_for(cursor.alphabet(), space);
    while (cursor.next()) add_profile(builder, d, cursor.current(), column_of, scratch);
  }
  return std::move(builder).build();
}

// ---------------------------------------------------------------------------

Dataset Dataset::from_matrix(std::string id, ProfileMatrix matrix) {
  if (matrix.catalog().empty()) throw EmptyCatalog();
  Dataset ds;
  ds.id_ = std::move(id);
  ds.catalog_ = matrix.catalog();
  ds.space_ = matrix.space();
  ds.max_profiles_ = max_profiles(matrix);
  ds.matrix_ = std::move(matrix);
  return ds;
}

Dataset Dataset::from_specs(std::string id, std::vector<DisorderSpec> specs) {
  Dataset ds;
  ds.id_ = std::move(id);
  ds.catalog_ = catalog_of(specs);
  ds.space_ = spec_symptom_space(specs);
  ds.specs_ = std::move(specs);
  return ds;
}

Dataset Dataset::from_both(std::string id, ProfileMatrix matrix, std::vector<DisorderSpec> specs) {
  auto spec_catalog = catalog_of(specs);
  const auto& catalog = matrix.catalog();
  if (catalog.size() != spec_catalog.size())
    throw InvalidArgument("matrix and specs describe different disorder sets");

  std::vector<std::uint64_t> rows_per_label(catalog.size(), 0);
  for (std::size_t r = 0; r < matrix.rows(); ++r) ++rows_per_label[matrix.row_label(r)];
  std::unordered_set<std::string> rows;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::string key = matrix.row_label_name(r) + '\n';
    for (const auto& s : matrix.profile(r).symptoms(matrix.space())) key += s + ',';
    rows.insert(std::move(key));
  }

  for (const auto& spec : specs) {
    auto index = catalog.index_of(spec.label());
    if (!index) throw InvalidArgument("spec '" + spec.label() + "' has no rows in the matrix");
    for (const auto& s : spec.support())
      if (!matrix.space().contains(s))
        throw InvalidArgument("spec '" + spec.label() + "' uses symptom '" + s + "' missing from the matrix");
    if (count_disorder(spec) != rows_per_label[*index])
      throw InvalidArgument("spec '" + spec.label() + "' and matrix disagree on the profile count");
    DisorderCursor cursor(spec);
    for (std::size_t n = 0; n < kSpotChecks && cursor.next(); ++n) {
      std::vector<SymptomId> names;
      for (std::size_t i : cursor.current()) names.push_back(cursor.alphabet()[i]);
      auto profile = Profile::from_symptoms(matrix.space(), names);
      std::string key = spec.label() + '\n';
      for (const auto& s : profile.symptoms(matrix.space())) key += s + ',';
      if (!rows.count(key))
        throw InvalidArgument("spec '" + spec.label() + "' generates a profile missing from the matrix");
    }
  }

  auto ds = from_matrix(std::move(id), std::move(matrix));
  ds.specs_ = std::move(specs);
  return ds;
}

const ProfileMatrix& Dataset::matrix() const {
  if (!matrix_) throw InvalidArgument("dataset '" + id_ + "' has no materialized matrix");
  return *matrix_;
}

// ---------------------------------------------------------------------------

Recommendation recommend(const Dataset& dataset, const ObservationSet& obs) {
  const auto& matrix = dataset.matrix();
  auto warnings = unknown_warnings(matrix.space(), obs);

  // Max-profile prefilter: skip whole disorders that cannot hold Z+.
  std::vector<bool> allowed(matrix.catalog().size(), false);
  for (const auto& label : mp_prefilter(dataset.max_profile_rows(), matrix.space(), obs.present()))
    allowed[*matrix.catalog().index_of(label)] = true;

  return assemble(filter(matrix, obs, allowed), RecommendationPath::materialized, std::move(warnings));
}

Recommendation recommend_lazy(const Dataset& dataset, const ObservationSet& obs, std::uint64_t budget) {
  if (!dataset.has_specs()) throw InvalidArgument("dataset '" + dataset.id() + "' has no generator specs");
  const auto& space = dataset.space();
  auto warnings = unknown_warnings(space, obs);
  const auto present = obs.present();
  const auto absent = obs.absent();
  const bool impossible = std::any_of(present.begin(), present.end(),
                                      [&](const SymptomId& s) { return !space.contains(s); });

  std::vector<SymptomId> kept;
  for (const auto& s : space.symptoms())
    if (!obs.state_of(s)) kept.push_back(s);
  SymptomSpace out_space(std::move(kept));

  // Condition every spec first so the budget is checked before generating.
  std::vector<std::optional<DisorderSpec>> conditioned;
  std::uint64_t total = 0;
  for (const auto& spec : dataset.specs()) {
    auto& slot = conditioned.emplace_back();
    if (impossible) continue;
    if (!std::all_of(present.begin(), present.end(), [&](const SymptomId& s) { return spec.in_support(s); }))
      continue;
    if (g3_exclusion_check(spec, present)) continue;
    auto reduced = apply_absent(spec, absent);
    if (!reduced) continue;
    // Dropped G3 alternatives can take present symptoms with them.
    if (!std::all_of(present.begin(), present.end(), [&](const SymptomId& s) { return reduced->in_support(s); }))
      continue;
    slot = simplify_max(*reduced, present);
    auto n = count_disorder(*slot);
    if (n > budget || total > budget - n) throw Overbudget(spec.label(), n > budget ? n : total + n, budget);
    total += n;
  }

  ProfileMatrix::Builder builder(out_space, dataset.catalog());
  std::vector<Profile::Word> scratch(builder.words_per_row());
  for (std::size_t d = 0; d < conditioned.size(); ++d) {
    if (!conditioned[d]) continue;
    DisorderCursor cursor(*conditioned[d]);
    // Present symptoms map to no column: they are factored out.
    auto column_of = columns_for(cursor.alphabet(), out_space);
    while (cursor.next()) add_profile(builder, d, cursor.current(), column_of, scratch);
  }
  return assemble(std::move(builder).build(), RecommendationPath::lazy_generated, std::move(warnings));
}

Recommendation recommend_auto(const Dataset& dataset, const ObservationSet& obs, std::uint64_t budget) {
  if (dataset.has_matrix()) return recommend(dataset, obs);
  return recommend_lazy(dataset, obs, budget);
}

}  // namespace symrec
