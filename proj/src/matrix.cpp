#include "symrec/matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "symrec/errors.hpp"

namespace symrec {

using Word = ProfileMatrix::Word;

ProfileMatrix::Builder::Builder(SymptomSpace space, DisorderCatalog catalog)
    : space_(std::move(space)),
      catalog_(std::move(catalog)),
      words_per_row_(Profile::words_for(space_.size())) {}

void ProfileMatrix::Builder::add_row(std::size_t label_index, std::span<const Word> words) {
  if (label_index >= catalog_.size()) throw InvalidArgument("row label index out of range");
  if (words.size() != words_per_row_) throw InvalidArgument("row width does not match the symptom space");
  bits_.insert(bits_.end(), words.begin(), words.end());
  labels_.push_back(static_cast<std::uint32_t>(label_index));
}

void ProfileMatrix::Builder::add_row(const DisorderLabel& label, std::span<const Word> words) {
  add_row(catalog_.intern(label), words);
}

void ProfileMatrix::Builder::add_row(const DisorderLabel& label, const Profile& profile) {
  if (profile.width() != space_.size()) throw InvalidArgument("profile width does not match the symptom space");
  add_row(label, profile.words());
}

ProfileMatrix ProfileMatrix::Builder::build() && {
  const std::size_t n = labels_.size();
  const std::size_t w = words_per_row_;

  // Stable counting sort by catalog index.
  std::vector<std::size_t> start(catalog_.size() + 1, 0);
  for (auto l : labels_) ++start[l + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[start[labels_[i]]++] = i;

  auto row_of = [&](std::size_t i) { return bits_.data() + i * w; };
  auto hash = [&](std::size_t i) {
    std::size_t h = std::hash<std::uint32_t>{}(labels_[i]);
    for (std::size_t k = 0; k < w; ++k) h = h * 1099511628211ULL ^ std::hash<Word>{}(row_of(i)[k]);
    return h;
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    return labels_[a] == labels_[b] && std::equal(row_of(a), row_of(a) + w, row_of(b));
  };
  std::unordered_set<std::size_t, decltype(hash), decltype(equal)> seen(n, hash, equal);

  ProfileMatrix m;
  m.space_ = std::move(space_);
  m.catalog_ = std::move(catalog_);
  m.words_per_row_ = w;
  m.bits_.reserve(bits_.size());
  m.labels_.reserve(n);
  for (std::size_t i : order) {
    if (!seen.insert(i).second) {
      ++m.duplicates_dropped_;
      continue;
    }
    m.bits_.insert(m.bits_.end(), row_of(i), row_of(i) + w);
    m.labels_.push_back(labels_[i]);
  }
  return m;
}

// ---------------------------------------------------------------------------

std::string Frequency::to_string() const {
  if (ones == 0) return "0";
  if (ones == total) return "1";
  std::uint64_t g = std::gcd(ones, total);
  return std::to_string(ones / g) + "/" + std::to_string(total / g);
}

std::string Frequency::to_decimal() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value());
  return buf;
}

const std::vector<DisorderPair>* PairMap::find(std::string_view symptom) const {
  for (const auto& e : entries)
    if (e.symptom == symptom) return &e.pairs;
  return nullptr;
}

std::vector<SymptomId> unknown_symptoms(const SymptomSpace& space, const ObservationSet& obs) {
  std::vector<SymptomId> out;
  for (const auto& o : obs.entries())
    if (!space.contains(o.symptom)) out.push_back(o.symptom);
  return out;
}

namespace {

ProfileMatrix filter_impl(const ProfileMatrix& matrix, const ObservationSet& obs,
                          const std::vector<bool>* allowed) {
  const auto& space = matrix.space();
  const std::size_t w = matrix.words_per_row();
  std::vector<Word> need_one(w, 0), need_zero(w, 0);
  std::vector<bool> dropped(space.size(), false);
  bool impossible = false;
  for (const auto& o : obs.entries()) {
    auto column = space.index_of(o.symptom);
    if (!column) {
      // An unknown present symptom is in no row; an unknown absent one is
      // trivially satisfied.
      if (o.state == ObservationState::present) impossible = true;
      continue;
    }
    dropped[*column] = true;
    auto& mask = o.state == ObservationState::present ? need_one : need_zero;
    mask[*column / Profile::kWordBits] |= Word{1} << (*column % Profile::kWordBits);
  }

  std::vector<SymptomId> kept_names;
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < space.size(); ++c) {
    if (dropped[c]) continue;
    kept.push_back(c);
    kept_names.push_back(space[c]);
  }
  const bool same_columns = kept.size() == space.size();

  ProfileMatrix::Builder out(SymptomSpace(std::move(kept_names)), matrix.catalog());
  if (impossible) return std::move(out).build();

  std::vector<Word> scratch(out.words_per_row());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    if (allowed && !(*allowed)[matrix.row_label(r)]) continue;
    auto row = matrix.row(r);
    bool keep = true;
    for (std::size_t k = 0; k < w && keep; ++k)
      keep = (row[k] & need_one[k]) == need_one[k] && (row[k] & need_zero[k]) == 0;
    if (!keep) continue;
    if (same_columns) {
      out.add_row(matrix.row_label(r), row);
      continue;
    }
    std::fill(scratch.begin(), scratch.end(), 0);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      std::size_t c = kept[j];
      if ((row[c / Profile::kWordBits] >> (c % Profile::kWordBits)) & 1U)
        scratch[j / Profile::kWordBits] |= Word{1} << (j % Profile::kWordBits);
    }
    out.add_row(matrix.row_label(r), scratch);
  }
  return std::move(out).build();
}

}  // namespace

ProfileMatrix filter(const ProfileMatrix& matrix, const ObservationSet& obs) {
  return filter_impl(matrix, obs, nullptr);
}

ProfileMatrix filter(const ProfileMatrix& matrix, const ObservationSet& obs,
                     const std::vector<bool>& allowed) {
  if (allowed.size() != matrix.catalog().size())
    throw InvalidArgument("allowed mask does not match the catalog");
  return filter_impl(matrix, obs, &allowed);
}

AggregateTable aggregate(const ProfileMatrix& matrix) {
  const std::size_t m = matrix.columns();
  const std::size_t w = matrix.words_per_row();
  const std::size_t l = matrix.catalog().size();
  std::vector<std::uint64_t> sizes(l, 0);
  std::vector<std::uint64_t> ones(l * m, 0);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::size_t g = matrix.row_label(r);
    ++sizes[g];
    auto row = matrix.row(r);
    std::uint64_t* acc = ones.data() + g * m;
    for (std::size_t k = 0; k < w; ++k) {
      Word bits = row[k];
      while (bits) {
        int b = std::countr_zero(bits);
        ++acc[k * Profile::kWordBits + static_cast<std::size_t>(b)];
        bits &= bits - 1;
      }
    }
  }

  AggregateTable table;
  table.space = matrix.space();
  for (std::size_t g = 0; g < l; ++g) {
    if (sizes[g] == 0) continue;
    table.labels.push_back(matrix.catalog()[g]);
    table.group_sizes.push_back(sizes[g]);
    for (std::size_t c = 0; c < m; ++c) table.frequencies.push_back({ones[g * m + c], sizes[g]});
  }
  return table;
}

InformativeSets informative_sets(const AggregateTable& table) {
  InformativeSets sets;
  for (std::size_t c = 0; c < table.space.size(); ++c) {
    bool any_one = false, any_zero = false;
    for (std::size_t g = 0; g < table.groups(); ++g) {
      any_one = any_one || table.at(g, c).is_one();
      any_zero = any_zero || table.at(g, c).is_zero();
    }
    if (any_one) sets.s1.push_back(table.space[c]);
    if (any_zero) sets.s0.push_back(table.space[c]);
    if (any_one && any_zero) sets.s_inter.push_back(table.space[c]);
  }
  return sets;
}

PairMap backtrack(const AggregateTable& table, const InformativeSets& sets) {
  PairMap map;
  for (const auto& symptom : sets.s_inter) {
    auto column = table.space.index_of(symptom);
    if (!column) throw InvalidArgument("informative symptom '" + symptom + "' is not in the table");
    PairEntry entry{symptom, {}};
    for (std::size_t i = 0; i < table.groups(); ++i) {
      if (!table.at(i, *column).is_one()) continue;
      for (std::size_t j = 0; j < table.groups(); ++j)
        if (table.at(j, *column).is_zero()) entry.pairs.emplace_back(table.labels[i], table.labels[j]);
    }
    map.entries.push_back(std::move(entry));
  }
  return map;
}

std::vector<MaxProfileRow> max_profiles(const ProfileMatrix& matrix) {
  const std::size_t w = matrix.words_per_row();
  std::vector<std::vector<Word>> acc(matrix.catalog().size(), std::vector<Word>(w, 0));
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    auto row = matrix.row(r);
    auto& a = acc[matrix.row_label(r)];
    for (std::size_t k = 0; k < w; ++k) a[k] |= row[k];
  }
  std::vector<MaxProfileRow> out;
  out.reserve(acc.size());
  for (std::size_t g = 0; g < acc.size(); ++g)
    out.push_back({matrix.catalog()[g], Profile(matrix.columns(), acc[g])});
  return out;
}

std::vector<DisorderLabel> mp_prefilter(std::span<const MaxProfileRow> mps, const SymptomSpace& space,
                                        std::span<const SymptomId> present) {
  std::vector<std::size_t> columns;
  for (const auto& s : present) {
    auto c = space.index_of(s);
    if (!c) return {};
    columns.push_back(*c);
  }
  std::vector<DisorderLabel> out;
  for (const auto& mp : mps) {
    bool all = std::all_of(columns.begin(), columns.end(), [&](std::size_t c) { return mp.bits.test(c); });
    if (all) out.push_back(mp.label);
  }
  return out;
}

}  // namespace symrec
