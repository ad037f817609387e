#include <algorithm>

#include "symrec/errors.hpp"
#include "symrec/generator.hpp"

namespace symrec {

namespace {

std::size_t index_in(const SymptomSet& alphabet, const SymptomId& name) {
  return static_cast<std::size_t>(std::lower_bound(alphabet.begin(), alphabet.end(), name) -
                                  alphabet.begin());
}

// Order used for every emitted stream: cardinality first, then lexicographic
// over alphabet indices (== lexicographic over names, since the alphabet is
// sorted).
bool size_lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

GeneratorCursor::GeneratorCursor(GeneratorSpec spec) : spec_(std::move(spec)) {
  const auto& alphabet = spec_.support();
  const std::size_t n = alphabet.size();
  auto assign_owners = [&](const std::vector<SymptomSet>& list, std::size_t first_id) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (const auto& s : list[i]) owner_[index_in(alphabet, s)] = first_id + i;
  };

  switch (spec_.kind()) {
    case GeneratorKind::G0:
      min_size_ = max_size_ = n;
      break;
    case GeneratorKind::G1:
      min_size_ = spec_.as<SubsetGen>().k;
      max_size_ = n;
      break;
    case GeneratorKind::G2: {
      const auto& g = spec_.as<MultiSetGen>();
      owner_.assign(n, 0);
      assign_owners(g.sets, 0);
      sets_a_ = sets_total_ = g.sets.size();
      min_size_ = g.k;
      max_size_ = n;
      break;
    }
    case GeneratorKind::G3: {
      const auto& g = spec_.as<DisjointCombinationGen>();
      for (const auto& a : g.list_a) {
        for (const auto& b : g.list_b) {
          std::vector<std::size_t> combo;
          for (const auto& s : a) combo.push_back(index_in(alphabet, s));
          for (const auto& s : b) combo.push_back(index_in(alphabet, s));
          std::sort(combo.begin(), combo.end());
          combos_.push_back(std::move(combo));
        }
      }
      std::sort(combos_.begin(), combos_.end(), size_lex_less);
      combos_.erase(std::unique(combos_.begin(), combos_.end()), combos_.end());
      break;
    }
    case GeneratorKind::G4: {
      const auto& g = spec_.as<ExMultiSetGen>();
      owner_.assign(n, 0);
      assign_owners(g.list_a, 0);
      assign_owners(g.list_b, g.list_a.size());
      sets_a_ = g.list_a.size();
      sets_total_ = sets_a_ + g.list_b.size();
      // Every touch costs at least one symptom.
      min_size_ = std::max(g.min_a + g.min_b, g.min_total);
      max_size_ = n;
      break;
    }
  }
}

void GeneratorCursor::reset() {
  started_ = false;
  size_started_ = false;
  done_ = false;
  current_.clear();
  combo_pos_ = 0;
}

// Prefix test for the combination walk. With the prefix complete this is the
// exact membership predicate; otherwise it is an upper bound on reachable
// touches, so pruned prefixes can never lead to a member.
bool GeneratorCursor::feasible() const {
  const auto kind = spec_.kind();
  if (kind == GeneratorKind::G0 || kind == GeneratorKind::G1) return true;

  const std::size_t remaining = size_ - current_.size();
  const std::size_t last = current_.empty() ? 0 : current_.back() + 1;
  std::vector<char> touched(sets_total_, 0);
  for (std::size_t i : current_) touched[owner_[i]] = 1;
  std::vector<char> reachable(sets_total_, 0);
  for (std::size_t i = last; i < owner_.size(); ++i)
    if (!touched[owner_[i]]) reachable[owner_[i]] = 1;

  std::size_t touched_a = 0, touched_b = 0, avail_a = 0, avail_b = 0;
  for (std::size_t id = 0; id < sets_total_; ++id) {
    bool in_a = id < sets_a_;
    (in_a ? touched_a : touched_b) += touched[id];
    (in_a ? avail_a : avail_b) += reachable[id];
  }

  if (kind == GeneratorKind::G2) return touched_a + std::min(remaining, avail_a) >= spec_.as<MultiSetGen>().k;

  const auto& g = spec_.as<ExMultiSetGen>();
  std::size_t need_a = g.min_a > touched_a ? g.min_a - touched_a : 0;
  std::size_t need_b = g.min_b > touched_b ? g.min_b - touched_b : 0;
  if (need_a > avail_a || need_b > avail_b || need_a + need_b > remaining) return false;
  return touched_a + touched_b + std::min(remaining, avail_a + avail_b) >= g.min_total;
}

// Advances to the next feasible `size_`-combination in lexicographic order.
bool GeneratorCursor::walk() {
  const std::size_t n = spec_.support().size();
  if (size_ == 0) {
    if (size_started_) return false;
    size_started_ = true;
    current_.clear();
    return feasible();
  }
  std::size_t from = 0;
  if (!size_started_) {
    size_started_ = true;
    current_.clear();
  } else {
    if (current_.empty()) return false;
    from = current_.back() + 1;
    current_.pop_back();
  }
  while (true) {
    if (current_.size() == size_) return true;
    const std::size_t missing = size_ - current_.size();
    bool pushed = false;
    for (std::size_t j = from; j + missing <= n; ++j) {
      current_.push_back(j);
      if (feasible()) {
        pushed = true;
        from = j + 1;
        break;
      }
      current_.pop_back();
    }
    if (pushed) continue;
    if (current_.empty()) return false;
    from = current_.back() + 1;
    current_.pop_back();
  }
}

bool GeneratorCursor::next_size() {
  if (!started_) {
    started_ = true;
    size_ = min_size_;
  } else {
    ++size_;
  }
  size_started_ = false;
  current_.clear();
  return size_ <= max_size_;
}

bool GeneratorCursor::next() {
  if (done_) return false;
  if (spec_.kind() == GeneratorKind::G3) {
    if (combo_pos_ >= combos_.size()) {
      done_ = true;
      return false;
    }
    current_ = combos_[combo_pos_++];
    return true;
  }
  if (!started_ && !next_size()) {
    done_ = true;
    return false;
  }
  while (true) {
    if (walk()) return true;
    // Sizes are always finished with an empty prefix, so the walk restarts
    // cleanly on the next size.
    current_.clear();
    if (!next_size()) {
      done_ = true;
      current_.clear();
      return false;
    }
  }
}

SymptomSet GeneratorCursor::current_set() const {
  SymptomSet out;
  out.reserve(current_.size());
  for (std::size_t i : current_) out.push_back(alphabet()[i]);
  return out;
}

// ---------------------------------------------------------------------------

DisorderCursor::DisorderCursor(const DisorderSpec& spec) : alphabet_(spec.support()) {
  std::size_t offset = 0;
  for (const auto& g : spec.generators()) {
    parts_.emplace_back(g);
    offsets_.push_back(offset);
    offset += g.support().size();
  }
}

void DisorderCursor::reset() {
  for (auto& p : parts_) p.reset();
  started_ = false;
  done_ = false;
  current_.clear();
}

void DisorderCursor::rebuild() {
  current_.clear();
  for (std::size_t p = 0; p < parts_.size(); ++p)
    for (std::size_t i : parts_[p].current()) current_.push_back(offsets_[p] + i);
}

bool DisorderCursor::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    for (auto& p : parts_) {
      if (!p.next()) {
        done_ = true;
        return false;
      }
    }
    rebuild();
    return true;
  }
  std::size_t i = parts_.size();
  while (i > 0) {
    --i;
    if (parts_[i].next()) {
      rebuild();
      return true;
    }
    parts_[i].reset();
    parts_[i].next();
  }
  done_ = true;
  current_.clear();
  return false;
}

SymptomSet DisorderCursor::current_set() const {
  SymptomSet out;
  out.reserve(current_.size());
  for (std::size_t i : current_) out.push_back(alphabet_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

GeneratorCursor enumerate(const GeneratorSpec& g) { return GeneratorCursor(g); }
DisorderCursor enumerate_disorder(const DisorderSpec& d) { return DisorderCursor(d); }

std::vector<SymptomSet> enumerate_all(const GeneratorSpec& g) {
  std::vector<SymptomSet> out;
  GeneratorCursor cursor(g);
  while (cursor.next()) out.push_back(cursor.current_set());
  return out;
}

std::vector<SymptomSet> enumerate_all(const DisorderSpec& d) {
  std::vector<SymptomSet> out;
  DisorderCursor cursor(d);
  while (cursor.next()) out.push_back(cursor.current_set());
  return out;
}

}  // namespace symrec
