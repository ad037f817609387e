#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symrec/core_model.hpp"

namespace symrec {

// Sorted, duplicate-free symptom names.
using SymptomSet = std::vector<SymptomId>;

SymptomSet make_symptom_set(std::span<const SymptomId> names);

enum class GeneratorKind { G0, G1, G2, G3, G4 };

const char* to_string(GeneratorKind kind);

// G0: the base set itself.
struct IdentityGen {
  SymptomSet set;
  friend bool operator==(const IdentityGen&, const IdentityGen&) = default;
};

// G1: every subset of `set` with at least `k` symptoms.
struct SubsetGen {
  SymptomSet set;
  std::size_t k = 0;
  friend bool operator==(const SubsetGen&, const SubsetGen&) = default;
};

// G2: every subset of the union touching at least `k` of the sets. A touched
// set counts once however many of its symptoms are taken.
struct MultiSetGen {
  std::vector<SymptomSet> sets;
  std::size_t k = 0;
  friend bool operator==(const MultiSetGen&, const MultiSetGen&) = default;
};

// G3: A ∪ B for every (A, B) in list_a × list_b.
struct DisjointCombinationGen {
  std::vector<SymptomSet> list_a;
  std::vector<SymptomSet> list_b;
  friend bool operator==(const DisjointCombinationGen&, const DisjointCombinationGen&) = default;
};

// G4: touch counts per list must reach min_a and min_b, and together min_total.
struct ExMultiSetGen {
  std::vector<SymptomSet> list_a;
  std::vector<SymptomSet> list_b;
  std::size_t min_a = 0;
  std::size_t min_b = 0;
  std::size_t min_total = 0;
  friend bool operator==(const ExMultiSetGen&, const ExMultiSetGen&) = default;
};

// One validated generator. Every set is stored sorted, so two specs describing
// the same rule compare equal. Construction throws SpecValidation when an
// invariant does not hold:
//  - G1: k <= |set|
//  - G2: k <= number of sets, sets non-empty and pairwise disjoint
//  - G3: both lists non-empty, sets non-empty and pairwise disjoint
//  - G4: min_a <= |list_a|, min_b <= |list_b|, min_total <= |list_a|+|list_b|,
//        sets non-empty and pairwise disjoint
class GeneratorSpec {
 public:
  using Body = std::variant<IdentityGen, SubsetGen, MultiSetGen, DisjointCombinationGen, ExMultiSetGen>;

  explicit GeneratorSpec(Body body);

  static GeneratorSpec identity(std::vector<SymptomId> set);
  static GeneratorSpec subset(std::vector<SymptomId> set, std::size_t k);
  static GeneratorSpec multi_set(std::vector<std::vector<SymptomId>> sets, std::size_t k);
  static GeneratorSpec disjoint_combination(std::vector<std::vector<SymptomId>> list_a,
                                            std::vector<std::vector<SymptomId>> list_b);
  static GeneratorSpec ex_multi_set(std::vector<std::vector<SymptomId>> list_a,
                                    std::vector<std::vector<SymptomId>> list_b,
                                    std::size_t min_a, std::size_t min_b, std::size_t min_total);

  GeneratorKind kind() const noexcept { return static_cast<GeneratorKind>(body_.index()); }
  const Body& body() const noexcept { return body_; }
  template <class T>
  const T& as() const {
    return std::get<T>(body_);
  }

  // Every symptom the generator can emit, sorted.
  const SymptomSet& support() const noexcept { return support_; }

  friend bool operator==(const GeneratorSpec& a, const GeneratorSpec& b) { return a.body_ == b.body_; }

 private:
  Body body_;
  SymptomSet support_;
};

// A disorder as a sequence of generators over pairwise-disjoint supports; its
// profiles are the unions of one emission per generator.
class DisorderSpec {
 public:
  DisorderSpec(DisorderLabel label, std::vector<GeneratorSpec> generators);

  const DisorderLabel& label() const noexcept { return label_; }
  const std::vector<GeneratorSpec>& generators() const noexcept { return generators_; }

  // Component supports concatenated in generator order; this is the
  // disorder's column order when building a symptom space.
  const std::vector<SymptomId>& support() const noexcept { return support_; }
  bool in_support(std::string_view symptom) const;

  friend bool operator==(const DisorderSpec& a, const DisorderSpec& b) {
    return a.label_ == b.label_ && a.generators_ == b.generators_;
  }

 private:
  DisorderLabel label_;
  std::vector<GeneratorSpec> generators_;
  std::vector<SymptomId> support_;
};

// ---------------------------------------------------------------------------
// Enumeration

// Pull-style stream over one generator's symptom sets. Sets come out ordered
// by cardinality, then lexicographically. `current()` indexes `alphabet()`
// (== spec.support()) in ascending order.
class GeneratorCursor {
 public:
  explicit GeneratorCursor(GeneratorSpec spec);

  bool next();
  void reset();
  std::span<const std::size_t> current() const noexcept { return current_; }
  const SymptomSet& alphabet() const noexcept { return spec_.support(); }
  SymptomSet current_set() const;

 private:
  bool feasible() const;
  bool walk();
  bool next_size();

  GeneratorSpec spec_;
  // For G2/G4: alphabet index -> owning set id; sets of list_b follow list_a.
  std::vector<std::size_t> owner_;
  std::size_t sets_a_ = 0;
  std::size_t sets_total_ = 0;

  std::size_t min_size_ = 0;
  std::size_t max_size_ = 0;
  std::size_t size_ = 0;
  bool started_ = false;
  bool size_started_ = false;
  bool done_ = false;
  std::vector<std::size_t> current_;

  // G3 unions, precomputed in emission order.
  std::vector<std::vector<std::size_t>> combos_;
  std::size_t combo_pos_ = 0;
};

// Cartesian product of the component cursors; the last component varies
// fastest. `current()` indexes `alphabet()` == spec.support().
class DisorderCursor {
 public:
  explicit DisorderCursor(const DisorderSpec& spec);

  bool next();
  void reset();
  std::span<const std::size_t> current() const noexcept { return current_; }
  const std::vector<SymptomId>& alphabet() const noexcept { return alphabet_; }
  SymptomSet current_set() const;

 private:
  void rebuild();

  std::vector<GeneratorCursor> parts_;
  std::vector<std::size_t> offsets_;
  std::vector<SymptomId> alphabet_;
  std::vector<std::size_t> current_;
  bool started_ = false;
  bool done_ = false;
};

GeneratorCursor enumerate(const GeneratorSpec& g);
DisorderCursor enumerate_disorder(const DisorderSpec& d);

// Materializing convenience wrappers; each set sorted.
std::vector<SymptomSet> enumerate_all(const GeneratorSpec& g);
std::vector<SymptomSet> enumerate_all(const DisorderSpec& d);

// ---------------------------------------------------------------------------
// Counting (closed form / DP, never enumerates). Throws CountOverflow beyond
// 64 bits.

std::uint64_t count(const GeneratorSpec& g);
std::uint64_t count_disorder(const DisorderSpec& d);

// ---------------------------------------------------------------------------
// Input-conditioned rewrites

// Restricts `d` to the profiles containing every symptom in `present`.
// Touched symptoms are factored out as G0 components and the remaining
// minimums drop accordingly. Throws PresentOutsideSupport when a present
// symptom is not in d's support, and Unsupported when a G3 component is
// excluded outright (see g3_exclusion_check).
DisorderSpec simplify_max(const DisorderSpec& d, std::span<const SymptomId> present);

// Maximizes the overlap of two single-G1 disorders, then shrinks each residual
// to its lexicographically smallest k'-subset. A zero residual becomes [{}, 0].
std::pair<DisorderSpec, DisorderSpec> simplify_min(const DisorderSpec& a, const DisorderSpec& b);

// True when some G3 list has two alternatives that both hold a present symptom;
// only one alternative per list can be chosen, so no profile covers `present`.
bool g3_exclusion_check(const DisorderSpec& d, std::span<const SymptomId> present);

// Restricts `d` to profiles avoiding every `absent` symptom; nullopt when no
// profile survives.
std::optional<DisorderSpec> apply_absent(const DisorderSpec& d, std::span<const SymptomId> absent);

// Bracket notation, e.g. "[{a, b, c, d}, 3]" or "[{c, d}], [{a}]".
std::string to_bracket(const GeneratorSpec& g);
std::string to_bracket(const DisorderSpec& d);

}  // namespace symrec
