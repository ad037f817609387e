#include "symrec/generator.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "symrec/errors.hpp"

namespace symrec {

namespace {

using SetList = std::vector<SymptomSet>;

SymptomSet canonical_set(SymptomSet set, const char* where) {
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end())
    throw SpecValidation(std::string("duplicate symptom in a set of ") + where);
  for (const auto& s : set) {
    try {
      check_symptom_name(s);
    } catch (const InvalidArgument& e) {
      throw SpecValidation(e.what());
    }
  }
  return set;
}

void canonical_list(SetList& list, const char* where) {
  for (auto& s : list) {
    s = canonical_set(std::move(s), where);
    if (s.empty()) throw SpecValidation(std::string("empty set in ") + where);
  }
}

// Union of the sets; throws if any two overlap.
SymptomSet disjoint_union(const SetList& a, const SetList& b, const char* where) {
  SymptomSet all;
  for (const auto* list : {&a, &b})
    for (const auto& s : *list) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw SpecValidation(std::string("sets of ") + where + " must be pairwise disjoint");
  return all;
}

bool intersects(const SymptomSet& set, const std::set<SymptomId, std::less<>>& probe) {
  return std::any_of(set.begin(), set.end(), [&](const auto& s) { return probe.count(s) > 0; });
}

SymptomSet intersection(const SymptomSet& set, const std::set<SymptomId, std::less<>>& probe) {
  SymptomSet out;
  for (const auto& s : set)
    if (probe.count(s)) out.push_back(s);
  return out;
}

SymptomSet difference(const SymptomSet& set, const std::set<SymptomId, std::less<>>& probe) {
  SymptomSet out;
  for (const auto& s : set)
    if (!probe.count(s)) out.push_back(s);
  return out;
}

std::set<SymptomId, std::less<>> to_lookup(std::span<const SymptomId> names) {
  return {names.begin(), names.end()};
}

std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow();
  return r;
}

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow();
  return r;
}

std::uint64_t nonempty_subsets(std::size_t n) {
  if (n >= 64) throw CountOverflow();
  return (std::uint64_t{1} << n) - 1;
}

// Coefficient c = number of ways to touch exactly c of the sets.
std::vector<std::uint64_t> touch_polynomial(const SetList& sets) {
  std::vector<std::uint64_t> poly{1};
  for (const auto& s : sets) {
    std::uint64_t ways = nonempty_subsets(s.size());
    std::vector<std::uint64_t> next(poly.size() + 1, 0);
    for (std::size_t c = 0; c < poly.size(); ++c) {
      next[c] = add_checked(next[c], poly[c]);
      next[c + 1] = add_checked(next[c + 1], mul_checked(poly[c], ways));
    }
    poly = std::move(next);
  }
  return poly;
}

std::string render_set(const SymptomSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += set[i];
  }
  return out + "}";
}

std::string render_list(const SetList& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ",";
    out += render_set(list[i]);
  }
  return out;
}

}  // namespace

SymptomSet make_symptom_set(std::span<const SymptomId> names) {
  SymptomSet out(names.begin(), names.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::G0: return "G0";
    case GeneratorKind::G1: return "G1";
    case GeneratorKind::G2: return "G2";
    case GeneratorKind::G3: return "G3";
    case GeneratorKind::G4: return "G4";
  }
  return "?";
}

GeneratorSpec::GeneratorSpec(Body body) : body_(std::move(body)) {
  std::visit(
      [this](auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, IdentityGen>) {
          g.set = canonical_set(std::move(g.set), "G0");
          support_ = g.set;
        } else if constexpr (std::is_same_v<T, SubsetGen>) {
          g.set = canonical_set(std::move(g.set), "G1");
          if (g.k > g.set.size()) throw SpecValidation("k exceeds set size");
          support_ = g.set;
        } else if constexpr (std::is_same_v<T, MultiSetGen>) {
          canonical_list(g.sets, "G2");
          if (g.k > g.sets.size()) throw SpecValidation("k exceeds number of sets");
          support_ = disjoint_union(g.sets, {}, "G2");
        } else if constexpr (std::is_same_v<T, DisjointCombinationGen>) {
          if (g.list_a.empty() || g.list_b.empty()) throw SpecValidation("G3 lists must be non-empty");
          canonical_list(g.list_a, "G3");
          canonical_list(g.list_b, "G3");
          support_ = disjoint_union(g.list_a, g.list_b, "G3");
        } else {
          canonical_list(g.list_a, "G4");
          canonical_list(g.list_b, "G4");
          if (g.min_a > g.list_a.size()) throw SpecValidation("r exceeds size of first list");
          if (g.min_b > g.list_b.size()) throw SpecValidation("s exceeds size of second list");
          if (g.min_total > g.list_a.size() + g.list_b.size())
            throw SpecValidation("t exceeds combined list size");
          support_ = disjoint_union(g.list_a, g.list_b, "G4");
        }
      },
      body_);
}

GeneratorSpec GeneratorSpec::identity(std::vector<SymptomId> set) {
  return GeneratorSpec(IdentityGen{std::move(set)});
}
GeneratorSpec GeneratorSpec::subset(std::vector<SymptomId> set, std::size_t k) {
  return GeneratorSpec(SubsetGen{std::move(set), k});
}
GeneratorSpec GeneratorSpec::multi_set(std::vector<std::vector<SymptomId>> sets, std::size_t k) {
  return GeneratorSpec(MultiSetGen{std::move(sets), k});
}
GeneratorSpec GeneratorSpec::disjoint_combination(std::vector<std::vector<SymptomId>> list_a,
                                                  std::vector<std::vector<SymptomId>> list_b) {
  return GeneratorSpec(DisjointCombinationGen{std::move(list_a), std::move(list_b)});
}
GeneratorSpec GeneratorSpec::ex_multi_set(std::vector<std::vector<SymptomId>> list_a,
                                          std::vector<std::vector<SymptomId>> list_b,
                                          std::size_t min_a, std::size_t min_b,
                                          std::size_t min_total) {
  return GeneratorSpec(ExMultiSetGen{std::move(list_a), std::move(list_b), min_a, min_b, min_total});
}

DisorderSpec::DisorderSpec(DisorderLabel label, std::vector<GeneratorSpec> generators)
    : label_(std::move(label)), generators_(std::move(generators)) {
  try {
    check_disorder_label(label_);
  } catch (const InvalidArgument& e) {
    throw SpecValidation(e.what());
  }
  if (generators_.empty()) throw SpecValidation("disorder '" + label_ + "' has no generators");
  std::unordered_set<std::string> seen;
  for (const auto& g : generators_) {
    for (const auto& s : g.support()) {
      if (!seen.insert(s).second)
        throw SpecValidation("symptom '" + s + "' appears in more than one generator of '" + label_ + "'");
      support_.push_back(s);
    }
  }
}

bool DisorderSpec::in_support(std::string_view symptom) const {
  return std::find(support_.begin(), support_.end(), symptom) != support_.end();
}

// ---------------------------------------------------------------------------

std::uint64_t count(const GeneratorSpec& g) {
  return std::visit(
      [](const auto& gen) -> std::uint64_t {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, IdentityGen>) {
          return 1;
        } else if constexpr (std::is_same_v<T, SubsetGen>) {
          // Pascal row n, then the tail sum from k.
          std::size_t n = gen.set.size();
          std::vector<std::uint64_t> row{1};
          for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint64_t> next(row.size() + 1, 0);
            for (std::size_t j = 0; j < row.size(); ++j) {
              next[j] = add_checked(next[j], row[j]);
              next[j + 1] = add_checked(next[j + 1], row[j]);
            }
            row = std::move(next);
          }
          std::uint64_t total = 0;
          for (std::size_t i = gen.k; i <= n; ++i) total = add_checked(total, row[i]);
          return total;
        } else if constexpr (std::is_same_v<T, MultiSetGen>) {
          auto poly = touch_polynomial(gen.sets);
          std::uint64_t total = 0;
          for (std::size_t c = gen.k; c < poly.size(); ++c) total = add_checked(total, poly[c]);
          return total;
        } else if constexpr (std::is_same_v<T, DisjointCombinationGen>) {
          // All sets are pairwise disjoint, so each pair yields a distinct union.
          return mul_checked(gen.list_a.size(), gen.list_b.size());
        } else {
          auto pa = touch_polynomial(gen.list_a);
          auto pb = touch_polynomial(gen.list_b);
          std::uint64_t total = 0;
          for (std::size_t ca = gen.min_a; ca < pa.size(); ++ca)
            for (std::size_t cb = gen.min_b; cb < pb.size(); ++cb)
              if (ca + cb >= gen.min_total) total = add_checked(total, mul_checked(pa[ca], pb[cb]));
          return total;
        }
      },
      g.body());
}

std::uint64_t count_disorder(const DisorderSpec& d) {
  std::uint64_t total = 1;
  for (const auto& g : d.generators()) total = mul_checked(total, count(g));
  return total;
}

// ---------------------------------------------------------------------------

bool g3_exclusion_check(const DisorderSpec& d, std::span<const SymptomId> present) {
  auto probe = to_lookup(present);
  if (probe.empty()) return false;
  for (const auto& g : d.generators()) {
    if (g.kind() != GeneratorKind::G3) continue;
    const auto& gen = g.as<DisjointCombinationGen>();
    for (const auto* list : {&gen.list_a, &gen.list_b}) {
      auto hits = std::count_if(list->begin(), list->end(),
                                [&](const SymptomSet& alt) { return intersects(alt, probe); });
      if (hits >= 2) return true;
    }
  }
  return false;
}

DisorderSpec simplify_max(const DisorderSpec& d, std::span<const SymptomId> present) {
  auto probe = to_lookup(present);
  for (const auto& s : probe)
    if (!d.in_support(s)) throw PresentOutsideSupport(s);
  if (probe.empty()) return d;
  if (g3_exclusion_check(d, present))
    throw Unsupported("present symptoms exclude disorder '" + d.label() + "' through a G3 component");

  std::vector<GeneratorSpec> out;
  // Splits touched sets off a G2/G4 list: matched symptoms go to `matched`,
  // their leftovers to `free`, untouched sets stay.
  auto split = [&](const SetList& list, SymptomSet& matched, SymptomSet& free, SetList& untouched) {
    std::size_t satisfied = 0;
    for (const auto& s : list) {
      auto hit = intersection(s, probe);
      if (hit.empty()) {
        untouched.push_back(s);
        continue;
      }
      ++satisfied;
      matched.insert(matched.end(), hit.begin(), hit.end());
      auto rest = difference(s, probe);
      free.insert(free.end(), rest.begin(), rest.end());
    }
    return satisfied;
  };
  auto reduce = [](std::size_t min, std::size_t by) { return min > by ? min - by : 0; };

  for (const auto& g : d.generators()) {
    auto overlap = intersection(g.support(), probe);
    if (overlap.empty() || g.kind() == GeneratorKind::G0) {
      out.push_back(g);
      continue;
    }
    switch (g.kind()) {
      case GeneratorKind::G1: {
        const auto& gen = g.as<SubsetGen>();
        out.push_back(GeneratorSpec::identity(overlap));
        auto rest = difference(gen.set, probe);
        if (!rest.empty()) out.push_back(GeneratorSpec::subset(rest, reduce(gen.k, overlap.size())));
        break;
      }
      case GeneratorKind::G2: {
        const auto& gen = g.as<MultiSetGen>();
        SymptomSet matched, free;
        SetList untouched;
        std::size_t satisfied = split(gen.sets, matched, free, untouched);
        out.push_back(GeneratorSpec::identity(matched));
        if (!free.empty()) out.push_back(GeneratorSpec::subset(free, 0));
        if (!untouched.empty()) out.push_back(GeneratorSpec::multi_set(untouched, reduce(gen.k, satisfied)));
        break;
      }
      case GeneratorKind::G3: {
        // At most one alternative per list holds present symptoms, and it
        // must be the one chosen.
        auto gen = g.as<DisjointCombinationGen>();
        for (auto* list : {&gen.list_a, &gen.list_b}) {
          auto it = std::find_if(list->begin(), list->end(),
                                 [&](const SymptomSet& alt) { return intersects(alt, probe); });
          if (it != list->end()) *list = SetList{*it};
        }
        out.push_back(GeneratorSpec(std::move(gen)));
        break;
      }
      case GeneratorKind::G4: {
        const auto& gen = g.as<ExMultiSetGen>();
        SymptomSet matched, free;
        SetList rest_a, rest_b;
        std::size_t sat_a = split(gen.list_a, matched, free, rest_a);
        std::size_t sat_b = split(gen.list_b, matched, free, rest_b);
        out.push_back(GeneratorSpec::identity(matched));
        if (!free.empty()) out.push_back(GeneratorSpec::subset(free, 0));
        if (!rest_a.empty() || !rest_b.empty())
          out.push_back(GeneratorSpec::ex_multi_set(rest_a, rest_b, reduce(gen.min_a, sat_a),
                                                    reduce(gen.min_b, sat_b),
                                                    reduce(gen.min_total, sat_a + sat_b)));
        break;
      }
      case GeneratorKind::G0:
        break;
    }
  }
  return DisorderSpec(d.label(), std::move(out));
}

std::pair<DisorderSpec, DisorderSpec> simplify_min(const DisorderSpec& a, const DisorderSpec& b) {
  auto single_g1 = [](const DisorderSpec& d) -> const SubsetGen& {
    if (d.generators().size() != 1 || d.generators()[0].kind() != GeneratorKind::G1)
      throw Unsupported("simplify_min needs single-G1 disorders, '" + d.label() + "' is not one");
    return d.generators()[0].as<SubsetGen>();
  };
  const auto& ga = single_g1(a);
  const auto& gb = single_g1(b);

  SymptomSet overlap;
  std::set_intersection(ga.set.begin(), ga.set.end(), gb.set.begin(), gb.set.end(),
                        std::back_inserter(overlap));
  auto shrink = [&](const DisorderSpec& d, const SubsetGen& g) {
    std::vector<GeneratorSpec> out;
    if (!overlap.empty()) out.push_back(GeneratorSpec::identity(overlap));
    SymptomSet rest;
    std::set_difference(g.set.begin(), g.set.end(), overlap.begin(), overlap.end(),
                        std::back_inserter(rest));
    std::size_t k = g.k > overlap.size() ? g.k - overlap.size() : 0;
    if (k == 0) {
      out.push_back(GeneratorSpec::subset({}, 0));
    } else {
      rest.resize(k);
      out.push_back(GeneratorSpec::identity(rest));
    }
    return DisorderSpec(d.label(), std::move(out));
  };
  return {shrink(a, ga), shrink(b, gb)};
}

std::optional<DisorderSpec> apply_absent(const DisorderSpec& d, std::span<const SymptomId> absent) {
  auto probe = to_lookup(absent);
  if (probe.empty()) return d;

  auto prune = [&](const SetList& list) {
    SetList out;
    for (const auto& s : list) {
      auto rest = difference(s, probe);
      if (!rest.empty()) out.push_back(std::move(rest));
    }
    return out;
  };

  std::vector<GeneratorSpec> out;
  for (const auto& g : d.generators()) {
    if (!intersects(g.support(), probe)) {
      out.push_back(g);
      continue;
    }
    switch (g.kind()) {
      case GeneratorKind::G0:
        return std::nullopt;
      case GeneratorKind::G1: {
        const auto& gen = g.as<SubsetGen>();
        auto rest = difference(gen.set, probe);
        if (gen.k > rest.size()) return std::nullopt;
        out.push_back(GeneratorSpec::subset(rest, gen.k));
        break;
      }
      case GeneratorKind::G2: {
        const auto& gen = g.as<MultiSetGen>();
        auto sets = prune(gen.sets);
        if (gen.k > sets.size()) return std::nullopt;
        out.push_back(GeneratorSpec::multi_set(std::move(sets), gen.k));
        break;
      }
      case GeneratorKind::G3: {
        const auto& gen = g.as<DisjointCombinationGen>();
        auto keep = [&](const SetList& list) {
          SetList kept;
          for (const auto& alt : list)
            if (!intersects(alt, probe)) kept.push_back(alt);
          return kept;
        };
        auto la = keep(gen.list_a);
        auto lb = keep(gen.list_b);
        if (la.empty() || lb.empty()) return std::nullopt;
        out.push_back(GeneratorSpec::disjoint_combination(std::move(la), std::move(lb)));
        break;
      }
      case GeneratorKind::G4: {
        const auto& gen = g.as<ExMultiSetGen>();
        auto la = prune(gen.list_a);
        auto lb = prune(gen.list_b);
        if (gen.min_a > la.size() || gen.min_b > lb.size() || gen.min_total > la.size() + lb.size())
          return std::nullopt;
        out.push_back(GeneratorSpec::ex_multi_set(std::move(la), std::move(lb), gen.min_a,
                                                  gen.min_b, gen.min_total));
        break;
      }
    }
  }
  return DisorderSpec(d.label(), std::move(out));
}

// ---------------------------------------------------------------------------

std::string to_bracket(const GeneratorSpec& g) {
  return std::visit(
      [](const auto& gen) -> std::string {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, IdentityGen>) {
          return "[" + render_set(gen.set) + "]";
        } else if constexpr (std::is_same_v<T, SubsetGen>) {
          return "[" + render_set(gen.set) + ", " + std::to_string(gen.k) + "]";
        } else if constexpr (std::is_same_v<T, MultiSetGen>) {
          std::string sets = render_list(gen.sets);
          return "[" + sets + (sets.empty() ? "" : ", ") + std::to_string(gen.k) + "]";
        } else if constexpr (std::is_same_v<T, DisjointCombinationGen>) {
          return "[[" + render_list(gen.list_a) + "],[" + render_list(gen.list_b) + "]]";
        } else {
          std::ostringstream os;
          os << "[[" << render_list(gen.list_a) << "],[" << render_list(gen.list_b) << "], ("
             << gen.min_a << "," << gen.min_b << "," << gen.min_total << ")]";
          return os.str();
        }
      },
      g.body());
}

std::string to_bracket(const DisorderSpec& d) {
  std::string out;
  for (std::size_t i = 0; i < d.generators().size(); ++i) {
    if (i) out += ", ";
    out += to_bracket(d.generators()[i]);
  }
  return out;
}

}  // namespace symrec
