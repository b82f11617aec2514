#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace psc {

using AgentId = int;
/// Position of an alternative inside its Universe.
using AltIndex = int;

/// Ordered, finite set of named alternatives. Alternatives are addressed by
/// their position; names are only used at the text boundary.
class Universe {
 public:
  static constexpr std::size_t kMaxAlternatives = 64;

  explicit Universe(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(AltIndex i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<AltIndex> find(std::string_view name) const;
  /// Throws std::invalid_argument for an unknown name.
  AltIndex index_of(std::string_view name) const;

  friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AltIndex> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<std::string> names);
/// Splits "a,b,c" (whitespace tolerant).
UniversePtr parse_universe(std::string_view comma_list);
bool same_universe(const UniversePtr& a, const UniversePtr& b);

/// Subset of a universe as a bitmask over alternative positions.
class AlternativeSet {
 public:
  constexpr AlternativeSet() = default;
  constexpr explicit AlternativeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr AlternativeSet singleton(AltIndex i) { return AlternativeSet(std::uint64_t{1} << i); }
  static constexpr AlternativeSet full(std::size_t m) {
    return AlternativeSet(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(AltIndex i) const { return (bits_ >> i) & 1U; }
  constexpr void insert(AltIndex i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(AltIndex i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr bool subset_of(AlternativeSet other) const { return (bits_ & ~other.bits_) == 0; }
  /// Lowest member; the set must be nonempty.
  constexpr AltIndex first() const { return std::countr_zero(bits_); }

  std::vector<AltIndex> members() const;

  friend constexpr AlternativeSet operator&(AlternativeSet a, AlternativeSet b) { return AlternativeSet(a.bits_ & b.bits_); }
  friend constexpr AlternativeSet operator|(AlternativeSet a, AlternativeSet b) { return AlternativeSet(a.bits_ | b.bits_); }
  friend constexpr AlternativeSet operator-(AlternativeSet a, AlternativeSet b) { return AlternativeSet(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(AlternativeSet, AlternativeSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// "{a, c}" style rendering, members in universe order.
std::string format_set(const Universe& universe, AlternativeSet set);
AlternativeSet parse_set(const Universe& universe, std::string_view comma_list);

/// Error raised by the text parsers; `position` is a byte offset into the
/// offending text (or a line number for multi-line inputs).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Complete, transitive weak order stored as an ordered partition of the
/// universe into indifference classes, best class first.
class PreferenceRelation {
 public:
  /// Validates that `classes` is an ordered partition of the universe.
  PreferenceRelation(UniversePtr universe, std::vector<AlternativeSet> classes);

  static PreferenceRelation total_indifference(UniversePtr universe);

  const UniversePtr& universe() const { return universe_; }
  std::span<const AlternativeSet> classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  /// Index of the indifference class containing `x` (0 = best).
  int rank(AltIndex x) const { return rank_[static_cast<std::size_t>(x)]; }

  bool weakly_prefers(AltIndex x, AltIndex y) const { return rank(x) <= rank(y); }
  bool strictly_prefers(AltIndex x, AltIndex y) const { return rank(x) < rank(y); }
  bool indifferent(AltIndex x, AltIndex y) const { return rank(x) == rank(y); }

  /// Alternatives at least as good as `x`.
  AlternativeSet upper_contour(AltIndex x) const;

  friend bool operator==(const PreferenceRelation& a, const PreferenceRelation& b) {
    return a.classes_ == b.classes_ && same_universe(a.universe_, b.universe_);
  }
  /// Strict weak ordering for use as a container key (same universe assumed).
  friend bool operator<(const PreferenceRelation& a, const PreferenceRelation& b) {
    return a.classes_ < b.classes_;
  }

 private:
  UniversePtr universe_;
  std::vector<AlternativeSet> classes_;
  std::vector<int> rank_;
};

/// Grammar: classes separated by '>', ties within a class by '~'; every
/// universe member exactly once.
PreferenceRelation parse_relation(std::string_view text, const UniversePtr& universe);
/// Canonical text: members of each class in universe order, " > " and "~".
std::string format_relation(const PreferenceRelation& rel);

/// All x in X with x weakly preferred to every member of X.
AlternativeSet max_set(const PreferenceRelation& rel, AlternativeSet subset);
std::optional<AltIndex> unique_top(const PreferenceRelation& rel);
bool is_strict(const PreferenceRelation& rel);

/// Every weak order on the universe exactly once. The order is lexicographic
/// over the sequence of classes, each class compared as its sorted list of
/// universe positions: for {a,b} this gives "a > b", "a~b", "b > a".
std::vector<PreferenceRelation> enumerate_weak_orders(const UniversePtr& universe);

class Profile {
 public:
  struct Entry {
    AgentId agent;
    PreferenceRelation relation;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Agent ids must be positive and distinct; relations must share one universe.
  Profile(UniversePtr universe, std::vector<Entry> entries);

  const UniversePtr& universe() const { return universe_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::vector<AgentId> agents() const;
  bool has_agent(AgentId agent) const;
  const PreferenceRelation& relation_of(AgentId agent) const;

  /// R_{-i}.
  Profile without(AgentId agent) const;
  /// Same profile with `agent`'s relation replaced.
  Profile with_relation(AgentId agent, PreferenceRelation relation) const;

  friend bool operator==(const Profile& a, const Profile& b) {
    return same_universe(a.universe_, b.universe_) && a.entries_ == b.entries_;
  }

 private:
  UniversePtr universe_;
  std::vector<Entry> entries_;
};

/// Profile text: one `agent <id>: <relation>` line per agent, `#` comments,
/// blank lines ignored. An optional `alternatives: a, b, c` line fixes the
/// universe order; otherwise it is the sorted set of tokens used.
Profile parse_profile(std::string_view text);
/// Parses against a known universe (every relation must use exactly it).
Profile parse_profile(std::string_view text, const UniversePtr& universe);
/// Canonical profile text. The `alternatives:` header is emitted only when the
/// universe order differs from sorted name order.
std::string format_profile(const Profile& profile);
Profile load_profile(const std::string& path);

/// Bijection on a finite set of agent ids.
class AgentPermutation {
 public:
  explicit AgentPermutation(std::map<AgentId, AgentId> mapping);
  static AgentPermutation identity(std::span<const AgentId> agents);
  /// Cycle notation "(1 2)(3 4)" or "(1,2)(3,4)" over the given agent set;
  /// unmentioned agents are fixed.
  static AgentPermutation parse(std::string_view cycles, std::span<const AgentId> agents);

  AgentId operator()(AgentId agent) const;
  const std::map<AgentId, AgentId>& mapping() const { return mapping_; }
  AgentPermutation inverse() const;
  std::string to_cycles() const;

 private:
  std::map<AgentId, AgentId> mapping_;
};

/// Bijection on a universe's alternatives.
class AlternativePermutation {
 public:
  AlternativePermutation(UniversePtr universe, std::vector<AltIndex> image);
  static AlternativePermutation identity(UniversePtr universe);
  /// Cycle notation "(a b)(c d)"; unmentioned alternatives are fixed.
  static AlternativePermutation parse(std::string_view cycles, UniversePtr universe);

  AltIndex operator()(AltIndex x) const { return image_[static_cast<std::size_t>(x)]; }
  AlternativeSet operator()(AlternativeSet set) const;
  const UniversePtr& universe() const { return universe_; }
  const std::vector<AltIndex>& image() const { return image_; }
  AlternativePermutation inverse() const;
  std::string to_cycles() const;

 private:
  UniversePtr universe_;
  std::vector<AltIndex> image_;
};

/// The relation ⪰^σ with σ(x) ⪰^σ σ(y) iff x ⪰ y.
PreferenceRelation permute_alternatives(const PreferenceRelation& rel, const AlternativePermutation& sigma);
/// R^σ: every agent's relation relabeled by σ.
Profile permute_alternatives(const Profile& profile, const AlternativePermutation& sigma);
/// Output entry for agent i carries the input relation of agent π(i).
Profile permute_agents(const Profile& profile, const AgentPermutation& pi);

/// x ⪰_i y for every agent and x ≻_i y for at least one.
bool pareto_dominates(const Profile& profile, AltIndex x, AltIndex y);

}  // namespace psc
