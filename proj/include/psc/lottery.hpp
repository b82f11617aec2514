#pragma once

#include <string>
#include <string_view>

#include "psc/preferences.hpp"
#include "psc/rational.hpp"

namespace psc {

/// Probability distribution over a universe with exact rational masses.
/// Masses are nonnegative and sum to exactly one.
class Lottery {
 public:
  /// Validates nonnegativity, normalization and dimension.
  Lottery(UniversePtr universe, RationalVector mass);

  static Lottery degenerate(UniversePtr universe, AltIndex x);

  const UniversePtr& universe() const { return universe_; }
  const RationalVector& masses() const { return mass_; }
  const Rational& operator[](AltIndex x) const { return mass_(x); }
  Rational mass_of(AlternativeSet set) const;

  friend bool operator==(const Lottery& a, const Lottery& b) {
    return same_universe(a.universe_, b.universe_) && a.mass_ == b.mass_;
  }

 private:
  UniversePtr universe_;
  RationalVector mass_;
};

/// Thrown when a vector of masses does not form a lottery.
class InvalidLottery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// `5/12*a + 5/12*b + 1/12*c`. A bare alternative means mass 1; omitted
/// alternatives get mass 0; repeated alternatives accumulate.
Lottery parse_lottery(std::string_view text, const UniversePtr& universe);
/// Canonical text: positive-mass terms in universe order, each `p/q*x`.
std::string format_lottery(const Lottery& p);

Lottery uniform(AlternativeSet subset, const UniversePtr& universe);
AlternativeSet support(const Lottery& p);

/// Σ_{y ⪰ x} p(y).
Rational upper_contour_mass(const PreferenceRelation& rel, const Lottery& p, AltIndex x);

/// Upper contour masses per indifference class: entry k is the mass of the
/// k+1 best classes.
RationalVector class_prefix_masses(const PreferenceRelation& rel, const RationalVector& mass);

enum class SdVerdict { StrictlyDominates, StrictlyDominatedBy, Equivalent, Incomparable };

std::string_view to_string(SdVerdict v);
SdVerdict mirror(SdVerdict v);

/// Compares p against q under stochastic dominance for `rel`.
SdVerdict sd_compare(const PreferenceRelation& rel, const Lottery& p, const Lottery& q);

/// p ⪰^sd q.
inline bool sd_weakly_dominates(const PreferenceRelation& rel, const Lottery& p, const Lottery& q) {
  const auto v = sd_compare(rel, p, q);
  return v == SdVerdict::StrictlyDominates || v == SdVerdict::Equivalent;
}

}  // namespace psc
