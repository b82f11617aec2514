#include "psc/lottery.hpp"

#include <cctype>

namespace psc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Lottery::Lottery(UniversePtr universe, RationalVector mass) : universe_(std::move(universe)), mass_(std::move(mass)) {
  if (!universe_) throw InvalidLottery("lottery without a universe");
  if (static_cast<std::size_t>(mass_.size()) != universe_->size()) {
    throw InvalidLottery("lottery has " + std::to_string(mass_.size()) + " masses for " +
                         std::to_string(universe_->size()) + " alternatives");
  }
  Rational total = 0;
  for (Eigen::Index i = 0; i < mass_.size(); ++i) {
    if (mass_(i) < 0) {
      throw InvalidLottery("negative mass " + format_rational(mass_(i)) + " on " +
                           universe_->name(static_cast<AltIndex>(i)));
    }
    total += mass_(i);
  }
  if (total != 1) throw InvalidLottery("masses sum to " + format_rational(total) + ", not 1");
}

Lottery Lottery::degenerate(UniversePtr universe, AltIndex x) {
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(universe->size()));
  mass(x) = 1;
  return Lottery(std::move(universe), std::move(mass));
}

Rational Lottery::mass_of(AlternativeSet set) const {
  Rational total = 0;
  for (auto x : set.members()) total += mass_(x);
  return total;
}

Lottery parse_lottery(std::string_view text, const UniversePtr& universe) {
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(universe->size()));
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const auto plus = text.find('+', offset);
    const auto end = plus == std::string_view::npos ? text.size() : plus;
    const auto term = trim(text.substr(offset, end - offset));
    if (term.empty()) throw ParseError("empty lottery term", offset);

    std::string_view coeff = "1";
    std::string_view name = term;
    if (const auto star = term.find('*'); star != std::string_view::npos) {
      coeff = trim(term.substr(0, star));
      name = trim(term.substr(star + 1));
    }
    const auto x = universe->find(name);
    if (!x) throw ParseError("unknown alternative '" + std::string(name) + "'", offset);
    try {
      mass(*x) += parse_rational(coeff);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), offset);
    }
    if (plus == std::string_view::npos) break;
    offset = plus + 1;
  }
  return Lottery(universe, std::move(mass));
}

std::string format_lottery(const Lottery& p) {
  std::string out;
  for (Eigen::Index i = 0; i < p.masses().size(); ++i) {
    if (p.masses()(i) == 0) continue;
    if (!out.empty()) out += " + ";
    out += format_rational(p.masses()(i)) + "*" + p.universe()->name(static_cast<AltIndex>(i));
  }
  return out;
}

Lottery uniform(AlternativeSet subset, const UniversePtr& universe) {
  if (subset.empty()) throw std::invalid_argument("uniform lottery over an empty set");
  if (!subset.subset_of(AlternativeSet::full(universe->size()))) {
    throw std::invalid_argument("uniform lottery over alternatives outside the universe");
  }
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(universe->size()));
  const Rational share(1, subset.size());
  for (auto x : subset.members()) mass(x) = share;
  return Lottery(universe, std::move(mass));
}

AlternativeSet support(const Lottery& p) {
  AlternativeSet out;
  for (Eigen::Index i = 0; i < p.masses().size(); ++i) {
    if (p.masses()(i) > 0) out.insert(static_cast<AltIndex>(i));
  }
  return out;
}

Rational upper_contour_mass(const PreferenceRelation& rel, const Lottery& p, AltIndex x) {
  return p.mass_of(rel.upper_contour(x));
}

RationalVector class_prefix_masses(const PreferenceRelation& rel, const RationalVector& mass) {
  RationalVector prefix(static_cast<Eigen::Index>(rel.class_count()));
  Rational running = 0;
  for (std::size_t k = 0; k < rel.class_count(); ++k) {
    for (auto x : rel.classes()[k].members()) running += mass(x);
    prefix(static_cast<Eigen::Index>(k)) = running;
  }
  return prefix;
}

std::string_view to_string(SdVerdict v) {
  switch (v) {
    case SdVerdict::StrictlyDominates: return "StrictlyDominates";
    case SdVerdict::StrictlyDominatedBy: return "StrictlyDominatedBy";
    case SdVerdict::Equivalent: return "Equivalent";
    case SdVerdict::Incomparable: return "Incomparable";
  }
  return "?";
}

SdVerdict mirror(SdVerdict v) {
  switch (v) {
    case SdVerdict::StrictlyDominates: return SdVerdict::StrictlyDominatedBy;
    case SdVerdict::StrictlyDominatedBy: return SdVerdict::StrictlyDominates;
    default: return v;
  }
}

SdVerdict sd_compare(const PreferenceRelation& rel, const Lottery& p, const Lottery& q) {
  if (!same_universe(rel.universe(), p.universe()) || !same_universe(rel.universe(), q.universe())) {
    throw std::invalid_argument("sd_compare: universe mismatch");
  }
  // Upper contour masses are constant on indifference classes, so one
  // comparison per class boundary suffices.
  const auto pp = class_prefix_masses(rel, p.masses());
  const auto qp = class_prefix_masses(rel, q.masses());
  bool p_ge = true;
  bool q_ge = true;
  for (Eigen::Index k = 0; k < pp.size(); ++k) {
    if (pp(k) < qp(k)) p_ge = false;
    if (qp(k) < pp(k)) q_ge = false;
  }
  if (p_ge && q_ge) return SdVerdict::Equivalent;
  if (p_ge) return SdVerdict::StrictlyDominates;
  if (q_ge) return SdVerdict::StrictlyDominatedBy;
  return SdVerdict::Incomparable;
}

}  // namespace psc
