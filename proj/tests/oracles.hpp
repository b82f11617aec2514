#pragma once

// Independent reference implementations used by the tests. They work on
// plain rank vectors and mass vectors and share no algorithmic code with the
// library: RSD by enumerating all agent orders, SD comparisons straight from
// the upper-contour definition, dominators by integer-grid search.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "psc/lottery.hpp"
#include "psc/schemes.hpp"

namespace oracle {

using psc::Rational;

/// ranks[i][x]: position of x's indifference class for agent i (0 = best).
using Ranks = std::vector<std::vector<int>>;
using Masses = std::vector<Rational>;

inline Ranks ranks_of(const psc::Profile& profile) {
  Ranks out;
  const auto m = static_cast<int>(profile.universe()->size());
  for (const auto& e : profile.entries()) {
    std::vector<int> r(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) r[static_cast<std::size_t>(x)] = e.relation.rank(x);
    out.push_back(std::move(r));
  }
  return out;
}

inline Masses masses_of(const psc::Lottery& p) {
  Masses out;
  for (Eigen::Index i = 0; i < p.masses().size(); ++i) out.push_back(p.masses()(i));
  return out;
}

/// Ordered set partitions: W(0) = 1, W(m) = sum_k C(m,k) W(m-k).
inline long long fubini(int m) {
  std::vector<long long> w(static_cast<std::size_t>(m) + 1, 0);
  w[0] = 1;
  for (int n = 1; n <= m; ++n) {
    long long binom = 1;
    for (int k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      w[static_cast<std::size_t>(n)] += binom * w[static_cast<std::size_t>(n - k)];
    }
  }
  return w[static_cast<std::size_t>(m)];
}

/// RSD by brute force over all n! agent orders.
inline Masses rsd(const Ranks& ranks, int m) {
  const auto n = ranks.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Masses total(static_cast<std::size_t>(m), Rational(0));
  long long orders = 0;
  do {
    std::vector<bool> alive(static_cast<std::size_t>(m), true);
    for (auto i : order) {
      int best = 1 << 30;
      for (int x = 0; x < m; ++x) {
        if (alive[static_cast<std::size_t>(x)]) best = std::min(best, ranks[i][static_cast<std::size_t>(x)]);
      }
      for (int x = 0; x < m; ++x) {
        if (ranks[i][static_cast<std::size_t>(x)] != best) alive[static_cast<std::size_t>(x)] = false;
      }
    }
    const auto survivors = std::count(alive.begin(), alive.end(), true);
    for (int x = 0; x < m; ++x) {
      if (alive[static_cast<std::size_t>(x)]) total[static_cast<std::size_t>(x)] += Rational(1, survivors);
    }
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& t : total) t /= orders;
  return total;
}

/// RD on strict-top profiles: share of agents whose unique best is x.
inline Masses rd(const Ranks& ranks, int m) {
  Masses out(static_cast<std::size_t>(m), Rational(0));
  for (const auto& r : ranks) {
    const auto top = std::min_element(r.begin(), r.end()) - r.begin();
    out[static_cast<std::size_t>(top)] += Rational(1, static_cast<long>(ranks.size()));
  }
  return out;
}

/// p weakly SD-dominates q: every upper contour set gets at least as much.
inline bool sd_weak(const std::vector<int>& rank, const Masses& p, const Masses& q) {
  for (std::size_t x = 0; x < rank.size(); ++x) {
    Rational a = 0, b = 0;
    for (std::size_t y = 0; y < rank.size(); ++y) {
      if (rank[y] <= rank[x]) {
        a += p[y];
        b += q[y];
      }
    }
    if (a < b) return false;
  }
  return true;
}

inline bool sd_strict(const std::vector<int>& rank, const Masses& p, const Masses& q) {
  return sd_weak(rank, p, q) && !sd_weak(rank, q, p);
}

/// q weakly SD-dominates p for everyone and strictly for someone.
inline bool dominates(const Ranks& ranks, const Masses& q, const Masses& p) {
  bool strict = false;
  for (const auto& r : ranks) {
    if (!sd_weak(r, q, p)) return false;
    strict = strict || !sd_weak(r, p, q);
  }
  return strict;
}

/// Searches every lottery k/d with integer k and common denominator d <= max_den.
inline bool has_grid_dominator(const Ranks& ranks, const Masses& p, int max_den) {
  const auto m = p.size();
  std::vector<int> k(m, 0);
  for (int d = 1; d <= max_den; ++d) {
    // Odometer over k[0..m-2]; the last part takes the rest.
    std::fill(k.begin(), k.end(), 0);
    while (true) {
      int used = 0;
      for (std::size_t i = 0; i + 1 < m; ++i) used += k[i];
      if (used <= d) {
        Masses q(m);
        for (std::size_t i = 0; i + 1 < m; ++i) q[i] = Rational(k[i], d);
        q[m - 1] = Rational(d - used, d);
        if (dominates(ranks, q, p)) return true;
      }
      std::size_t i = 0;
      while (i + 1 < m && ++k[i] > d) k[i++] = 0;
      if (i + 1 == m) break;
    }
  }
  return false;
}

/// y Pareto-dominates x: nobody strictly prefers x, somebody strictly prefers y.
inline bool pareto(const Ranks& ranks, std::size_t y, std::size_t x) {
  bool strict = false;
  for (const auto& r : ranks) {
    if (r[x] < r[y]) return false;
    strict = strict || r[y] < r[x];
  }
  return strict;
}

inline bool ex_post_efficient(const Ranks& ranks, const Masses& p) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0) continue;
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (y != x && pareto(ranks, y, x)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random instances (seeded by the caller)

inline psc::PreferenceRelation random_relation(std::mt19937& rng, const psc::UniversePtr& universe) {
  const auto m = static_cast<int>(universe->size());
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<psc::AlternativeSet> classes(1);
  std::bernoulli_distribution cut(0.5);
  for (int i = 0; i < m; ++i) {
    if (i > 0 && cut(rng)) classes.emplace_back();
    classes.back().insert(order[static_cast<std::size_t>(i)]);
  }
  return psc::PreferenceRelation(universe, std::move(classes));
}

inline psc::Profile random_profile(std::mt19937& rng, const psc::UniversePtr& universe, int n) {
  std::vector<psc::Profile::Entry> entries;
  for (int i = 1; i <= n; ++i) entries.push_back({i, random_relation(rng, universe)});
  return psc::Profile(universe, std::move(entries));
}

/// Random lottery whose masses are multiples of 1/den.
inline psc::Lottery random_lottery(std::mt19937& rng, const psc::UniversePtr& universe, int den) {
  const auto m = static_cast<int>(universe->size());
  std::uniform_int_distribution<int> pick(0, m - 1);
  psc::RationalVector mass = psc::RationalVector::Zero(m);
  for (int i = 0; i < den; ++i) mass(pick(rng)) += Rational(1, den);
  return psc::Lottery(universe, std::move(mass));
}

inline psc::UniversePtr letters(int m) {
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return psc::make_universe(std::move(names));
}

}  // namespace oracle
