#pragma once

// Exact two-phase simplex on a dense Eigen tableau. Templated on the scalar
// so the same code runs over any exact ordered field; the toolkit
// instantiates it with psc::Rational.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psc/rational.hpp"

namespace psc::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
struct Constraint {
  std::string name;
  DenseVector<Scalar> coefficients;
  Relation relation;
  Scalar constant;
};

/// maximize objective·x subject to the constraints. Variables are
/// nonnegative unless declared free.
template <typename Scalar>
class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(std::vector<std::string> variable_names)
      : names_(std::move(variable_names)),
        nonnegative_(names_.size(), true),
        objective_(DenseVector<Scalar>::Zero(static_cast<Eigen::Index>(names_.size()))) {}

  int add_variable(std::string name, bool nonnegative = true) {
    if (!constraints_.empty()) throw std::logic_error("add variables before constraints");
    names_.push_back(std::move(name));
    nonnegative_.push_back(nonnegative);
    objective_.conservativeResize(static_cast<Eigen::Index>(names_.size()));
    objective_(objective_.size() - 1) = Scalar(0);
    return static_cast<int>(names_.size()) - 1;
  }

  void set_free(int var) { nonnegative_.at(static_cast<std::size_t>(var)) = false; }
  void set_objective(DenseVector<Scalar> coefficients) { objective_ = std::move(coefficients); }
  void set_objective_coefficient(int var, Scalar value) { objective_(var) = std::move(value); }

  void add_constraint(DenseVector<Scalar> coefficients, Relation relation, Scalar constant, std::string name = {}) {
    if (coefficients.size() != static_cast<Eigen::Index>(names_.size())) {
      throw DimensionMismatch("constraint has " + std::to_string(coefficients.size()) + " coefficients for " +
                              std::to_string(names_.size()) + " variables");
    }
    if (name.empty()) name = "c" + std::to_string(constraints_.size());
    constraints_.push_back({std::move(name), std::move(coefficients), relation, std::move(constant)});
  }

  /// Sparse form: (variable, coefficient) pairs.
  void add_constraint(const std::vector<std::pair<int, Scalar>>& terms, Relation relation, Scalar constant,
                      std::string name = {}) {
    DenseVector<Scalar> row = DenseVector<Scalar>::Zero(static_cast<Eigen::Index>(names_.size()));
    for (const auto& [var, coeff] : terms) row(var) += coeff;
    add_constraint(std::move(row), relation, std::move(constant), std::move(name));
  }

  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  bool is_nonnegative(int var) const { return nonnegative_.at(static_cast<std::size_t>(var)); }
  const DenseVector<Scalar>& objective() const { return objective_; }
  const std::vector<Constraint<Scalar>>& constraints() const { return constraints_; }

  void validate() const {
    if (names_.empty()) throw DimensionMismatch("linear program without variables");
    const auto n = static_cast<Eigen::Index>(names_.size());
    if (objective_.size() != n) throw DimensionMismatch("objective has wrong dimension");
    for (const auto& c : constraints_) {
      if (c.coefficients.size() != n) throw DimensionMismatch("constraint '" + c.name + "' has wrong dimension");
    }
  }

 private:
  std::vector<std::string> names_;
  std::vector<bool> nonnegative_;
  DenseVector<Scalar> objective_;
  std::vector<Constraint<Scalar>> constraints_;
};

enum class Status { Optimal, Infeasible, Unbounded };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
  }
  return "?";
}

template <typename Scalar>
struct Outcome {
  Status status = Status::Infeasible;
  Scalar value{};
  /// Optimal vertex; empty unless status == Optimal.
  DenseVector<Scalar> point;

  bool optimal() const { return status == Status::Optimal; }
};

/// Whether `point` meets every constraint and sign restriction exactly.
template <typename Scalar>
bool satisfies(const LinearProgram<Scalar>& lp, const DenseVector<Scalar>& point) {
  if (point.size() != static_cast<Eigen::Index>(lp.variable_count())) return false;
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    if (lp.is_nonnegative(static_cast<int>(j)) && point(static_cast<Eigen::Index>(j)) < 0) return false;
  }
  for (const auto& c : lp.constraints()) {
    const Scalar lhs = c.coefficients.dot(point);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.constant) return false;
        break;
      case Relation::Equal:
        if (lhs != c.constant) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.constant) return false;
        break;
    }
  }
  return true;
}

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  Tableau(DenseMatrix<Scalar> rows, std::vector<int> basis) : t_(std::move(rows)), basis_(std::move(basis)) {}

  Eigen::Index row_count() const { return t_.rows(); }
  Eigen::Index column_count() const { return t_.cols() - 1; }
  const DenseMatrix<Scalar>& matrix() const { return t_; }
  const std::vector<int>& basis() const { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index col) {
    const Scalar p = t_(r, col);
    t_.row(r) /= p;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r || t_(i, col) == 0) continue;
      const Scalar f = t_(i, col);
      t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = static_cast<int>(col);
  }

  /// Maximizes cost·x over the columns flagged in `eligible`. Bland's rule
  /// (lowest-index entering column, lowest-index leaving basic variable)
  /// rules out cycling. Returns false if unbounded.
  bool maximize(const DenseVector<Scalar>& cost, const std::vector<bool>& eligible) {
    const Eigen::Index rhs = t_.cols() - 1;
    while (true) {
      // Reduced cost of column j: cost_j - cost_B · column_j.
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < rhs; ++j) {
        if (!eligible[static_cast<std::size_t>(j)]) continue;
        Scalar reduced = cost(j);
        for (Eigen::Index i = 0; i < t_.rows(); ++i) {
          if (t_(i, j) != 0) reduced -= cost(basis_[static_cast<std::size_t>(i)]) * t_(i, j);
        }
        if (reduced > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      Scalar best_ratio{};
      for (Eigen::Index i = 0; i < t_.rows(); ++i) {
        if (t_(i, entering) <= 0) continue;
        const Scalar ratio = t_(i, rhs) / t_(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  Scalar value_of(int col) const {
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (basis_[static_cast<std::size_t>(i)] == col) return t_(i, t_.cols() - 1);
    }
    return Scalar(0);
  }

  void drop_row(Eigen::Index r) {
    DenseMatrix<Scalar> next(t_.rows() - 1, t_.cols());
    for (Eigen::Index i = 0, k = 0; i < t_.rows(); ++i) {
      if (i != r) next.row(k++) = t_.row(i);
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

 private:
  DenseMatrix<Scalar> t_;
  std::vector<int> basis_;
};

}  // namespace detail

/// Exact optimum of `lp` by two-phase simplex with Bland's rule.
template <typename Scalar>
Outcome<Scalar> solve(const LinearProgram<Scalar>& lp) {
  lp.validate();
  const auto n = static_cast<Eigen::Index>(lp.variable_count());
  const auto& cons = lp.constraints();
  const auto rows = static_cast<Eigen::Index>(cons.size());

  // Column layout: split structural columns (x = x⁺ - x⁻ for free variables),
  // then one slack/surplus per inequality, then one artificial per row that
  // has no natural starting basic column.
  std::vector<Eigen::Index> pos_col(static_cast<std::size_t>(n)), neg_col(static_cast<std::size_t>(n), -1);
  Eigen::Index cols = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    pos_col[static_cast<std::size_t>(j)] = cols++;
    if (!lp.is_nonnegative(static_cast<int>(j))) neg_col[static_cast<std::size_t>(j)] = cols++;
  }

  std::vector<Relation> rel(cons.size());
  std::vector<int> sign(cons.size(), 1);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    rel[i] = cons[i].relation;
    if (cons[i].constant < 0) {
      sign[i] = -1;
      if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
    }
  }
  std::vector<Eigen::Index> slack_col(cons.size(), -1), art_col(cons.size(), -1);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (rel[i] != Relation::Equal) slack_col[i] = cols++;
  }
  const Eigen::Index first_artificial = cols;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (rel[i] != Relation::LessEqual) art_col[i] = cols++;
  }

  DenseMatrix<Scalar> t = DenseMatrix<Scalar>::Zero(rows, cols + 1);
  std::vector<int> basis(cons.size());
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const Scalar s(sign[i]);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& a = cons[i].coefficients(j);
      if (a == 0) continue;
      t(r, pos_col[static_cast<std::size_t>(j)]) = s * a;
      if (neg_col[static_cast<std::size_t>(j)] >= 0) t(r, neg_col[static_cast<std::size_t>(j)]) = -(s * a);
    }
    t(r, cols) = s * cons[i].constant;
    if (rel[i] == Relation::LessEqual) {
      t(r, slack_col[i]) = 1;
      basis[i] = static_cast<int>(slack_col[i]);
    } else {
      if (rel[i] == Relation::GreaterEqual) t(r, slack_col[i]) = -1;
      t(r, art_col[i]) = 1;
      basis[i] = static_cast<int>(art_col[i]);
    }
  }

  detail::Tableau<Scalar> tableau(std::move(t), std::move(basis));

  if (first_artificial < cols) {
    DenseVector<Scalar> phase1 = DenseVector<Scalar>::Zero(cols);
    for (Eigen::Index j = first_artificial; j < cols; ++j) phase1(j) = -1;
    tableau.maximize(phase1, std::vector<bool>(static_cast<std::size_t>(cols), true));
    Scalar infeasibility(0);
    for (Eigen::Index j = first_artificial; j < cols; ++j) infeasibility += tableau.value_of(static_cast<int>(j));
    if (infeasibility != 0) return {Status::Infeasible, Scalar(0), {}};

    // Drive remaining (zero-valued) artificials out of the basis; rows where
    // that is impossible are linearly dependent and dropped.
    for (Eigen::Index i = 0; i < tableau.row_count();) {
      if (tableau.basis()[static_cast<std::size_t>(i)] < first_artificial) {
        ++i;
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < first_artificial; ++j) {
        if (tableau.matrix()(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tableau.pivot(i, col);
        ++i;
      } else {
        tableau.drop_row(i);
      }
    }
  }

  DenseVector<Scalar> cost = DenseVector<Scalar>::Zero(cols);
  for (Eigen::Index j = 0; j < n; ++j) {
    cost(pos_col[static_cast<std::size_t>(j)]) = lp.objective()(j);
    if (neg_col[static_cast<std::size_t>(j)] >= 0) cost(neg_col[static_cast<std::size_t>(j)]) = -lp.objective()(j);
  }
  std::vector<bool> eligible(static_cast<std::size_t>(cols), true);
  for (Eigen::Index j = first_artificial; j < cols; ++j) eligible[static_cast<std::size_t>(j)] = false;
  if (!tableau.maximize(cost, eligible)) return {Status::Unbounded, Scalar(0), {}};

  DenseVector<Scalar> x(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    x(j) = tableau.value_of(static_cast<int>(pos_col[static_cast<std::size_t>(j)]));
    if (neg_col[static_cast<std::size_t>(j)] >= 0) {
      x(j) -= tableau.value_of(static_cast<int>(neg_col[static_cast<std::size_t>(j)]));
    }
  }
  return {Status::Optimal, lp.objective().dot(x), std::move(x)};
}

/// Human-readable dump:
///
///     maximize
///       obj: 1 x + 1 y
///     subject to
///       c0: 1 x + 2 y <= 1
///     bounds
///       x >= 0
///       z free
///
/// Zero coefficients are omitted; coefficients print via operator<<.
template <typename Scalar>
std::string dump(const LinearProgram<Scalar>& lp) {
  std::ostringstream out;
  auto linear = [&](const DenseVector<Scalar>& row) {
    bool first = true;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      if (row(j) == 0) continue;
      out << (first ? "" : " + ") << row(j) << ' ' << lp.variable_names()[static_cast<std::size_t>(j)];
      first = false;
    }
    if (first) out << '0';
  };
  out << "maximize\n  obj: ";
  linear(lp.objective());
  out << "\nsubject to\n";
  for (const auto& c : lp.constraints()) {
    out << "  " << c.name << ": ";
    linear(c.coefficients);
    out << ' ' << to_string(c.relation) << ' ' << c.constant << '\n';
  }
  out << "bounds\n";
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    out << "  " << lp.variable_names()[j] << (lp.is_nonnegative(static_cast<int>(j)) ? " >= 0" : " free") << '\n';
  }
  return out.str();
}

}  // namespace psc::lp
