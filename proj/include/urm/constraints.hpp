// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// Symbolic register contents and difference-bound reasoning.
//
// A symbolic register holds either a constant or "variable + offset";
// Zero, Succ and Transfer never leave this shape. Facts about variables
// are normalized to atoms
//
//     (plus - minus) <= k,  (plus - minus) >= k,  (plus - minus) != k
//
// where either side may be absent (read as 0). Conjunctions of <=/>= atoms
// are decided exactly over the naturals by shortest-path closure; != atoms
// only filter assignments and are matched syntactically.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "urm/kernels.hpp"
#include "urm/machine.hpp"

namespace urm {

using VarId = std::size_t;

enum class Rel { Lt, Le, Eq, Ge, Gt, Ne };

std::string_view to_string(Rel rel);

struct SymValue {
  std::optional<VarId> var;
  Natural offset = 0;

  static SymValue constant(Natural c) { return {std::nullopt, c}; }
  static SymValue var_plus(VarId v, Natural c = 0) { return {v, c}; }

  friend bool operator==(const SymValue&, const SymValue&) = default;
};

/// Register operand of an invariant: rI, rI+c or a plain constant.
struct RegTerm {
  std::optional<RegisterIndex> reg;
  Natural offset = 0;

  friend bool operator==(const RegTerm&, const RegTerm&) = default;
};

/// `lhs rel rhs` in surface form, before normalization.
template <class Term>
struct Comparison {
  Term lhs;
  Rel rel;
  Term rhs;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

using ParamComparison = Comparison<SymValue>;
using RegComparison = Comparison<RegTerm>;

enum class Bound { Le, Ge, Ne };

struct Atom {
  std::optional<VarId> plus;
  std::optional<VarId> minus;
  Bound bound;
  std::int64_t k;

  bool is_constant() const noexcept { return !plus && !minus; }
  /// Truth value of a constant atom (0 bound k).
  bool constant_truth() const noexcept;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Integer linear form sum(coeff * var) + constant.
struct LinearExpr {
  std::map<VarId, std::int64_t> coeffs;
  std::int64_t constant = 0;

  static LinearExpr of(const SymValue& v);

  LinearExpr operator+(const LinearExpr& other) const;
  LinearExpr operator-(const LinearExpr& other) const;
  LinearExpr operator+(std::int64_t c) const;
};

/// Atoms equivalent to `expr rel 0`. Throws UnsupportedAtom when `expr`
/// is not a difference of at most two unit-coefficient variables.
std::vector<Atom> atoms_of(const LinearExpr& expr, Rel rel);

std::vector<Atom> normalize(const ParamComparison& c);

/// Replaces every register by its symbolic contents. `regs[i]` holds r_{i+1}.
std::vector<Atom> substitute(const RegComparison& c,
                             std::span<const SymValue> regs);

class ConstraintSet {
 public:
  explicit ConstraintSet(std::size_t num_vars = 0);
  explicit ConstraintSet(std::vector<std::string> names);

  std::size_t num_vars() const noexcept { return names_.size(); }
  std::string_view name(VarId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  void add(const Atom& atom);
  void add(std::span<const Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }

 private:
  void check_vars(const Atom& atom) const;

  std::vector<std::string> names_;
  std::vector<Atom> atoms_;
};

/// Shortest-path closure of the <=/>= part of a constraint set, with the
/// implicit v >= 0 for every variable.
class Closure {
 public:
  explicit Closure(const ConstraintSet& cs,
                   kernels::RelaxRowFn relax = kernels::relax_row());

  bool feasible() const noexcept { return feasible_; }

  /// Tightest known bound on (to - from); nullopt names the constant 0.
  std::optional<std::int64_t> upper_bound(std::optional<VarId> to,
                                          std::optional<VarId> from) const;

  bool entails(const Atom& goal) const;

 private:
  std::size_t node(std::optional<VarId> v) const;
  bool entails_bound(const Atom& goal) const;

  std::size_t size_;
  std::vector<kernels::Weight> dist_;
  std::vector<Atom> disequalities_;
  bool feasible_ = true;
};

bool entails(const ConstraintSet& cs, const Atom& goal);
bool entails_all(const ConstraintSet& cs, std::span<const Atom> goals);

enum class Tri { True, False, Unknown };

std::string_view to_string(Tri t);

Tri decide_eq(const SymValue& a, const SymValue& b, const ConstraintSet& cs);
Tri decide_eq(const SymValue& a, const SymValue& b, const Closure& closure);

/// Concrete evaluation; `assignment[v]` is the value of variable v.
bool holds(const Atom& atom, std::span<const Natural> assignment);
bool holds(const ParamComparison& c, std::span<const Natural> assignment);
bool holds(const RegComparison& c, const Config& config);

std::string to_string(const Atom& atom,
                      std::span<const std::string> names = {});
std::string to_string(const RegTerm& t);
std::string to_string(const RegComparison& c);
std::string to_string(const SymValue& v,
                      std::span<const std::string> names = {});
std::string to_string(const ParamComparison& c,
                      std::span<const std::string> names = {});

}  // namespace urm
