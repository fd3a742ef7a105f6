// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/constraints.hpp"

#include <sstream>
#include <utility>

#include "urm/error.hpp"

namespace urm {
namespace {

using kernels::kInfinity;
using kernels::Weight;

std::int64_t signed_offset(Natural n) { return static_cast<std::int64_t>(n); }

bool compare(std::int64_t lhs, Bound b, std::int64_t k) {
  switch (b) {
    case Bound::Le: return lhs <= k;
    case Bound::Ge: return lhs >= k;
    case Bound::Ne: return lhs != k;
  }
  return false;
}

Rel flip(Rel rel) {
  switch (rel) {
    case Rel::Lt: return Rel::Gt;
    case Rel::Le: return Rel::Ge;
    case Rel::Ge: return Rel::Le;
    case Rel::Gt: return Rel::Lt;
    case Rel::Eq:
    case Rel::Ne: return rel;
  }
  return rel;
}

// (plus - minus) rel k  ->  normalized atoms.
std::vector<Atom> make_atoms(std::optional<VarId> plus,
                             std::optional<VarId> minus, Rel rel,
                             std::int64_t k) {
  switch (rel) {
    case Rel::Lt: return {Atom{plus, minus, Bound::Le, k - 1}};
    case Rel::Le: return {Atom{plus, minus, Bound::Le, k}};
    case Rel::Ge: return {Atom{plus, minus, Bound::Ge, k}};
    case Rel::Gt: return {Atom{plus, minus, Bound::Ge, k + 1}};
    case Rel::Eq:
      return {Atom{plus, minus, Bound::Le, k}, Atom{plus, minus, Bound::Ge, k}};
    case Rel::Ne:
      // One spelling per disequality so syntactic matching is reliable.
      if (plus && minus && *plus > *minus) {
        return {Atom{minus, plus, Bound::Ne, -k}};
      }
      return {Atom{plus, minus, Bound::Ne, k}};
  }
  return {};
}

std::string var_name(VarId v, std::span<const std::string> names) {
  if (v < names.size()) return names[v];
  return "v" + std::to_string(v + 1);
}

}  // namespace

std::string_view to_string(Rel rel) {
  switch (rel) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Ne: return "!=";
  }
  return "?";
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

bool Atom::constant_truth() const noexcept { return compare(0, bound, k); }

LinearExpr LinearExpr::of(const SymValue& v) {
  LinearExpr e;
  if (v.var) e.coeffs[*v.var] = 1;
  e.constant = signed_offset(v.offset);
  return e;
}

LinearExpr LinearExpr::operator+(const LinearExpr& other) const {
  LinearExpr out = *this;
  for (const auto& [v, c] : other.coeffs) {
    if ((out.coeffs[v] += c) == 0) out.coeffs.erase(v);
  }
  out.constant += other.constant;
  return out;
}

LinearExpr LinearExpr::operator-(const LinearExpr& other) const {
  LinearExpr out = *this;
  for (const auto& [v, c] : other.coeffs) {
    if ((out.coeffs[v] -= c) == 0) out.coeffs.erase(v);
  }
  out.constant -= other.constant;
  return out;
}

LinearExpr LinearExpr::operator+(std::int64_t c) const {
  LinearExpr out = *this;
  out.constant += c;
  return out;
}

std::vector<Atom> atoms_of(const LinearExpr& expr, Rel rel) {
  std::optional<VarId> plus;
  std::optional<VarId> minus;
  for (const auto& [v, c] : expr.coeffs) {
    if (c == 1 && !plus) {
      plus = v;
    } else if (c == -1 && !minus) {
      minus = v;
    } else {
      throw Error(ErrorCode::UnsupportedAtom,
                  "constraint is outside the difference-bound fragment");
    }
  }
  // expr = plus - minus + constant, so (expr rel 0) is
  // (plus - minus) rel -constant.
  if (!plus && minus) {
    // -minus rel k  <=>  minus flip(rel) -k
    return make_atoms(minus, std::nullopt, flip(rel), expr.constant);
  }
  return make_atoms(plus, minus, rel, -expr.constant);
}

std::vector<Atom> normalize(const ParamComparison& c) {
  return atoms_of(LinearExpr::of(c.lhs) - LinearExpr::of(c.rhs), c.rel);
}

std::vector<Atom> substitute(const RegComparison& c,
                             std::span<const SymValue> regs) {
  auto lift = [&](const RegTerm& t) {
    if (!t.reg) return LinearExpr::of(SymValue::constant(t.offset));
    const std::size_t i = t.reg->value();
    if (i > regs.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "register r" + std::to_string(i) +
                      " has no symbolic contents");
    }
    return LinearExpr::of(regs[i - 1]) + signed_offset(t.offset);
  };
  return atoms_of(lift(c.lhs) - lift(c.rhs), c.rel);
}

ConstraintSet::ConstraintSet(std::size_t num_vars) {
  names_.reserve(num_vars);
  for (std::size_t v = 0; v < num_vars; ++v) {
    names_.push_back("v" + std::to_string(v + 1));
  }
}

ConstraintSet::ConstraintSet(std::vector<std::string> names)
    : names_(std::move(names)) {}

void ConstraintSet::check_vars(const Atom& atom) const {
  for (const auto& v : {atom.plus, atom.minus}) {
    if (v && *v >= names_.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "variable " + std::to_string(*v) +
                      " outside the declared universe of " +
                      std::to_string(names_.size()));
    }
  }
}

void ConstraintSet::add(const Atom& atom) {
  check_vars(atom);
  atoms_.push_back(atom);
}

void ConstraintSet::add(std::span<const Atom> atoms) {
  for (const Atom& a : atoms) add(a);
}

Closure::Closure(const ConstraintSet& cs, kernels::RelaxRowFn relax)
    : size_(cs.num_vars() + 1), dist_(size_ * size_, kInfinity) {
  // dist_[from * size_ + to] bounds (to - from) from above.
  for (std::size_t i = 0; i < size_; ++i) dist_[i * size_ + i] = 0;
  const std::size_t zero = cs.num_vars();
  for (std::size_t v = 0; v < cs.num_vars(); ++v) {
    dist_[v * size_ + zero] = 0;  // 0 - v <= 0
  }
  auto tighten = [&](std::size_t from, std::size_t to, Weight w) {
    Weight& d = dist_[from * size_ + to];
    if (w < d) d = w;
  };
  for (const Atom& a : cs.atoms()) {
    if (a.is_constant()) {
      if (!a.constant_truth()) feasible_ = false;
      continue;
    }
    const std::size_t p = node(a.plus);
    const std::size_t m = node(a.minus);
    switch (a.bound) {
      case Bound::Le: tighten(m, p, a.k); break;
      case Bound::Ge: tighten(p, m, -a.k); break;
      case Bound::Ne: disequalities_.push_back(a); break;
    }
  }
  kernels::close(dist_, size_, relax);
  for (std::size_t i = 0; i < size_; ++i) {
    if (dist_[i * size_ + i] < 0) feasible_ = false;
  }
  // A disequality whose equality is forced by the bounds empties the set.
  if (feasible_) {
    for (const Atom& a : disequalities_) {
      if (entails_bound(Atom{a.plus, a.minus, Bound::Le, a.k}) &&
          entails_bound(Atom{a.plus, a.minus, Bound::Ge, a.k})) {
        feasible_ = false;
        break;
      }
    }
  }
}

std::size_t Closure::node(std::optional<VarId> v) const {
  return v ? *v : size_ - 1;
}

std::optional<std::int64_t> Closure::upper_bound(
    std::optional<VarId> to, std::optional<VarId> from) const {
  if ((to && *to + 1 >= size_) || (from && *from + 1 >= size_)) {
    throw Error(ErrorCode::InvalidArgument, "variable outside closure");
  }
  const Weight d = dist_[node(from) * size_ + node(to)];
  if (d >= kInfinity) return std::nullopt;
  return d;
}

bool Closure::entails_bound(const Atom& goal) const {
  if (goal.is_constant()) return goal.constant_truth();
  const std::size_t p = node(goal.plus);
  const std::size_t m = node(goal.minus);
  switch (goal.bound) {
    case Bound::Le: return dist_[m * size_ + p] <= goal.k;
    case Bound::Ge: return dist_[p * size_ + m] <= -goal.k;
    case Bound::Ne: break;
  }
  return false;
}

bool Closure::entails(const Atom& goal) const {
  for (const auto& v : {goal.plus, goal.minus}) {
    if (v && *v + 1 >= size_) {
      throw Error(ErrorCode::InvalidArgument,
                  "goal mentions a variable outside the constraint universe");
    }
  }
  if (!feasible_) return true;
  if (goal.bound != Bound::Ne) return entails_bound(goal);

  if (entails_bound(Atom{goal.plus, goal.minus, Bound::Le, goal.k - 1}) ||
      entails_bound(Atom{goal.plus, goal.minus, Bound::Ge, goal.k + 1})) {
    return true;
  }
  const Atom canonical = make_atoms(goal.plus, goal.minus, Rel::Ne, goal.k)[0];
  for (const Atom& a : disequalities_) {
    if (a == canonical) return true;
  }
  return false;
}

bool entails(const ConstraintSet& cs, const Atom& goal) {
  return Closure(cs).entails(goal);
}

bool entails_all(const ConstraintSet& cs, std::span<const Atom> goals) {
  const Closure closure(cs);
  for (const Atom& g : goals) {
    if (!closure.entails(g)) return false;
  }
  return true;
}

Tri decide_eq(const SymValue& a, const SymValue& b, const Closure& closure) {
  const LinearExpr diff = LinearExpr::of(a) - LinearExpr::of(b);
  const std::vector<Atom> equal = atoms_of(diff, Rel::Eq);
  if (closure.entails(equal[0]) && closure.entails(equal[1])) return Tri::True;
  if (closure.entails(atoms_of(diff, Rel::Ne)[0])) return Tri::False;
  return Tri::Unknown;
}

Tri decide_eq(const SymValue& a, const SymValue& b, const ConstraintSet& cs) {
  return decide_eq(a, b, Closure(cs));
}

bool holds(const Atom& atom, std::span<const Natural> assignment) {
  auto value = [&](std::optional<VarId> v) -> std::int64_t {
    return v ? signed_offset(assignment[*v]) : 0;
  };
  return compare(value(atom.plus) - value(atom.minus), atom.bound, atom.k);
}

bool holds(const ParamComparison& c, std::span<const Natural> assignment) {
  auto value = [&](const SymValue& s) -> std::int64_t {
    return (s.var ? signed_offset(assignment[*s.var]) : 0) +
           signed_offset(s.offset);
  };
  const std::int64_t l = value(c.lhs);
  const std::int64_t r = value(c.rhs);
  switch (c.rel) {
    case Rel::Lt: return l < r;
    case Rel::Le: return l <= r;
    case Rel::Eq: return l == r;
    case Rel::Ge: return l >= r;
    case Rel::Gt: return l > r;
    case Rel::Ne: return l != r;
  }
  return false;
}

bool holds(const RegComparison& c, const Config& config) {
  auto value = [&](const RegTerm& t) -> Natural {
    return (t.reg ? config.get(*t.reg) : 0) + t.offset;
  };
  // Reuse the parameter evaluator on a two-variable assignment.
  const Natural values[] = {value(c.lhs), value(c.rhs)};
  return holds(ParamComparison{SymValue::var_plus(0), c.rel,
                               SymValue::var_plus(1)},
               values);
}

std::string to_string(const Atom& atom, std::span<const std::string> names) {
  std::ostringstream out;
  if (atom.plus) {
    out << var_name(*atom.plus, names);
    if (atom.minus) out << " - " << var_name(*atom.minus, names);
  } else if (atom.minus) {
    out << "-" << var_name(*atom.minus, names);
  } else {
    out << "0";
  }
  switch (atom.bound) {
    case Bound::Le: out << " <= "; break;
    case Bound::Ge: out << " >= "; break;
    case Bound::Ne: out << " != "; break;
  }
  out << atom.k;
  return out.str();
}

std::string to_string(const RegTerm& t) {
  if (!t.reg) return std::to_string(t.offset);
  std::string s = "r" + std::to_string(t.reg->value());
  if (t.offset != 0) s += "+" + std::to_string(t.offset);
  return s;
}

std::string to_string(const RegComparison& c) {
  return to_string(c.lhs) + " " + std::string(to_string(c.rel)) + " " +
         to_string(c.rhs);
}

std::string to_string(const SymValue& v, std::span<const std::string> names) {
  if (!v.var) return std::to_string(v.offset);
  std::string s = var_name(*v.var, names);
  if (v.offset != 0) s += "+" + std::to_string(v.offset);
  return s;
}

std::string to_string(const ParamComparison& c,
                      std::span<const std::string> names) {
  return to_string(c.lhs, names) + " " + std::string(to_string(c.rel)) + " " +
         to_string(c.rhs, names);
}

}  // namespace urm
