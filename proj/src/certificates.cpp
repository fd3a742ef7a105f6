// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/certificates.hpp"

#include <algorithm>
#include <sstream>

#include "urm/error.hpp"

namespace urm {
namespace {

SymValue read(const SymState& s, RegisterIndex i) {
  return i.value() <= s.regs.size() ? s.regs[i.value() - 1]
                                    : SymValue::constant(0);
}

void write(SymState& s, RegisterIndex i, SymValue v) {
  if (i.value() > s.regs.size()) {
    s.regs.resize(i.value(), SymValue::constant(0));
  }
  s.regs[i.value() - 1] = v;
}

// Result of driving sym_step until a stopping condition.
struct Walk {
  enum class End { AtHead, Halted, Undecided, Exhausted };
  End end;
  SymState state;
  std::size_t pc;  // where the walk ended
};

// Runs from `start` until the pc equals `head` after at least `min_steps`
// steps. `head` = 0 never matches, so the walk only ends by halting.
Walk walk(const Program& p, SymState start, const Closure& closure,
          std::size_t head, std::size_t min_steps, std::size_t bound,
          std::vector<TrailEntry>& trail) {
  SymState state = std::move(start);
  for (std::size_t steps = 0;; ++steps) {
    if (steps >= min_steps && state.pc == head) {
      return {Walk::End::AtHead, std::move(state), head};
    }
    if (steps == bound) {
      const std::size_t pc = state.pc;
      return {Walk::End::Exhausted, std::move(state), pc};
    }
    SymStepResult r = sym_step(p, state, closure);
    if (auto* u = std::get_if<SymUndecided>(&r)) {
      return {Walk::End::Undecided, std::move(state), u->pc};
    }
    if (auto* h = std::get_if<SymHalt>(&r)) {
      const std::size_t pc = state.pc;
      trail.push_back({pc, h->rule});
      return {Walk::End::Halted, std::move(h->state), pc};
    }
    auto& next = std::get<SymNext>(r);
    trail.push_back({state.pc, next.rule});
    state = std::move(next.state);
  }
}

CertReport reject(RejectReason reason, std::vector<TrailEntry> trail,
                  std::optional<std::size_t> pc = std::nullopt,
                  std::optional<std::string> atom = std::nullopt) {
  return {Rejection{reason, pc, std::move(atom)}, std::move(trail)};
}

std::size_t max_reg(const RegComparison& c) {
  std::size_t m = 0;
  for (const auto& t : {c.lhs, c.rhs}) {
    if (t.reg) m = std::max(m, t.reg->value());
  }
  return m;
}

void validate(const Program& p, const ConstraintSet& params,
              std::span<const SymValue> init, std::size_t head,
              std::size_t bound) {
  if (!p.standard_form()) {
    throw Error(ErrorCode::NotStandardForm,
                "program is not in standard form");
  }
  if (head == 0 || head > p.size()) {
    throw Error(ErrorCode::InvalidCertificate,
                "loop head " + std::to_string(head) + " outside [1.." +
                    std::to_string(p.size()) + "]");
  }
  if (bound == 0) {
    throw Error(ErrorCode::InvalidCertificate, "step bound must be >= 1");
  }
  for (const SymValue& v : init) {
    if (v.var && *v.var >= params.num_vars()) {
      throw Error(ErrorCode::InvalidCertificate,
                  "initial value refers to an undeclared parameter");
    }
  }
}

SymState initial_state(std::span<const SymValue> init, std::size_t width) {
  SymState s{1, std::vector<SymValue>(init.begin(), init.end())};
  if (s.regs.size() < width) s.regs.resize(width, SymValue::constant(0));
  return s;
}

// First invariant atom not entailed at `regs`, if any. Throws
// UnsupportedAtom from substitution.
std::optional<std::string> first_unentailed(
    std::span<const RegComparison> invariant, std::span<const SymValue> regs,
    const Closure& closure) {
  for (const RegComparison& c : invariant) {
    for (const Atom& a : substitute(c, regs)) {
      if (!closure.entails(a)) return to_string(c);
    }
  }
  return std::nullopt;
}

// Loop-head generalization: r_i becomes fresh variable i, constrained only
// by the invariant.
struct Generalized {
  ConstraintSet constraints;
  SymState state;
};

Generalized generalize(std::span<const RegComparison> invariant,
                       std::size_t head, std::size_t width) {
  std::vector<std::string> names;
  SymState state{head, {}};
  for (std::size_t i = 1; i <= width; ++i) {
    names.push_back("r" + std::to_string(i));
    state.regs.push_back(SymValue::var_plus(i - 1));
  }
  ConstraintSet cs(std::move(names));
  for (const RegComparison& c : invariant) cs.add(substitute(c, state.regs));
  return {std::move(cs), std::move(state)};
}

LinearExpr difference(const SymState& s, RegisterIndex x, RegisterIndex y) {
  return LinearExpr::of(read(s, x)) - LinearExpr::of(read(s, y));
}

// Outcome of the shared prefix phase: either a rejection or success.
std::optional<CertReport> check_prefix(
    const Program& p, const ConstraintSet& params,
    std::span<const SymValue> init, std::size_t head,
    std::span<const RegComparison> invariant, std::size_t bound,
    std::size_t width, std::vector<TrailEntry>& trail) {
  const Closure closure(params);
  Walk w = walk(p, initial_state(init, width), closure, head, 0, bound, trail);
  switch (w.end) {
    case Walk::End::Undecided:
      return reject(RejectReason::UndecidedBranch, trail, w.pc);
    case Walk::End::Halted:
    case Walk::End::Exhausted:
      return reject(RejectReason::PrefixFailed, trail, w.pc);
    case Walk::End::AtHead:
      break;
  }
  if (auto atom = first_unentailed(invariant, w.state.regs, closure)) {
    return reject(RejectReason::InvariantNotEstablished, trail, head,
                  std::move(atom));
  }
  return std::nullopt;
}

// One iteration from the head back to the head, then the invariant again.
std::optional<CertReport> check_iteration(
    const Program& p, const Closure& closure, const SymState& start,
    std::span<const RegComparison> invariant, std::size_t bound,
    std::vector<TrailEntry>& trail, SymState& returned) {
  Walk w = walk(p, start, closure, start.pc, 1, bound, trail);
  switch (w.end) {
    case Walk::End::Undecided:
      return reject(RejectReason::UndecidedBranch, trail, w.pc);
    case Walk::End::Halted:
      return reject(RejectReason::HaltedDuringLoop, trail, w.pc);
    case Walk::End::Exhausted:
      return reject(RejectReason::LoopNotClosed, trail, w.pc);
    case Walk::End::AtHead:
      break;
  }
  if (auto atom = first_unentailed(invariant, w.state.regs, closure)) {
    return reject(RejectReason::InvariantNotPreserved, trail, start.pc,
                  std::move(atom));
  }
  returned = std::move(w.state);
  return std::nullopt;
}

}  // namespace

SymStepResult sym_step(const Program& p, const SymState& s,
                       const ConstraintSet& cs) {
  return sym_step(p, s, Closure(cs));
}

SymStepResult sym_step(const Program& p, const SymState& s,
                       const Closure& closure) {
  if (!p.standard_form()) {
    throw Error(ErrorCode::NotStandardForm,
                "program is not in standard form");
  }
  const std::size_t n = p.size();
  const Instruction& instr = p.at(s.pc);
  const bool last = s.pc == n;

  if (const auto* j = std::get_if<Jump>(&instr)) {
    switch (decide_eq(read(s, j->lhs), read(s, j->rhs), closure)) {
      case Tri::Unknown:
        return SymUndecided{s.pc, j->lhs, j->rhs};
      case Tri::True:
        if (j->target == 0) return SymHalt{s, "jt·l"};
        return SymNext{SymState{j->target, s.regs}, "jt·r"};
      case Tri::False:
        if (last) return SymHalt{s, "jf·l"};
        return SymNext{SymState{s.pc + 1, s.regs}, "jf·r"};
    }
  }

  SymState next{s.pc + 1, s.regs};
  std::string_view rule;
  if (const auto* z = std::get_if<Zero>(&instr)) {
    write(next, z->reg, SymValue::constant(0));
    rule = last ? "z·l" : "z·r";
  } else if (const auto* sc = std::get_if<Succ>(&instr)) {
    SymValue v = read(s, sc->reg);
    ++v.offset;
    write(next, sc->reg, v);
    rule = last ? "s·l" : "s·r";
  } else {
    const auto& t = std::get<Transfer>(instr);
    write(next, t.to, read(s, t.from));
    rule = last ? "t·l" : "t·r";
  }
  if (last) {
    next.pc = s.pc;
    return SymHalt{std::move(next), rule};
  }
  return SymNext{std::move(next), rule};
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::UndecidedBranch: return "UndecidedBranch";
    case RejectReason::HaltedDuringLoop: return "HaltedDuringLoop";
    case RejectReason::LoopNotClosed: return "LoopNotClosed";
    case RejectReason::InvariantNotEstablished: return "InvariantNotEstablished";
    case RejectReason::InvariantNotPreserved: return "InvariantNotPreserved";
    case RejectReason::PrefixFailed: return "PrefixFailed";
    case RejectReason::RankingNotDecreasing: return "RankingNotDecreasing";
    case RejectReason::RankingNotNonnegative: return "RankingNotNonnegative";
    case RejectReason::ExitDoesNotHalt: return "ExitDoesNotHalt";
    case RejectReason::UnsupportedAtom: return "UnsupportedAtom";
  }
  return "Unknown";
}

std::size_t register_width(const Program& p, const Certificate& cert) {
  return std::visit(
      [&](const auto& c) {
        std::size_t w = std::max(p.rho(), c.init.size());
        for (const auto& atom : c.invariant) w = std::max(w, max_reg(atom));
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>,
                                     TerminationCert>) {
          w = std::max({w, c.split.x.value(), c.split.y.value(),
                        c.ranking.x.value(), c.ranking.y.value()});
        }
        return w;
      },
      cert);
}

CertReport check_divergence(const Program& p, const DivergenceCert& cert) {
  validate(p, cert.param_constraints, cert.init, cert.loop_head,
           cert.step_bound);
  const std::size_t width = register_width(p, cert);
  std::vector<TrailEntry> trail;
  try {
    if (auto r = check_prefix(p, cert.param_constraints, cert.init,
                              cert.loop_head, cert.invariant, cert.step_bound,
                              width, trail)) {
      return *r;
    }
    Generalized g = generalize(cert.invariant, cert.loop_head, width);
    SymState returned{};
    if (auto r = check_iteration(p, Closure(g.constraints), g.state,
                                 cert.invariant, cert.step_bound, trail,
                                 returned)) {
      return *r;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedAtom) throw;
    return reject(RejectReason::UnsupportedAtom, trail, std::nullopt,
                  e.what());
  }
  return {std::nullopt, std::move(trail)};
}

CertReport check_termination(const Program& p, const TerminationCert& cert) {
  validate(p, cert.param_constraints, cert.init, cert.loop_head,
           cert.step_bound);
  std::vector<TrailEntry> trail;
  if (cert.split.x == cert.split.y) {
    return reject(RejectReason::UnsupportedAtom, trail, std::nullopt,
                  "split compares r" + std::to_string(cert.split.x.value()) +
                      " with itself");
  }
  const std::size_t width = register_width(p, cert);
  try {
    if (auto r = check_prefix(p, cert.param_constraints, cert.init,
                              cert.loop_head, cert.invariant, cert.step_bound,
                              width, trail)) {
      return *r;
    }

    const Generalized g = generalize(cert.invariant, cert.loop_head, width);
    const LinearExpr split = difference(g.state, cert.split.x, cert.split.y);
    const LinearExpr before =
        difference(g.state, cert.ranking.x, cert.ranking.y);

    // Continue: r_x - r_y >= threshold + 1.
    ConstraintSet continuing = g.constraints;
    continuing.add(atoms_of(split + (-(cert.split.threshold + 1)), Rel::Ge));
    const Closure cont(continuing);
    for (const Atom& a : atoms_of(before, Rel::Ge)) {
      if (!cont.entails(a)) {
        return reject(RejectReason::RankingNotNonnegative, trail,
                      cert.loop_head);
      }
    }
    SymState returned{};
    if (auto r = check_iteration(p, cont, g.state, cert.invariant,
                                 cert.step_bound, trail, returned)) {
      return *r;
    }
    const LinearExpr after =
        difference(returned, cert.ranking.x, cert.ranking.y);
    for (const Atom& a : atoms_of(after - before + 1, Rel::Le)) {
      if (!cont.entails(a)) {
        return reject(RejectReason::RankingNotDecreasing, trail,
                      cert.loop_head);
      }
    }

    // Exit: r_x - r_y <= threshold.
    ConstraintSet exiting = g.constraints;
    exiting.add(atoms_of(split + (-cert.split.threshold), Rel::Le));
    Walk w = walk(p, g.state, Closure(exiting), 0, 0, cert.step_bound, trail);
    switch (w.end) {
      case Walk::End::Undecided:
        return reject(RejectReason::UndecidedBranch, trail, w.pc);
      case Walk::End::Exhausted:
        return reject(RejectReason::ExitDoesNotHalt, trail, w.pc);
      case Walk::End::Halted:
      case Walk::End::AtHead:
        break;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedAtom) throw;
    return reject(RejectReason::UnsupportedAtom, trail, std::nullopt,
                  e.what());
  }
  return {std::nullopt, std::move(trail)};
}

CertReport check(const Program& p, const Certificate& cert) {
  return std::visit(
      [&](const auto& c) -> CertReport {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>,
                                     DivergenceCert>) {
          return check_divergence(p, c);
        } else {
          return check_termination(p, c);
        }
      },
      cert);
}

std::string format_trail(const std::vector<TrailEntry>& trail) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trail.size(); ++i) {
    if (i > 0) out << ' ';
    out << trail[i].pc << '(' << trail[i].rule << ')';
  }
  return out.str();
}

Config instantiate(std::span<const SymValue> init,
                   std::span<const Natural> assignment) {
  Config c;
  for (std::size_t i = 0; i < init.size(); ++i) {
    const SymValue& v = init[i];
    const Natural value = (v.var ? assignment[*v.var] : 0) + v.offset;
    c = c.with(RegisterIndex(i + 1), value);
  }
  return c;
}

}  // namespace urm
