// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/evaluator.hpp"

#include <vector>

#include "urm/error.hpp"

namespace urm {
namespace {

void require_standard_form(const Program& p) {
  if (!p.standard_form()) {
    throw Error(ErrorCode::NotStandardForm,
                "program is not in standard form (a jump target exceeds " +
                    std::to_string(p.size()) + ")");
  }
}

void require_running(const MachineState& s) {
  if (s.pc == 0 || s.pc > s.program.size()) {
    throw Error(ErrorCode::PcOutOfRange,
                "pc " + std::to_string(s.pc) + " outside [1.." +
                    std::to_string(s.program.size()) + "]");
  }
}

}  // namespace

std::string_view rule_name(const MachineState& s) {
  require_running(s);
  const bool last = s.pc == s.program.size();
  const Instruction& instr = s.program.at(s.pc);
  if (const auto* j = std::get_if<Jump>(&instr)) {
    if (s.config.get(j->lhs) == s.config.get(j->rhs)) {
      return j->target == 0 ? "jt·l" : "jt·r";
    }
    return last ? "jf·l" : "jf·r";
  }
  if (std::holds_alternative<Zero>(instr)) return last ? "z·l" : "z·r";
  if (std::holds_alternative<Succ>(instr)) return last ? "s·l" : "s·r";
  return last ? "t·l" : "t·r";
}

StepResult step(const MachineState& s) {
  require_standard_form(s.program);
  require_running(s);
  const std::size_t n = s.program.size();
  const Instruction& instr = s.program.at(s.pc);

  if (const auto* j = std::get_if<Jump>(&instr)) {
    if (s.config.get(j->lhs) == s.config.get(j->rhs)) {
      if (j->target == 0) return HaltedStep{s.config};
      return MachineState{s.program, j->target, s.config};
    }
    if (s.pc == n) return HaltedStep{s.config};
    return MachineState{s.program, s.pc + 1, s.config};
  }

  Config next = std::visit(
      [&](const auto& op) -> Config {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return zr(s.config, op.reg);
        } else if constexpr (std::is_same_v<T, Succ>) {
          return sc(s.config, op.reg);
        } else if constexpr (std::is_same_v<T, Transfer>) {
          return mv(s.config, op.from, op.to);
        } else {
          return s.config;
        }
      },
      instr);
  if (s.pc == n) return HaltedStep{std::move(next)};
  return MachineState{s.program, s.pc + 1, std::move(next)};
}

Outcome run(const Program& p, const Config& c, std::size_t fuel) {
  require_standard_form(p);
  MachineState state{p, 1, c};
  for (std::size_t steps = 0; steps < fuel; ++steps) {
    StepResult r = step(state);
    if (auto* h = std::get_if<HaltedStep>(&r)) {
      return Halted{std::move(h->config), steps + 1};
    }
    state = std::move(std::get<MachineState>(r));
  }
  return OutOfFuel{std::move(state), fuel};
}

Trace::iterator& Trace::iterator::operator++() {
  StepResult r = step(*current_);
  if (auto* h = std::get_if<HaltedStep>(&r)) {
    halted_ = std::move(h->config);
    current_.reset();
  } else {
    current_ = std::move(std::get<MachineState>(r));
  }
  return *this;
}

Trace::Trace(const Program& p, const Config& c) : start_{p, 1, c} {
  require_standard_form(p);
}

Trace trace(const Program& p, const Config& c) { return Trace(p, c); }

FiniteOutcome run_finite(const Program& p, const FiniteConfig& sigma,
                         std::size_t fuel) {
  require_standard_form(p);
  if (!compatible(sigma, p)) {
    throw Error(ErrorCode::Incompatible,
                "program uses register " + std::to_string(p.rho()) +
                    " but the configuration has length " +
                    std::to_string(sigma.size()));
  }
  std::vector<Natural> regs(sigma.values().begin(), sigma.values().end());
  auto reg = [&regs](RegisterIndex i) -> Natural& {
    return regs.at(i.value() - 1);
  };

  const std::size_t n = p.size();
  std::size_t pc = 1;
  for (std::size_t steps = 0; steps < fuel; ++steps) {
    const Instruction& instr = p.at(pc);
    std::size_t next = pc + 1;
    if (const auto* j = std::get_if<Jump>(&instr)) {
      if (reg(j->lhs) == reg(j->rhs)) next = j->target;
    } else if (const auto* z = std::get_if<Zero>(&instr)) {
      reg(z->reg) = 0;
    } else if (const auto* s = std::get_if<Succ>(&instr)) {
      ++reg(s->reg);
    } else {
      const auto& t = std::get<Transfer>(instr);
      reg(t.to) = reg(t.from);
    }
    if (next == 0 || next > n) {
      return FiniteHalted{FiniteConfig(std::move(regs)), steps + 1};
    }
    pc = next;
  }
  return FiniteOutOfFuel{pc, FiniteConfig(std::move(regs)), fuel};
}

AbstractVerdict decide_abstract(const Program& p, const Config& c) {
  for (const auto& instr : p.instructions()) {
    if (!is_jump(instr)) {
      throw Error(ErrorCode::NotAbstractProgram,
                  "not an abstract program: '" + to_string(instr) +
                      "' is not a jump");
    }
  }
  require_standard_form(p);

  // Registers never change, so the run is determined by the pc alone and
  // must either halt or revisit a pc within n steps.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> first_visit(p.size() + 1, kUnvisited);
  MachineState state{p, 1, c};
  for (std::size_t t = 0;; ++t) {
    if (first_visit[state.pc] != kUnvisited) {
      return Diverges{state.pc, t - first_visit[state.pc]};
    }
    first_visit[state.pc] = t;
    StepResult r = step(state);
    if (std::holds_alternative<HaltedStep>(r)) return Converges{t + 1};
    state.pc = std::get<MachineState>(r).pc;
  }
}

}  // namespace urm
