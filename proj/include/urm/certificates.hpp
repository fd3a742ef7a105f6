// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// Lasso certificates checked by symbolic execution.
//
// Both certificate kinds share a prefix phase: run symbolically from
// instruction 1 with the initial registers until the loop head, then show
// the invariant holds there. A divergence certificate then forgets
// everything but the invariant (one fresh variable per register), runs one
// iteration of at least one step back to the head and re-proves the
// invariant. A termination certificate splits the head state into a
// "continue" case, where one iteration must return with the invariant and
// a strictly smaller non-negative ranking, and an "exit" case, which must
// halt. Every jump must be decided from the constraints at hand; there is
// no case splitting beyond the continue/exit dichotomy.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "urm/constraints.hpp"
#include "urm/machine.hpp"

namespace urm {

struct SymState {
  std::size_t pc;
  /// regs[i] holds r_{i+1}; registers past the end hold 0.
  std::vector<SymValue> regs;

  friend bool operator==(const SymState&, const SymState&) = default;
};

struct SymNext {
  SymState state;
  std::string_view rule;
};

struct SymHalt {
  SymState state;
  std::string_view rule;
};

struct SymUndecided {
  std::size_t pc;
  RegisterIndex lhs;
  RegisterIndex rhs;
};

using SymStepResult = std::variant<SymNext, SymHalt, SymUndecided>;

SymStepResult sym_step(const Program& p, const SymState& s,
                       const ConstraintSet& cs);
SymStepResult sym_step(const Program& p, const SymState& s,
                       const Closure& closure);

struct DivergenceCert {
  ConstraintSet param_constraints;
  std::vector<SymValue> init;
  std::size_t loop_head = 1;
  std::vector<RegComparison> invariant;
  std::size_t step_bound = 1;
};

/// Continue while r_x - r_y >= threshold + 1; exit when r_x - r_y <= threshold.
struct Split {
  RegisterIndex x;
  RegisterIndex y;
  std::int64_t threshold;
};

/// Measure r_x - r_y.
struct Ranking {
  RegisterIndex x;
  RegisterIndex y;
};

struct TerminationCert {
  ConstraintSet param_constraints;
  std::vector<SymValue> init;
  std::size_t loop_head = 1;
  std::vector<RegComparison> invariant;
  Split split;
  Ranking ranking;
  std::size_t step_bound = 1;
};

using Certificate = std::variant<DivergenceCert, TerminationCert>;

enum class RejectReason {
  UndecidedBranch,
  HaltedDuringLoop,
  LoopNotClosed,
  InvariantNotEstablished,
  InvariantNotPreserved,
  PrefixFailed,
  RankingNotDecreasing,
  RankingNotNonnegative,
  ExitDoesNotHalt,
  UnsupportedAtom,
};

std::string_view to_string(RejectReason reason);

struct Rejection {
  RejectReason reason;
  std::optional<std::size_t> pc;
  std::optional<std::string> atom;
};

struct TrailEntry {
  std::size_t pc;
  std::string_view rule;

  friend bool operator==(const TrailEntry&, const TrailEntry&) = default;
};

struct CertReport {
  /// Empty when accepted.
  std::optional<Rejection> rejection;
  std::vector<TrailEntry> witness_trail;

  bool accepted() const noexcept { return !rejection.has_value(); }
};

CertReport check_divergence(const Program& p, const DivergenceCert& cert);
CertReport check_termination(const Program& p, const TerminationCert& cert);
CertReport check(const Program& p, const Certificate& cert);

/// "1(jf·r) 2(s·r) ..."
std::string format_trail(const std::vector<TrailEntry>& trail);

/// Number of symbolic registers a check over `p` tracks for `cert`.
std::size_t register_width(const Program& p, const Certificate& cert);

/// Concrete initial configuration for a parameter assignment.
Config instantiate(std::span<const SymValue> init,
                   std::span<const Natural> assignment);

}  // namespace urm
