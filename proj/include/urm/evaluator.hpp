// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// Concrete execution. `step` applies exactly one evaluation rule; `run`
// iterates it from instruction 1 under a fuel budget. Divergence is never
// asserted here: an exhausted budget is reported as OutOfFuel. The only
// positive divergence verdict comes from `decide_abstract`, which is
// exact for jump-only programs because Jump never alters the registers.

#pragma once

#include <cstddef>
#include <iterator>
#include <optional>
#include <string_view>
#include <variant>

#include "urm/machine.hpp"

namespace urm {

struct MachineState {
  Program program;
  std::size_t pc;
  Config config;

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

struct HaltedStep {
  Config config;
};

using StepResult = std::variant<MachineState, HaltedStep>;

/// Name of the rule that `step` applies at `s`, e.g. "jf·r" or "s·l".
std::string_view rule_name(const MachineState& s);

StepResult step(const MachineState& s);

struct Halted {
  Config final;
  std::size_t steps;
};

struct OutOfFuel {
  MachineState last;
  std::size_t steps;
};

using Outcome = std::variant<Halted, OutOfFuel>;

Outcome run(const Program& p, const Config& c, std::size_t fuel);

/// Lazily produced sequence of running states starting at (p, 1, c). Each
/// increment performs one step; the sequence ends when the machine halts.
class Trace {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = MachineState;
    using difference_type = std::ptrdiff_t;
    using pointer = const MachineState*;
    using reference = const MachineState&;

    iterator() = default;

    reference operator*() const { return *current_; }
    pointer operator->() const { return &*current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }

    /// Final configuration once the trace has ended.
    const std::optional<Config>& halted() const noexcept { return halted_; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return !it.current_.has_value();
    }

   private:
    friend class Trace;
    explicit iterator(MachineState start) : current_(std::move(start)) {}

    std::optional<MachineState> current_;
    std::optional<Config> halted_;
  };

  Trace(const Program& p, const Config& c);

  iterator begin() const { return iterator(start_); }
  std::default_sentinel_t end() const noexcept { return {}; }

 private:
  MachineState start_;
};

Trace trace(const Program& p, const Config& c);

struct FiniteHalted {
  FiniteConfig final;
  std::size_t steps;
};

struct FiniteOutOfFuel {
  std::size_t pc;
  FiniteConfig last;
  std::size_t steps;
};

using FiniteOutcome = std::variant<FiniteHalted, FiniteOutOfFuel>;

/// Same rules as `run`, executed on the list configuration itself.
FiniteOutcome run_finite(const Program& p, const FiniteConfig& sigma,
                         std::size_t fuel);

struct Converges {
  std::size_t steps;
  friend bool operator==(const Converges&, const Converges&) = default;
};

struct Diverges {
  std::size_t cycle_entry_pc;
  std::size_t cycle_length;
  friend bool operator==(const Diverges&, const Diverges&) = default;
};

using AbstractVerdict = std::variant<Converges, Diverges>;

AbstractVerdict decide_abstract(const Program& p, const Config& c);

}  // namespace urm
