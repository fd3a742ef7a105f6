// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "programs.hpp"
#include "urm/error.hpp"
#include "urm/evaluator.hpp"

using namespace urm;
using namespace urm::testing;

namespace {

MachineState next_state(const StepResult& r) {
  REQUIRE(std::holds_alternative<MachineState>(r));
  return std::get<MachineState>(r);
}

// Every jump-only standard-form program of length 1..max_len with operands
// in {1,2}.
std::vector<Program> all_abstract_programs(std::size_t max_len,
                                           std::size_t max_target_cap) {
  std::vector<Program> out;
  for (std::size_t n = 1; n <= max_len; ++n) {
    const std::size_t targets = std::min(n, max_target_cap) + 1;
    const std::size_t per_instr = 2 * 2 * targets;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= per_instr;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Instruction> instrs;
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = c % per_instr;
        c /= per_instr;
        instrs.push_back(Jump{r(1 + d % 2), r(1 + (d / 2) % 2), d / 4});
      }
      out.emplace_back(std::move(instrs));
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("evaluator") {
  TEST_CASE("step follows the jump rules") {
    const Program b = b_program();
    // r1 = 0 != 1 = r2 falls through.
    const MachineState s1 = next_state(step({b, 1, Config{{2, 1}}}));
    CHECK(s1.pc == 2);
    CHECK(s1.config == Config{{2, 1}});
    // r1 = r2 = 0 jumps back to 2.
    const MachineState s2 = next_state(step({b, 2, Config{}}));
    CHECK(s2.pc == 2);
    CHECK(s2.config == Config{});
    // Jump to 0 halts when taken.
    const Program halt{Jump{r(1), r(1), 0}, Succ{r(1)}};
    CHECK(std::holds_alternative<HaltedStep>(step({halt, 1, Config{}})));
  }

  TEST_CASE("step halts after the last transfer") {
    const Config before{{1, 5}, {2, 5}, {3, 2}};
    const StepResult r = step({minus_program(), 5, before});
    REQUIRE(std::holds_alternative<HaltedStep>(r));
    const Config expected{{1, 2}, {2, 5}, {3, 2}};
    CHECK(std::get<HaltedStep>(r).config == expected);
    // The array interpreter agrees on the whole run from (5,3,0).
    const auto ref = oracle::reference_run(minus_program(), {5, 3, 0}, 1000);
    REQUIRE(ref.halted);
    CHECK(include(FiniteConfig(ref.regs)) == expected);
  }

  TEST_CASE("step rejects bad input") {
    CHECK_THROWS_AS(step({Program{Jump{r(1), r(1), 4}}, 1, Config{}}), Error);
    CHECK_THROWS_AS(step({b_program(), 0, Config{}}), Error);
    CHECK_THROWS_AS(step({b_program(), 3, Config{}}), Error);
  }

  TEST_CASE("rule names") {
    CHECK(rule_name({b_program(), 1, Config{{2, 1}}}) == "jf·r");
    CHECK(rule_name({b_program(), 2, Config{{2, 1}}}) == "jf·l");
    CHECK(rule_name({b_program(), 1, Config{}}) == "jt·r");
    CHECK(rule_name({minus_program(), 2, Config{}}) == "s·r");
    CHECK(rule_name({minus_program(), 5, Config{}}) == "t·l");
  }

  TEST_CASE("run") {
    {
      const Outcome o = run(b_program(), include(FiniteConfig{0, 1}), 10);
      REQUIRE(std::holds_alternative<Halted>(o));
      CHECK(std::get<Halted>(o).steps == 2);
      CHECK(std::get<Halted>(o).final == Config{{2, 1}});
    }
    {
      const Outcome o = run(minus_program(), include(FiniteConfig{5, 3, 0}), 1000);
      REQUIRE(std::holds_alternative<Halted>(o));
      CHECK(std::get<Halted>(o).final == Config{{1, 2}, {2, 5}, {3, 2}});
      // Two loop iterations of four steps, the taken jump and the transfer.
      CHECK(std::get<Halted>(o).steps == 10);
    }
    {
      const Outcome o = run(v_program(), include(FiniteConfig{0, 1, 1}), 100000);
      REQUIRE(std::holds_alternative<OutOfFuel>(o));
      CHECK(std::get<OutOfFuel>(o).steps == 100000);
    }
    {
      const Outcome o = run(b_program(), Config{}, 0);
      REQUIRE(std::holds_alternative<OutOfFuel>(o));
      CHECK(std::get<OutOfFuel>(o).last.pc == 1);
    }
    CHECK_THROWS_AS(run(Program{Jump{r(1), r(1), 2}}, Config{}, 5), Error);
  }

  TEST_CASE("trace is lazy and ends on halt") {
    {
      std::size_t count = 0;
      for (const auto& s : trace(b_program(), include(FiniteConfig{0, 1}))) {
        CHECK(s.pc == count + 1);
        ++count;
      }
      CHECK(count == 2);
    }
    {
      const auto ref = oracle::reference_run(v_program(), {0, 1, 1}, 4);
      std::vector<std::size_t> pcs;
      for (const auto& s : trace(v_program(), include(FiniteConfig{0, 1, 1}))) {
        pcs.push_back(s.pc);
        if (pcs.size() == 4) break;  // V never halts here
      }
      CHECK(pcs == std::vector<std::size_t>{1, 2, 1, 2});
      CHECK(pcs == ref.pcs);
    }
    {
      auto t = trace(Program{Zero{r(1)}}, Config{});
      auto it = t.begin();
      REQUIRE(it != t.end());
      ++it;
      CHECK(it == t.end());
      CHECK(it.halted() == Config{});
    }
    CHECK_THROWS_AS(trace(Program{Jump{r(1), r(1), 2}}, Config{}), Error);
  }

  TEST_CASE("run_finite") {
    {
      const FiniteOutcome o = run_finite(b_program(), FiniteConfig{0, 1}, 10);
      REQUIRE(std::holds_alternative<FiniteHalted>(o));
      CHECK(std::get<FiniteHalted>(o).final == FiniteConfig{0, 1});
      CHECK(std::get<FiniteHalted>(o).steps == 2);
    }
    {
      const FiniteOutcome o =
          run_finite(minus_program(), FiniteConfig{5, 3, 0}, 1000);
      REQUIRE(std::holds_alternative<FiniteHalted>(o));
      CHECK(std::get<FiniteHalted>(o).final == FiniteConfig{2, 5, 2});
    }
    try {
      run_finite(b_program(), FiniteConfig{0}, 10);
      FAIL("expected Incompatible");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Incompatible);
    }
    try {
      run_finite(Program{Jump{r(1), r(1), 2}}, FiniteConfig{0}, 10);
      FAIL("expected NotStandardForm");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotStandardForm);
    }
  }

  TEST_CASE("decide_abstract") {
    CHECK(decide_abstract(b_program(), include(FiniteConfig{0, 1})) ==
          AbstractVerdict{Converges{2}});
    CHECK(decide_abstract(b_program(), include(FiniteConfig{0, 0})) ==
          AbstractVerdict{Diverges{2, 1}});
    CHECK(decide_abstract(Program{Jump{r(1), r(1), 1}}, Config{}) ==
          AbstractVerdict{Diverges{1, 1}});
    try {
      decide_abstract(minus_program(), Config{});
      FAIL("expected NotAbstractProgram");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAbstractProgram);
    }
    try {
      decide_abstract(Program{Jump{r(1), r(1), 2}}, Config{});
      FAIL("expected NotStandardForm");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotStandardForm);
    }
  }

  TEST_CASE("property: decide_abstract matches bounded execution") {
    std::size_t checked = 0;
    for (const Program& p : all_abstract_programs(3, 3)) {
      oracle::for_each_assignment(2, 1, [&](const std::vector<Natural>& v) {
        const Config c = include(FiniteConfig(v));
        const AbstractVerdict verdict = decide_abstract(p, c);
        const auto ref = oracle::reference_run(p, v, p.size() + 1);
        if (const auto* conv = std::get_if<Converges>(&verdict)) {
          CHECK(ref.halted);
          CHECK(conv->steps == ref.steps);
        } else {
          CHECK_FALSE(ref.halted);
          const auto& d = std::get<Diverges>(verdict);
          CHECK(d.cycle_length >= 1);
          // Stepping cycle_length times from the entry returns to it.
          std::size_t pc = d.cycle_entry_pc;
          for (std::size_t i = 0; i < d.cycle_length; ++i) {
            pc = std::get<MachineState>(step({p, pc, c})).pc;
          }
          CHECK(pc == d.cycle_entry_pc);
        }
        ++checked;
      });
    }
    CHECK(checked > 1000);
  }

  TEST_CASE("property: run agrees with the reference interpreter") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<Natural> value(0, 3);
    for (int trial = 0; trial < 500; ++trial) {
      const Program p = oracle::random_program(rng, 6, 4);
      std::vector<Natural> v(rho(p));
      for (auto& x : v) x = value(rng);
      const auto ref = oracle::reference_run(p, v, 300);
      const Outcome o = run(p, include(FiniteConfig(v)), 300);
      REQUIRE(std::holds_alternative<Halted>(o) == ref.halted);
      if (ref.halted) {
        CHECK(std::get<Halted>(o).steps == ref.steps);
        CHECK(std::get<Halted>(o).final == include(FiniteConfig(ref.regs)));
      }
    }
  }

  TEST_CASE("property: fuel monotonicity, jump purity and frame") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<Natural> value(0, 3);
    for (int trial = 0; trial < 300; ++trial) {
      const Program p = oracle::random_program(rng, 5, 3);
      // A register beyond rho carries a value the run must not touch.
      Config c{{rho(p) + 2, 9}};
      for (std::size_t i = 1; i <= rho(p); ++i) c = c.with(r(i), value(rng));

      const Outcome small = run(p, c, 20);
      const Outcome large = run(p, c, 200);
      if (const auto* h = std::get_if<Halted>(&small)) {
        REQUIRE(std::holds_alternative<Halted>(large));
        CHECK(std::get<Halted>(large).steps == h->steps);
        CHECK(std::get<Halted>(large).final == h->final);
      }

      std::size_t steps = 0;
      for (const auto& s : trace(p, c)) {
        if (++steps > 50) break;
        CHECK(s.config.get(rho(p) + 2) == 9);
        CHECK(s.config.support_max() <= rho(p) + 2);
        const StepResult next = step(s);
        if (is_jump(p.at(s.pc))) {
          const Config& after = std::holds_alternative<MachineState>(next)
                                    ? std::get<MachineState>(next).config
                                    : std::get<HaltedStep>(next).config;
          CHECK(after == s.config);
        }
      }
    }
  }

  TEST_CASE("property: trace agrees with iterated step") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      const Program p = oracle::random_program(rng, 5, 3);
      MachineState expected{p, 1, Config{{1, 1}}};
      bool running = true;
      std::size_t count = 0;
      for (const auto& s : trace(p, expected.config)) {
        REQUIRE(running);
        CHECK(s == expected);
        const StepResult next = step(s);
        if (std::holds_alternative<MachineState>(next)) {
          expected = std::get<MachineState>(next);
        } else {
          running = false;
        }
        if (++count == 40) break;
      }
    }
  }
}
