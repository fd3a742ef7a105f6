// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "programs.hpp"
#include "urm/error.hpp"
#include "urm/machine.hpp"

using namespace urm;
using namespace urm::testing;

TEST_SUITE("machine") {
  TEST_CASE("register indices are positive") {
    CHECK_THROWS_AS(RegisterIndex(0), Error);
    CHECK(RegisterIndex(1).value() == 1);
  }

  TEST_CASE("empty program is rejected") {
    CHECK_THROWS_AS(Program(std::vector<Instruction>{}), Error);
  }

  TEST_CASE("rho") {
    CHECK(rho(minus_program()) == 3);
    CHECK(rho(Program{Zero{r(1)}}) == 1);
    CHECK(rho(b_program()) == 2);
    // Jump targets are instruction numbers, not registers.
    CHECK(rho(Program{Jump{r(1), r(1), 7}}) == 1);
  }

  TEST_CASE("standard form") {
    CHECK(is_standard_form(minus_program()));
    CHECK(is_standard_form(b_program()));
    CHECK_FALSE(is_standard_form(Program{Jump{r(1), r(1), 3}}));
    CHECK(is_standard_form(Program{Jump{r(1), r(1), 0}}));
    CHECK(is_standard_form(Program{Jump{r(1), r(1), 1}}));
  }

  TEST_CASE("compatibility") {
    CHECK(compatible(FiniteConfig{0, 1}, b_program()));
    CHECK_FALSE(compatible(FiniteConfig{0}, b_program()));
    CHECK_FALSE(compatible(FiniteConfig{1, 2, 3}, Program{Jump{r(1), r(1), 3}}));
    CHECK(compatible(FiniteConfig{1, 2, 3}, b_program()));
  }

  TEST_CASE("get defaults to zero") {
    const Config c{{1, 3}};
    CHECK(get(c, r(1)) == 3);
    CHECK(get(c, r(2)) == 0);
    CHECK(get(Config{}, r(7)) == 0);
  }

  TEST_CASE("zr") {
    CHECK(zr(Config{{1, 3}, {2, 5}}, r(1)) == Config{{2, 5}});
    CHECK(zr(Config{}, r(4)) == Config{});
    CHECK(zr(Config{{2, 1}}, r(2)) == Config{});
  }

  TEST_CASE("sc") {
    CHECK(sc(Config{{1, 3}}, r(1)) == Config{{1, 4}});
    CHECK(sc(Config{}, r(2)) == Config{{2, 1}});
    CHECK(sc(Config{{1, 0}}, r(1)) == Config{{1, 1}});
    CHECK(Config{{1, 0}}.entries().empty());
  }

  TEST_CASE("mv") {
    CHECK(mv(Config{{3, 2}}, r(3), r(1)) == Config{{3, 2}, {1, 2}});
    CHECK(mv(Config{{1, 5}}, r(2), r(1)) == Config{});
    CHECK(mv(Config{{1, 5}}, r(1), r(1)) == Config{{1, 5}});
  }

  TEST_CASE("include") {
    CHECK(include(FiniteConfig{3, 4}) == Config{{1, 3}, {2, 4}});
    CHECK(include(FiniteConfig{0, 0}) == Config{});
    CHECK(include(FiniteConfig{0, 1}) == Config{{2, 1}});
  }

  TEST_CASE("restrict") {
    CHECK(restrict(Config{{1, 2}, {2, 5}, {3, 2}, {9, 7}}, minus_program()) ==
          FiniteConfig{2, 5, 2});
    CHECK(restrict(Config{}, b_program()) == FiniteConfig{0, 0});
    CHECK(restrict(include(FiniteConfig{3, 4, 5, 6}), minus_program()) ==
          FiniteConfig{3, 4, 5});
  }

  TEST_CASE("finite config is non-empty and 1-based") {
    CHECK_THROWS_AS(FiniteConfig(std::vector<Natural>{}), Error);
    const FiniteConfig s{4, 5};
    CHECK(s[1] == 4);
    CHECK(s[2] == 5);
    CHECK_THROWS_AS(s[0], Error);
    CHECK_THROWS_AS(s[3], Error);
  }

  TEST_CASE("property: restrict after include agrees with sigma") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<Natural> value(0, 4);
    for (int trial = 0; trial < 300; ++trial) {
      const Program p = oracle::random_program(rng, 5, 4);
      std::vector<Natural> values(rho(p) + trial % 3);
      for (auto& v : values) v = value(rng);
      const FiniteConfig sigma(values);
      REQUIRE(compatible(sigma, p) == is_standard_form(p));
      const FiniteConfig back = restrict(include(sigma), p);
      REQUIRE(back.size() == rho(p));
      for (std::size_t i = 1; i <= rho(p); ++i) {
        CHECK(back[i] == (i <= sigma.size() ? sigma[i] : 0));
      }
      CHECK(rho(p) >= 1);
    }
  }

  TEST_CASE("property: updates are pointwise and canonical") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> reg(1, 6);
    std::uniform_int_distribution<int> op(0, 2);
    Config c;
    for (int i = 0; i < 2000; ++i) {
      const RegisterIndex a(reg(rng));
      const RegisterIndex b(reg(rng));
      Config next;
      std::size_t changed = 0;
      switch (op(rng)) {
        case 0:
          next = zr(c, a);
          changed = a.value();
          CHECK(get(next, a) == 0);
          CHECK(get(sc(next, a), a) == 1);
          break;
        case 1:
          next = sc(c, a);
          changed = a.value();
          CHECK(get(next, a) == get(c, a) + 1);
          CHECK(get(zr(next, a), a) == 0);
          break;
        default:
          next = mv(c, a, b);
          changed = b.value();
          CHECK(get(next, b) == get(c, a));
          break;
      }
      for (std::size_t j = 1; j <= 7; ++j) {
        if (j != changed) CHECK(get(next, r(j)) == get(c, r(j)));
      }
      for (const auto& [k, v] : next.entries()) CHECK(v != 0);
      c = next;
    }
  }
}
