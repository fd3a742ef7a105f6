// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "programs.hpp"
#include "urm/error.hpp"
#include "urm/text_io.hpp"

using namespace urm;
using namespace urm::testing;

namespace {

std::size_t error_line(std::string_view text, Certificate (*parse)(std::string_view)) {
  try {
    parse(text);
  } catch (const SourceError& e) {
    return e.line();
  }
  return 0;
}

constexpr std::string_view kMinusDiv =
    "kind: diverges\n"
    "params: m n z\n"
    "constraint: m < n\n"
    "init: m, n, z\n"
    "head: 1\n"
    "invariant: r1 < r2\n"
    "bound: 8\n";

}  // namespace

TEST_SUITE("text-io") {
  TEST_CASE("parse programs") {
    CHECK(parse_program("J 1 2 5\nS 2\nS 3\nJ 1 1 1\nT 3 1\n") == minus_program());
    CHECK(parse_program("# header\n\n  J 1 2 2   # first\nJ 1 2 2") == b_program());
    // Jumps past the end parse; standard form is a separate question.
    CHECK_FALSE(is_standard_form(parse_program("J 1 1 9")));
  }

  TEST_CASE("program errors carry a position") {
    try {
      parse_program("Z 0");
      FAIL("expected SourceError");
    } catch (const SourceError& e) {
      CHECK(e.line() == 1);
      CHECK(e.code() == ErrorCode::Source);
    }
    for (std::string_view bad : {"S 1\nQ 2", "S 1\nT 1", "S 1\nJ 1 2", "S 1\nS x",
                                 "S 1\nZ 1 2"}) {
      try {
        parse_program(bad);
        FAIL("expected SourceError for " << bad);
      } catch (const SourceError& e) {
        CHECK(e.line() == 2);
      }
    }
    CHECK_THROWS_AS(parse_program("# nothing\n"), SourceError);
  }

  TEST_CASE("print programs") {
    CHECK(print_program(b_program()) == "J 1 2 2\nJ 1 2 2");
    CHECK(print_program(minus_program()) == "J 1 2 5\nS 2\nS 3\nJ 1 1 1\nT 3 1");
  }

  TEST_CASE("property: print then parse is the identity") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
      const Program p = oracle::random_program(rng, 8, 6);
      CHECK(parse_program(print_program(p)) == p);
    }
  }

  TEST_CASE("configurations") {
    CHECK(parse_config("0,1") == FiniteConfig{0, 1});
    CHECK(parse_config("5, 3, 0\n") == FiniteConfig{5, 3, 0});
    CHECK(parse_config("# c\n7") == FiniteConfig{7});
    CHECK_THROWS_AS(parse_config(""), SourceError);
    CHECK_THROWS_AS(parse_config("1,"), SourceError);
    CHECK_THROWS_AS(parse_config("1,,2"), SourceError);
    CHECK_THROWS_AS(parse_config("-1"), SourceError);
    CHECK_THROWS_AS(parse_config("99999999999999999999999"), SourceError);
  }

  TEST_CASE("divergence certificate") {
    const Certificate c = parse_cert(kMinusDiv);
    REQUIRE(std::holds_alternative<DivergenceCert>(c));
    const auto& d = std::get<DivergenceCert>(c);
    CHECK(d.param_constraints.names() == std::vector<std::string>{"m", "n", "z"});
    const auto atoms = d.param_constraints.atoms();
    CHECK(std::vector<Atom>(atoms.begin(), atoms.end()) ==
          std::vector<Atom>{Atom{0, 1, Bound::Le, -1}});
    CHECK(d.init.size() == 3);
    CHECK(d.init[1] == SymValue::var_plus(1, 0));
    CHECK(d.loop_head == 1);
    CHECK(d.step_bound == 8);
    REQUIRE(d.invariant.size() == 1);
    CHECK(to_string(d.invariant[0]) == "r1 < r2");
  }

  TEST_CASE("termination certificate") {
    const Certificate c = parse_cert(
        "kind: terminates\nparams: m, n\nconstraint: m >= n + 1\n"
        "init: m + 1, n, 3\nhead: 1\nsplit: r1 - r2 >= 2\n"
        "ranking: r1 - r2\nbound: 8\n");
    REQUIRE(std::holds_alternative<TerminationCert>(c));
    const auto& t = std::get<TerminationCert>(c);
    CHECK(t.init[0] == SymValue::var_plus(0, 1));
    CHECK(t.init[2] == SymValue::constant(3));
    CHECK(t.split.x == r(1));
    CHECK(t.split.y == r(2));
    CHECK(t.split.threshold == 1);
    CHECK(t.ranking.x == r(1));
    CHECK(t.invariant.empty());
  }

  TEST_CASE("certificate errors name the line") {
    const std::string base(kMinusDiv);
    // Missing head.
    std::string no_head = base;
    no_head.erase(no_head.find("head: 1\n"), 8);
    CHECK(error_line(no_head, parse_cert) > 0);

    CHECK(error_line("kind: diverges\nhead 1\n", parse_cert) == 2);
    CHECK(error_line(base + "colour: red\n", parse_cert) == 8);
    CHECK(error_line(base + "head: 2\n", parse_cert) == 8);
    CHECK(error_line(base + "split: r1 - r2 > 0\n", parse_cert) == 8);
    std::string undeclared = base;
    undeclared.replace(undeclared.find("init: m, n, z"), 13, "init: m, q, z");
    CHECK(error_line(undeclared, parse_cert) == 4);
    std::string zero_bound = base;
    zero_bound.replace(zero_bound.find("bound: 8"), 8, "bound: 0");
    CHECK(error_line(zero_bound, parse_cert) == 7);
    std::string bad_kind = base;
    bad_kind.replace(0, 14, "kind: loops");
    CHECK(error_line(bad_kind, parse_cert) == 1);
    std::string nonlinear = base;
    nonlinear.replace(nonlinear.find("m < n"), 5, "m < n < z");
    CHECK(error_line(nonlinear, parse_cert) == 3);
  }

  TEST_CASE("read_file") {
    CHECK_THROWS_AS(read_file("/nonexistent/urm/file"), Error);
    const std::string text = read_file(URM_SAMPLES_DIR "/b.urm");
    CHECK(parse_program(text) == b_program());
  }
}
