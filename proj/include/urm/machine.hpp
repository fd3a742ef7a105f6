// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

// URM syntax and configurations.
//
// A program is a non-empty sequence of Zero/Succ/Transfer/Jump
// instructions addressed 1..n. Jump targets are instruction positions
// where 0 means "halt". Configurations come in two flavours: Config is a
// total valuation of all registers with finite support (every register
// not stored holds 0), FiniteConfig is a fixed-length list r_1..r_m that
// is only meaningful together with a program that stays inside it.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace urm {

using Natural = std::uint64_t;

/// 1-based register name.
class RegisterIndex {
 public:
  explicit RegisterIndex(std::size_t value);

  std::size_t value() const noexcept { return value_; }

  friend auto operator<=>(const RegisterIndex&, const RegisterIndex&) = default;

 private:
  std::size_t value_;
};

struct Zero {
  RegisterIndex reg;
  friend bool operator==(const Zero&, const Zero&) = default;
};

struct Succ {
  RegisterIndex reg;
  friend bool operator==(const Succ&, const Succ&) = default;
};

/// r_from -> R_to.
struct Transfer {
  RegisterIndex from;
  RegisterIndex to;
  friend bool operator==(const Transfer&, const Transfer&) = default;
};

/// If r_lhs = r_rhs continue at `target` (0 halts), else fall through.
struct Jump {
  RegisterIndex lhs;
  RegisterIndex rhs;
  std::size_t target;
  friend bool operator==(const Jump&, const Jump&) = default;
};

using Instruction = std::variant<Zero, Succ, Transfer, Jump>;

bool is_jump(const Instruction& instr);

/// Largest register index mentioned by the instruction.
std::size_t max_register(const Instruction& instr);

std::string to_string(const Instruction& instr);

/// Immutable, non-empty instruction sequence. Copies share storage.
class Program {
 public:
  explicit Program(std::vector<Instruction> instructions);
  Program(std::initializer_list<Instruction> instructions);

  std::size_t size() const noexcept { return data_->instructions.size(); }

  /// 1-based access; throws PcOutOfRange outside [1..size()].
  const Instruction& at(std::size_t position) const;

  std::span<const Instruction> instructions() const noexcept {
    return data_->instructions;
  }

  bool standard_form() const noexcept { return data_->standard_form; }
  std::size_t rho() const noexcept { return data_->rho; }

  friend bool operator==(const Program& a, const Program& b) {
    return a.data_ == b.data_ || a.data_->instructions == b.data_->instructions;
  }

 private:
  struct Data {
    std::vector<Instruction> instructions;
    bool standard_form = true;
    std::size_t rho = 0;
  };
  std::shared_ptr<const Data> data_;
};

/// Total register valuation with finite support. Zero is never stored, so
/// two configs are equal exactly when they agree on every register.
class Config {
 public:
  Config() = default;
  Config(std::initializer_list<std::pair<const std::size_t, Natural>> entries);

  Natural get(RegisterIndex reg) const;
  Natural get(std::size_t reg) const { return get(RegisterIndex(reg)); }

  /// Returns a copy with register `reg` set to `value`.
  Config with(RegisterIndex reg, Natural value) const;

  const std::map<std::size_t, Natural>& entries() const noexcept {
    return entries_;
  }

  /// Highest register holding a non-zero value, 0 when all are zero.
  std::size_t support_max() const noexcept;

  friend bool operator==(const Config&, const Config&) = default;

 private:
  void set(std::size_t reg, Natural value);

  std::map<std::size_t, Natural> entries_;
};

/// Register list r_1..r_m, m >= 1.
class FiniteConfig {
 public:
  explicit FiniteConfig(std::vector<Natural> values);
  FiniteConfig(std::initializer_list<Natural> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Natural> values() const noexcept { return values_; }

  /// 1-based; throws InvalidArgument outside [1..size()].
  Natural operator[](std::size_t position) const;

  friend bool operator==(const FiniteConfig&, const FiniteConfig&) = default;

 private:
  std::vector<Natural> values_;
};

std::size_t rho(const Program& p);
bool is_standard_form(const Program& p);
bool compatible(const FiniteConfig& sigma, const Program& p);

Natural get(const Config& c, RegisterIndex i);
Config zr(const Config& c, RegisterIndex i);
Config sc(const Config& c, RegisterIndex i);
Config mv(const Config& c, RegisterIndex from, RegisterIndex to);

Config include(const FiniteConfig& sigma);
FiniteConfig restrict(const Config& c, const Program& p);

/// Comma-separated r_1..r_width, e.g. "2,5,2".
std::string format_registers(const Config& c, std::size_t width);
std::string format_registers(const FiniteConfig& sigma);

}  // namespace urm
