// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/machine.hpp"

#include <algorithm>
#include <sstream>

#include "urm/error.hpp"

namespace urm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotStandardForm: return "NotStandardForm";
    case ErrorCode::PcOutOfRange: return "PcOutOfRange";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::NotAbstractProgram: return "NotAbstractProgram";
    case ErrorCode::UnsupportedAtom: return "UnsupportedAtom";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::Source: return "SourceError";
  }
  return "Unknown";
}

SourceError::SourceError(std::size_t line, std::size_t column,
                         std::string message)
    : Error(ErrorCode::Source,
            std::to_string(line) + ":" + std::to_string(column) + ": " +
                message),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

RegisterIndex::RegisterIndex(std::size_t value) : value_(value) {
  if (value == 0) {
    throw Error(ErrorCode::InvalidArgument, "register index must be >= 1");
  }
}

bool is_jump(const Instruction& instr) {
  return std::holds_alternative<Jump>(instr);
}

std::size_t max_register(const Instruction& instr) {
  struct Visitor {
    std::size_t operator()(const Zero& z) const { return z.reg.value(); }
    std::size_t operator()(const Succ& s) const { return s.reg.value(); }
    std::size_t operator()(const Transfer& t) const {
      return std::max(t.from.value(), t.to.value());
    }
    // The target indexes instructions, not registers.
    std::size_t operator()(const Jump& j) const {
      return std::max(j.lhs.value(), j.rhs.value());
    }
  };
  return std::visit(Visitor{}, instr);
}

std::string to_string(const Instruction& instr) {
  struct Visitor {
    std::string operator()(const Zero& z) const {
      return "Z " + std::to_string(z.reg.value());
    }
    std::string operator()(const Succ& s) const {
      return "S " + std::to_string(s.reg.value());
    }
    std::string operator()(const Transfer& t) const {
      return "T " + std::to_string(t.from.value()) + " " +
             std::to_string(t.to.value());
    }
    std::string operator()(const Jump& j) const {
      return "J " + std::to_string(j.lhs.value()) + " " +
             std::to_string(j.rhs.value()) + " " + std::to_string(j.target);
    }
  };
  return std::visit(Visitor{}, instr);
}

Program::Program(std::vector<Instruction> instructions) {
  if (instructions.empty()) {
    throw Error(ErrorCode::InvalidArgument, "program must not be empty");
  }
  auto data = std::make_shared<Data>();
  const std::size_t n = instructions.size();
  for (const auto& instr : instructions) {
    data->rho = std::max(data->rho, max_register(instr));
    if (const auto* j = std::get_if<Jump>(&instr); j && j->target > n) {
      data->standard_form = false;
    }
  }
  data->instructions = std::move(instructions);
  data_ = std::move(data);
}

Program::Program(std::initializer_list<Instruction> instructions)
    : Program(std::vector<Instruction>(instructions)) {}

const Instruction& Program::at(std::size_t position) const {
  if (position == 0 || position > size()) {
    throw Error(ErrorCode::PcOutOfRange,
                "instruction " + std::to_string(position) +
                    " outside [1.." + std::to_string(size()) + "]");
  }
  return data_->instructions[position - 1];
}

Config::Config(
    std::initializer_list<std::pair<const std::size_t, Natural>> entries) {
  for (const auto& [reg, value] : entries) {
    set(RegisterIndex(reg).value(), value);
  }
}

Natural Config::get(RegisterIndex reg) const {
  auto it = entries_.find(reg.value());
  return it == entries_.end() ? 0 : it->second;
}

Config Config::with(RegisterIndex reg, Natural value) const {
  Config out = *this;
  out.set(reg.value(), value);
  return out;
}

std::size_t Config::support_max() const noexcept {
  return entries_.empty() ? 0 : entries_.rbegin()->first;
}

void Config::set(std::size_t reg, Natural value) {
  if (value == 0) {
    entries_.erase(reg);
  } else {
    entries_[reg] = value;
  }
}

FiniteConfig::FiniteConfig(std::vector<Natural> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "finite configuration must not be empty");
  }
}

FiniteConfig::FiniteConfig(std::initializer_list<Natural> values)
    : FiniteConfig(std::vector<Natural>(values)) {}

Natural FiniteConfig::operator[](std::size_t position) const {
  if (position == 0 || position > values_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "register " + std::to_string(position) +
                    " outside finite configuration of length " +
                    std::to_string(values_.size()));
  }
  return values_[position - 1];
}

std::size_t rho(const Program& p) { return p.rho(); }

bool is_standard_form(const Program& p) { return p.standard_form(); }

bool compatible(const FiniteConfig& sigma, const Program& p) {
  return p.standard_form() && p.rho() <= sigma.size();
}

Natural get(const Config& c, RegisterIndex i) { return c.get(i); }

Config zr(const Config& c, RegisterIndex i) { return c.with(i, 0); }

Config sc(const Config& c, RegisterIndex i) { return c.with(i, c.get(i) + 1); }

Config mv(const Config& c, RegisterIndex from, RegisterIndex to) {
  return c.with(to, c.get(from));
}

Config include(const FiniteConfig& sigma) {
  Config c;
  const auto values = sigma.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0) c = c.with(RegisterIndex(i + 1), values[i]);
  }
  return c;
}

FiniteConfig restrict(const Config& c, const Program& p) {
  std::vector<Natural> values(p.rho());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = c.get(RegisterIndex(i + 1));
  }
  return FiniteConfig(std::move(values));
}

std::string format_registers(const Config& c, std::size_t width) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= width; ++i) {
    if (i > 1) out << ',';
    out << c.get(RegisterIndex(i));
  }
  return out.str();
}

std::string format_registers(const FiniteConfig& sigma) {
  std::ostringstream out;
  bool first = true;
  for (Natural v : sigma.values()) {
    if (!first) out << ',';
    out << v;
    first = false;
  }
  return out.str();
}

}  // namespace urm
