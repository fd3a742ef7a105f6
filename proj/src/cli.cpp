// Copyright 2026 The urm Authors
// SPDX-License-Identifier: Apache-2.0

#include "urm/cli.hpp"

#include <CLI11.hpp>
#include <optional>
#include <string>

#include "urm/certificates.hpp"
#include "urm/error.hpp"
#include "urm/evaluator.hpp"
#include "urm/text_io.hpp"

namespace urm::cli {
namespace {

// Thrown after a diagnostic has been written; carries the exit code.
struct Abort {
  int code;
};

class Context {
 public:
  Context(std::ostream& out, std::ostream& err) : out(out), err_(err) {}

  [[noreturn]] void fail(const std::string& message) {
    err_ << "error: " << message << '\n';
    throw Abort{kInputError};
  }

  Program load_program(const std::string& path) {
    return load(path, [](std::string_view text) { return parse_program(text); });
  }

  FiniteConfig load_config(const std::string& path) {
    return load(path, [](std::string_view text) { return parse_config(text); });
  }

  Certificate load_cert(const std::string& path) {
    return load(path, [](std::string_view text) { return parse_cert(text); });
  }

  FiniteConfig config_arg(const std::string& flag, const std::string& csv) {
    try {
      return parse_config(csv);
    } catch (const SourceError& e) {
      fail(flag + ": " + e.what());
    }
  }

  std::ostream& out;

 private:
  template <class Parse>
  auto load(const std::string& path, Parse parse) -> decltype(parse("")) {
    std::string text;
    try {
      text = read_file(path);
    } catch (const Error& e) {
      fail(e.what());
    }
    try {
      return parse(text);
    } catch (const SourceError& e) {
      fail(path + ":" + e.what());
    } catch (const Error& e) {
      fail(path + ": " + e.what());
    }
  }

  std::ostream& err_;
};

int cmd_validate(Context& ctx, const std::string& prog_path,
                 const std::optional<std::string>& config_path) {
  const Program p = ctx.load_program(prog_path);
  const bool standard = is_standard_form(p);
  ctx.out << "n=" << p.size() << " rho=" << rho(p)
          << " standard-form=" << (standard ? "yes" : "no") << '\n';
  bool ok = standard;
  if (config_path) {
    const FiniteConfig sigma = ctx.load_config(*config_path);
    const bool compat = compatible(sigma, p);
    ctx.out << "compatible=" << (compat ? "yes" : "no") << '\n';
    ok = ok && compat;
  }
  return ok ? kSuccess : kInputError;
}

int cmd_run(Context& ctx, const std::string& prog_path,
            const std::optional<std::string>& init, std::size_t fuel,
            bool finite, bool show_steps) {
  const Program p = ctx.load_program(prog_path);
  if (!is_standard_form(p)) ctx.fail(prog_path + ": not in standard form");

  std::optional<FiniteConfig> sigma;
  if (init) sigma = ctx.config_arg("--init", *init);
  if (finite && !sigma) sigma = FiniteConfig(std::vector<Natural>(rho(p), 0));
  if (finite && !compatible(*sigma, p)) {
    ctx.fail("--init has " + std::to_string(sigma->size()) +
             " registers but the program uses r" + std::to_string(rho(p)));
  }
  const Config start = sigma ? include(*sigma) : Config{};
  const std::size_t width = finite ? sigma->size() : rho(p);

  if (show_steps) {
    std::size_t shown = 0;
    for (const MachineState& s : trace(p, start)) {
      if (shown++ == fuel) break;
      ctx.out << s.pc << ' ' << format_registers(s.config, width) << '\n';
    }
  }

  if (finite) {
    FiniteOutcome o = run_finite(p, *sigma, fuel);
    if (const auto* h = std::get_if<FiniteHalted>(&o)) {
      ctx.out << "halted: " << format_registers(h->final) << '\n'
              << "steps: " << h->steps << '\n';
      return kSuccess;
    }
    ctx.out << "fuel exhausted after " << std::get<FiniteOutOfFuel>(o).steps
            << " steps\n";
    return kFuelExhausted;
  }

  Outcome o = run(p, start, fuel);
  if (const auto* h = std::get_if<Halted>(&o)) {
    ctx.out << "halted: " << format_registers(h->final, width) << '\n'
            << "steps: " << h->steps << '\n';
    return kSuccess;
  }
  ctx.out << "fuel exhausted after " << std::get<OutOfFuel>(o).steps
          << " steps\n";
  return kFuelExhausted;
}

int cmd_abstract(Context& ctx, const std::string& prog_path,
                 const std::optional<std::string>& init) {
  const Program p = ctx.load_program(prog_path);
  const Config start = init ? include(ctx.config_arg("--init", *init))
                            : Config{};
  AbstractVerdict v;
  try {
    v = decide_abstract(p, start);
  } catch (const Error& e) {
    ctx.fail(e.what());
  }
  if (const auto* c = std::get_if<Converges>(&v)) {
    ctx.out << "converges in " << c->steps << " steps\n";
  } else {
    const auto& d = std::get<Diverges>(v);
    ctx.out << "diverges: cycle at pc " << d.cycle_entry_pc << ", length "
            << d.cycle_length << '\n';
  }
  return kSuccess;
}

int cmd_cert(Context& ctx, const std::string& prog_path,
             const std::string& cert_path) {
  const Program p = ctx.load_program(prog_path);
  const Certificate cert = ctx.load_cert(cert_path);
  CertReport report;
  try {
    report = check(p, cert);
  } catch (const Error& e) {
    ctx.fail(cert_path + ": " + e.what());
  }
  if (report.accepted()) {
    ctx.out << "Accepted\n";
  } else {
    const Rejection& r = *report.rejection;
    ctx.out << "Rejected: " << to_string(r.reason);
    if (r.pc) ctx.out << " pc=" << *r.pc;
    if (r.atom) ctx.out << " atom=" << *r.atom;
    ctx.out << '\n';
  }
  ctx.out << "trail:";
  if (!report.witness_trail.empty()) {
    ctx.out << ' ' << format_trail(report.witness_trail);
  }
  ctx.out << '\n';
  return report.accepted() ? kSuccess : kCertificateRejected;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Unlimited Register Machine toolkit"};
  app.require_subcommand(1);

  std::string prog_path;
  std::optional<std::string> config_path;
  std::optional<std::string> init;
  std::size_t fuel = kDefaultFuel;
  bool finite = false;
  bool show_steps = false;
  std::string cert_path;

  auto* validate = app.add_subcommand(
      "validate", "Report length, max register and standard form");
  validate->add_option("program", prog_path, "URM program file")->required();
  validate->add_option("--config", config_path,
                       "Finite configuration file to check compatibility");

  auto* run_cmd = app.add_subcommand("run", "Execute a program");
  run_cmd->add_option("program", prog_path, "URM program file")->required();
  run_cmd->add_option("--init", init, "Initial registers, e.g. 5,3,0");
  run_cmd->add_option("--fuel", fuel, "Step budget")->capture_default_str();
  run_cmd->add_flag("--finite", finite,
                    "Execute on the finite list configuration");
  run_cmd->add_flag("--show-steps", show_steps, "Print every running state");

  auto* abstract = app.add_subcommand(
      "abstract", "Decide convergence of a jump-only program");
  abstract->add_option("program", prog_path, "URM program file")->required();
  abstract->add_option("--init", init, "Initial registers, e.g. 0,1");

  auto* cert = app.add_subcommand("cert", "Check a lasso certificate");
  cert->add_option("program", prog_path, "URM program file")->required();
  cert->add_option("certificate", cert_path, "Certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  Context ctx(out, err);
  try {
    if (*validate) return cmd_validate(ctx, prog_path, config_path);
    if (*run_cmd) {
      return cmd_run(ctx, prog_path, init, fuel, finite, show_steps);
    }
    if (*abstract) return cmd_abstract(ctx, prog_path, init);
    return cmd_cert(ctx, prog_path, cert_path);
  } catch (const Abort& a) {
    return a.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace urm::cli
