// Command-line front end: coverability checking and differential fuzzing.
//
// Exit codes: 0 safe/uncoverable, 1 unsafe/coverable, 2 usage or parse
// error, 3 resource limit, 4 oracle disagreement or failed self-validation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "iic/backward.hpp"
#include "iic/certify.hpp"
#include "iic/engine.hpp"
#include "iic/fuzz.hpp"
#include "iic/mist_io.hpp"
#include "iic/simd.hpp"

namespace {

constexpr int kExitSafe = 0;
constexpr int kExitUnsafe = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitDisagree = 4;

struct CheckArgs {
  std::string input;
  std::string method = "iic";
  std::string cert_path;
  std::string trace_path;
  std::uint64_t budget = 100'000'000;
  bool verbose = false;
  bool stats = false;
  bool no_verify = false;
};

void print_stats(const iic::SearchStats& s) {
  std::cout << "frames=" << s.frames << " blockers=" << s.blockers
            << " obligations=" << s.obligations << " shrink=" << s.shrink
            << " steps=" << s.steps << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw iic::UsageError("cannot write file: " + path);
  out << text;
}

int run_check(const CheckArgs& args) {
  iic::SpecFile spec = iic::load_spec(args.input);

  iic::EngineOptions eo;
  eo.step_budget = args.budget;
  if (args.verbose) {
    eo.on_event = [](const iic::EngineEvent& ev) {
      std::cerr << ev.rule;
      if (!ev.detail.empty()) std::cerr << ' ' << ev.detail;
      std::cerr << " |F|=";
      for (std::size_t i = 0; i < ev.frame_sizes.size(); ++i) {
        std::cerr << (i ? "/" : "") << ev.frame_sizes[i];
      }
      std::cerr << '\n';
    };
  }

  const bool want_iic = args.method == "iic" || args.method == "both";
  const bool want_backward = args.method == "backward" || args.method == "both";

  std::optional<iic::Verdict> primary;
  std::optional<iic::Verdict> oracle;
  if (want_iic) primary = iic::check(spec.net, spec.target, eo);
  if (want_backward) {
    iic::BackwardOptions bo;
    bo.step_budget = args.budget;
    oracle = iic::backward_check(spec.net, spec.target, bo);
  }
  const iic::Verdict& v = want_iic ? *primary : *oracle;

  if (v.kind == iic::VerdictKind::resource_limit ||
      (oracle && oracle->kind == iic::VerdictKind::resource_limit)) {
    std::cout << "resource limit reached\n";
    return kExitResource;
  }
  if (primary && oracle && primary->kind != oracle->kind) {
    std::cout << "disagreement\n";
    std::cerr << "iic: " << iic::verdict_name(primary->kind) << " (" << primary->rule
              << ")\nbackward: " << iic::verdict_name(oracle->kind) << " (" << oracle->rule
              << ")\n";
    return kExitDisagree;
  }

  if (!args.no_verify) {
    for (const auto* w : {&primary, &oracle}) {
      if (!w->has_value()) continue;
      iic::CheckOutcome out =
          (*w)->kind == iic::VerdictKind::safe
              ? iic::check_certificate(spec.net, spec.target, (*w)->certificate)
              : iic::replay_trace(spec.net, spec.target, (*w)->trace);
      if (!out) {
        std::cout << "verdict failed self-validation\n";
        std::cerr << out.diagnostic << "\n";
        return kExitDisagree;
      }
    }
  }

  std::cout << iic::verdict_name(v.kind) << "\n";
  if (args.stats) print_stats(v.stats);
  if (!args.cert_path.empty() && v.kind == iic::VerdictKind::safe) {
    write_file(args.cert_path, iic::emit_certificate(v.certificate, spec.net.places));
  }
  if (!args.trace_path.empty() && v.kind == iic::VerdictKind::unsafe) {
    write_file(args.trace_path, iic::emit_trace(spec.net, spec.target, v.trace));
  }
  return v.kind == iic::VerdictKind::safe ? kExitSafe : kExitUnsafe;
}

int run_fuzz(const iic::FuzzOptions& opts) {
  iic::FuzzReport report = iic::run_differential_fuzz(opts);
  std::cout << "instances=" << report.instances << " safe=" << report.safe
            << " unsafe=" << report.unsafe << " enum-checked=" << report.enum_checked
            << " budget-hits=" << report.budget_hits << "\n";
  if (report.ok()) {
    std::cout << "agreement on all instances\n";
    return kExitSafe;
  }
  const iic::FuzzFailure& f = *report.failure;
  std::cout << "failure at instance " << f.index << " (seed " << f.instance_seed
            << "): " << f.reason << "\n";
  std::cout << "reproducer:\n" << f.spec_text;
  return kExitDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petri net coverability checker (incremental-inductive + backward oracle)"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "decide one coverability query");
  check->add_option("file", check_args.input, "input .spec file")->required();
  check->add_option("--method", check_args.method, "iic | backward | both")
      ->check(CLI::IsMember({"iic", "backward", "both"}))
      ->capture_default_str();
  check->add_option("--cert", check_args.cert_path, "write the certificate here when safe");
  check->add_option("--trace", check_args.trace_path, "write the witness here when unsafe");
  check->add_option("--budget", check_args.budget, "step budget")->capture_default_str();
  check->add_flag("-v,--verbose", check_args.verbose, "log every rule application");
  check->add_flag("--stats", check_args.stats, "print search counters");
  check->add_flag("--no-verify", check_args.no_verify, "skip verdict self-validation");

  iic::FuzzOptions fuzz_opts;
  CLI::App* fuzz = app.add_subcommand("fuzz", "differential testing on random instances");
  fuzz->add_option("--count", fuzz_opts.count, "instances to generate")->capture_default_str();
  fuzz->add_option("--seed", fuzz_opts.seed, "generator seed")->capture_default_str();
  fuzz->add_option("--places", fuzz_opts.bounds.places, "max places")->capture_default_str();
  fuzz->add_option("--trans", fuzz_opts.bounds.transitions, "max transitions")
      ->capture_default_str();
  fuzz->add_option("--weight", fuzz_opts.bounds.weight, "max arc weight")
      ->capture_default_str();
  fuzz->add_option("--tokens", fuzz_opts.bounds.tokens, "max initial/target tokens")
      ->capture_default_str();
  fuzz->add_option("--budget", fuzz_opts.step_budget, "per-instance step budget")
      ->capture_default_str();
  fuzz->add_flag("--enum-oracle", fuzz_opts.enum_oracle,
                 "also compare bounded forward exploration");
  fuzz->add_flag("--inject-bug", fuzz_opts.inject_bug, "harness self-test: corrupt verdicts")
      ->group("");  // hidden

  bool show_backend = false;
  app.add_flag("--kernel-backend", show_backend, "print the selected vector backend");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (show_backend) {
    std::cout << iic::simd::backend_name(iic::simd::active_backend()) << "\n";
  }

  try {
    if (check->parsed()) return run_check(check_args);
    if (fuzz->parsed()) {
      fuzz_opts.log = [](const std::string& line) { std::cerr << line << "\n"; };
      return run_fuzz(fuzz_opts);
    }
  } catch (const iic::ParseError& e) {
    std::cerr << "parse error: " << check_args.input << ":" << e.what() << "\n";
    return kExitUsage;
  } catch (const iic::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iic::OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iic::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return kExitUsage;
}
