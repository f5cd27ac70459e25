#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spec.hpp"

using namespace nexang;
using namespace nexang::cli;

namespace {

int exit_for(const Error& e) {
  return e.code() == ErrorCode::Parse ? 2 : 3;
}

int run_verify(const std::string& path, const std::vector<std::string>& suites, std::optional<std::uint64_t> seed,
               std::optional<int> cap_objects, std::optional<Int> cap_order, const std::string& report,
               const std::string& format, bool timing) {
  std::shared_ptr<Model> m;
  std::vector<SuiteReport> reps;
  try {
    m = load_spec_file(path);
    if (seed) m->cfg.seed = *seed;
    if (cap_objects) {
      if (*cap_objects < 0 || *cap_objects > 4) throw Error(ErrorCode::Validation, "--cap-objects must lie in 0..4");
      m->cfg.object_cap = *cap_objects;
    }
    if (cap_order) {
      if (*cap_order < 1) throw Error(ErrorCode::Validation, "--cap-order must be positive");
      m->cfg.order_cap = *cap_order;
    }
    if (!suites.empty()) select_suites(*m, suites);
    auto warnings = bound_warnings(*m);
    if (!warnings.empty())
      throw Error(ErrorCode::BoundExceeded, warnings.front() + " (" + std::to_string(warnings.size()) + " pairs)");
    std::shared_ptr<const Model> cm = m;
    for (const auto& s : suite_names()) {
      if (std::find(m->suites.begin(), m->suites.end(), s) == m->suites.end()) continue;
      auto plan = build_suite(cm, s);
      if (plan.empty()) continue;
      auto t0 = std::chrono::steady_clock::now();
      auto rep = run_plan(m->name + " / " + s, plan, m->cfg.max_witnesses);
      std::stable_sort(rep.checks.begin(), rep.checks.end(),
                       [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
      // Timing goes to stderr so the report itself stays byte-stable.
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      if (timing) std::cerr << "nexang: " << s << " " << ms << " ms\n";
      reps.push_back({s, std::move(rep)});
    }
  } catch (const Error& e) {
    std::cerr << "nexang: " << e.what() << "\n";
    return exit_for(e);
  }
  auto out = format == "structured" ? format_structured(*m, reps) : format_text(*m, reps);
  if (report.empty() || report == "-") {
    std::cout << out;
  } else {
    std::ofstream f(report, std::ios::binary);
    if (!f) {
      std::cerr << "nexang: cannot write " << report << "\n";
      return 2;
    }
    f << out;
  }
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.report.passed();
  return ok ? 0 : 1;
}

int run_describe(const std::string& path) {
  try {
    std::cout << describe(load_spec_file(path));
  } catch (const Error& e) {
    std::cerr << "nexang: " << e.what() << "\n";
    return exit_for(e);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks n-exangulated functors and natural transformations on finite models"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string spec, report, format = "text";
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::optional<int> cap_objects;
  std::optional<Int> cap_order;
  bool timing = false;

  auto* verify = app.add_subcommand("verify", "run the suites of a spec");
  verify->add_option("spec", spec, "spec file")->required();
  verify->add_option("--suite", suites, "run only these suites");
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--cap-objects", cap_objects, "object cap");
  verify->add_option("--cap-order", cap_order, "group order cap");
  verify->add_option("--report", report, "write the report here instead of stdout");
  verify->add_flag("--timing", timing, "print per-suite wall time to stderr");
  verify->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  auto* desc = app.add_subcommand("describe", "summarise a spec without running it");
  desc->add_option("spec", spec, "spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*verify) return run_verify(spec, suites, seed, cap_objects, cap_order, report, format, timing);
  return run_describe(spec);
}
