#include <doctest.h>

#include <json.hpp>

#include "spec.hpp"

using namespace nexang;
using namespace nexang::cli;

namespace {

ErrorCode load_error(const std::string& text) {
  try {
    load_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("spec loaded: " << text);
  return ErrorCode::Unsupported;
}

const char* kSmall = R"({
  "name": "small",
  "backend": {"kind": "finab", "exponent": 4},
  "structure": {"bifunctor": "ext1"},
  "caps": {"objects": 1},
  "functors": [
    {"name": "I", "functor": "id", "Gamma": "id"},
    {"name": "D", "functor": "dup", "Gamma": "diag"}
  ],
  "cells": [
    {"name": "two", "source": "I", "target": "I", "components": {"scalar": 2}},
    {"name": "Delta", "source": "I", "target": "D", "components": "diagonal"},
    {"name": "Nabla", "source": "D", "target": "I", "components": "codiagonal"}
  ],
  "interchange": {"grids": 12}
})";

std::vector<SuiteReport> run_all(const std::shared_ptr<const Model>& m) {
  std::vector<SuiteReport> out;
  for (const auto& s : m->suites) {
    auto p = build_suite(m, s);
    if (!p.empty()) out.push_back({s, run_plan(s, p, m->cfg.max_witnesses)});
  }
  return out;
}

std::string with(std::string base, const std::string& from, const std::string& to) {
  auto at = base.find(from);
  REQUIRE(at != std::string::npos);
  return base.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("malformed documents are parse errors") {
  CHECK(load_error("{") == ErrorCode::Parse);
  CHECK(load_error("[]") == ErrorCode::Parse);
  CHECK(load_error(R"({"backend": {"kind": "finab", "exponent": 4}, "structure": {"bifunctor": "split"}})") ==
        ErrorCode::Parse);
  CHECK(load_error(with(kSmall, R"("exponent": 4)", R"("exponent": "4")")) == ErrorCode::Parse);
  CHECK(load_error(with(kSmall, R"("caps")", R"("capz")")) == ErrorCode::Parse);
  CHECK(load_error(with(kSmall, R"("Gamma": "diag")", R"("gamma": "diag")")) == ErrorCode::Parse);
}

TEST_CASE("inconsistent declarations are validation errors") {
  CHECK(load_error(with(kSmall, R"("target": "D")", R"("target": "J")")) == ErrorCode::Validation);
  CHECK(load_error(with(kSmall, R"("name": "D")", R"("name": "I")")) == ErrorCode::Validation);
  // identity components cannot map X to X + X
  CHECK(load_error(with(kSmall, R"("components": "diagonal")", R"("components": "identity")")) ==
        ErrorCode::Validation);
  // Gamma = id needs F = id
  CHECK(load_error(with(kSmall, R"("Gamma": "diag")", R"("Gamma": "id")")) == ErrorCode::Validation);
  CHECK(load_error(with(kSmall, R"("exponent": 4)", R"("exponent": 0)")) == ErrorCode::Validation);
  CHECK(load_error(with(kSmall, R"("bifunctor": "ext1")", R"("bifunctor": "ext1", "n": 2)")) ==
        ErrorCode::Validation);
  CHECK(load_error(with(kSmall, R"("interchange")", R"("suites": ["nope"], "interchange")")) ==
        ErrorCode::Validation);
  CHECK(load_error(with(kSmall, R"("interchange")",
                        R"("fixtures": [{"name": "c", "kind": "cell-not-natural", "cell": "zz"}], "interchange")")) ==
        ErrorCode::Validation);

  const char* table = R"({
    "name": "t",
    "backend": {"kind": "table", "objects": [["0", []], ["X", [2]], ["Y", [4]]]},
    "structure": {"bifunctor": "split", "n": 2}
  })";
  auto m = load_spec(table);
  CHECK(std::find(m->suites.begin(), m->suites.end(), "exact-category") == m->suites.end());
  CHECK(std::find(m->suites.begin(), m->suites.end(), "theorem-b") != m->suites.end());
  CHECK_THROWS_AS(select_suites(*m, {"axioms"}), Error);
  CHECK(load_error(with(table, R"("n": 2})", R"("n": 2}, "suites": ["exact-category"])")) == ErrorCode::Validation);
  CHECK(load_error(with(table, R"("bifunctor": "split")", R"("bifunctor": "ext1")")) == ErrorCode::Validation);
  CHECK(load_error(with(table, R"("n": 2})",
                        R"("n": 2}, "fixtures": [{"name": "s", "kind": "swap", "objects": ["X", "Y"]}])")) ==
        ErrorCode::Validation);
}

TEST_CASE("relabeling declarations") {
  const char* base = R"({
    "name": "r",
    "backend": {"kind": "table", "objects": [["0", []], ["X1", [2]], ["X2", [2]], ["Y", [4]]]},
    "structure": {"bifunctor": "split", "n": 1},
    "functors": [{"name": "R", "functor": {"relabel": {"perm": {"X1": "X2", "X2": "X1"}}}, "Gamma": "zero"}]
  })";
  auto m = load_spec(base);
  REQUIRE(m->relabels.count("R"));
  CHECK(m->functor("R").f->functor().on_object(Object::named("X1")) == Object::named("X2"));
  CHECK(load_error(with(base, R"("X2": "X1")", R"("X2": "Y")")) == ErrorCode::Validation);
  CHECK(load_error(with(base, R"("X2": "X1")", R"("X2": "Q")")) == ErrorCode::Validation);
  CHECK(load_error(with(base, R"("X2": "X1"})", R"("X2": "X1"}, "isos": {"X1": [[1, 1]]})")) ==
        ErrorCode::Validation);
}

TEST_CASE("planned counts equal executed counts") {
  std::shared_ptr<const Model> m = load_spec(kSmall);
  auto reps = run_all(m);
  CHECK(reps.size() == 7);  // no adjunctions or fixtures declared
  for (const auto& r : reps) {
    auto plan = build_suite(m, r.suite);
    CHECK(plan.size() == r.report.checks.size());
    for (std::size_t i = 0; i < plan.size(); ++i)
      CHECK_MESSAGE(plan[i].instances.size() == r.report.checks[i].instances, r.suite << " " << plan[i].id);
    CHECK_MESSAGE(r.report.passed(), r.report.to_text());
  }
  auto inter = build_suite(m, "interchange");
  REQUIRE(inter.size() == 1);
  CHECK(inter[0].instances.size() == 12);
}

TEST_CASE("reports are deterministic and seed dependent") {
  auto a = load_spec(kSmall);
  auto b = load_spec(kSmall);
  select_suites(*a, {"interchange", "theorem-b"});
  select_suites(*b, {"interchange", "theorem-b"});
  auto ra = run_all(a);
  auto rb = run_all(b);
  CHECK(format_text(*a, ra) == format_text(*b, rb));
  CHECK(format_structured(*a, ra) == format_structured(*b, rb));

  std::istringstream lines(format_structured(*a, ra));
  std::string line;
  std::vector<nlohmann::json> parsed;
  while (std::getline(lines, line)) parsed.push_back(nlohmann::json::parse(line));
  REQUIRE(parsed.size() >= 3);
  CHECK(parsed.front()["type"] == "header");
  CHECK(parsed.front()["seed"] == 0);
  CHECK(parsed.back()["type"] == "summary");
  CHECK(parsed.back()["failed"] == 0);
  for (std::size_t i = 1; i + 1 < parsed.size(); ++i) CHECK(parsed[i]["status"] == "pass");

  auto labels = [](const std::shared_ptr<const Model>& m) {
    std::vector<std::string> out;
    auto plan = build_suite(m, "interchange");
    for (const auto& i : plan[0].instances) out.push_back(i.label);
    return out;
  };
  b->cfg.seed = 7;
  CHECK(labels(a) == labels(a));
  CHECK(labels(a) != labels(b));
}

TEST_CASE("failing cells produce witnesses") {
  auto m = load_spec(with(kSmall, R"("components": {"scalar": 2})", R"("components": {"spike": [2]})"));
  select_suites(*m, {"theorem-b"});
  auto reps = run_all(m);
  REQUIRE(reps.size() == 1);
  const auto* nat = reps[0].report.find("natural");
  REQUIRE(nat != nullptr);
  CHECK(nat->status == Status::Fail);
  REQUIRE_FALSE(nat->witnesses.empty());
  CHECK(nat->witnesses.front().find("two") != std::string::npos);
}

TEST_CASE("fixtures assert negatives") {
  auto m = load_spec(R"({
    "name": "neg",
    "backend": {"kind": "finab", "exponent": 4},
    "structure": {"bifunctor": "ext1"},
    "caps": {"objects": 1},
    "functors": [
      {"name": "I", "functor": "id", "Gamma": "id"},
      {"name": "T", "functor": {"scalar": 2}, "Gamma": "zero", "fixture": true},
      {"name": "W", "functor": "id", "Gamma": {"scalar": 0}, "fixture": true}
    ],
    "fixtures": [
      {"name": "corrupted", "kind": "corrupted"},
      {"name": "T-additive", "kind": "not-additive", "functor": "T"},
      {"name": "W-exangulated", "kind": "not-exangulated", "functor": "W"},
      {"name": "I-additive", "kind": "not-additive", "functor": "I"}
    ],
    "suites": ["fixtures", "functors"]
  })");
  auto reps = run_all(m);
  REQUIRE(reps.size() == 2);
  const auto& fx = reps[1].suite == "fixtures" ? reps[1].report : reps[0].report;
  CHECK(fx.find("corrupted")->status == Status::Pass);
  CHECK(fx.find("T-additive")->status == Status::Pass);
  CHECK(fx.find("W-exangulated")->status == Status::Pass);
  CHECK(fx.find("I-additive")->status == Status::Fail);
  // fixture functors stay out of the positive suites
  const auto& fun = reps[1].suite == "functors" ? reps[1].report : reps[0].report;
  CHECK(fun.find("additive")->instances == 1);
}

TEST_CASE("bound preview") {
  auto m = load_spec(R"({
    "name": "big",
    "backend": {"kind": "finab", "exponent": 8},
    "structure": {"bifunctor": "ext1"},
    "caps": {"objects": 3}
  })");
  CHECK_FALSE(bound_warnings(*m).empty());
  auto text = describe(m);
  CHECK(text.find("warning: BoundExceeded") != std::string::npos);
  m->cfg.object_cap = 1;
  CHECK(bound_warnings(*m).empty());

  auto e = load_spec(with(kSmall, R"("interchange": {"grids": 12})", R"("suites": [])"));
  CHECK(e->suites.empty());
  CHECK(describe(e).find("total: 0 checks, 0 instances") != std::string::npos);
}
