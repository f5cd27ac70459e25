#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nexang/twocat.hpp"

namespace nexang::cli {

inline constexpr const char* kVersion = "0.3.0";

struct NamedFunctor {
  std::string name;
  ExFunctorPtr f;
  bool fixture = false;  // only used by expected-negative fixtures
};

struct NamedCell {
  std::string name;
  ExNatTrans cell;
  std::string source, target;
  bool fixture = false;
};

struct NamedAdjunction {
  std::string name;
  Adjunction adj;
  std::optional<bool> equivalence;
};

// Expected-negative assertions; see the README for the kinds.
struct Fixture {
  std::string name, kind, functor;
  std::vector<Object> objects;
};

struct Model {
  std::string name;
  VerifyConfig cfg;
  std::string backend_desc;
  CategoryPtr category;
  std::shared_ptr<const FinAbBackend> finab;
  std::shared_ptr<const TableBackend> table;
  std::vector<std::pair<std::string, FinAbGroup>> table_groups;
  BifunctorPtr bifunctor;
  RealisationPtr realisation;  // null when no realisation is registered for the bifunctor
  int n = 1;
  std::vector<NamedFunctor> functors;
  std::map<std::string, std::shared_ptr<const RelabelingFunctor>> relabels;
  std::vector<NamedCell> cells;
  std::vector<NamedAdjunction> adjunctions;
  std::vector<Fixture> fixtures;
  std::size_t grids = 100;
  std::vector<std::string> suites;

  const NamedFunctor& functor(const std::string& name) const;
};

// Error(Parse) for malformed documents, Error(Validation) for unresolved or inconsistent data.
std::shared_ptr<Model> load_spec(const std::string& text);
std::shared_ptr<Model> load_spec_file(const std::string& path);

const std::vector<std::string>& suite_names();
// Empty means every suite the model supports.
void select_suites(Model& m, const std::vector<std::string>& suites);
// The named suite as a plan; nothing runs until the plan is executed.
Plan build_suite(const std::shared_ptr<const Model>& m, const std::string& suite);

struct SuiteReport {
  std::string suite;
  Report report;
};

// Universe pairs whose hom or extension group is too large to enumerate.
std::vector<std::string> bound_warnings(const Model& m);
std::string describe(const std::shared_ptr<const Model>& m);
std::string format_text(const Model& m, const std::vector<SuiteReport>& reps);
std::string format_structured(const Model& m, const std::vector<SuiteReport>& reps);

}  // namespace nexang::cli
