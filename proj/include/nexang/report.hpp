#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nexang/algebra.hpp"

namespace nexang {

// Quantification limits shared by every verifier.
struct VerifyConfig {
  int object_cap = 2;             // objects are biproducts of at most this many probes
  Int order_cap = 64;             // larger groups are sampled instead of enumerated
  std::size_t samples = 6;        // random elements drawn from a sampled group
  std::size_t per_pair = 4;       // morphisms kept per (source, target) pair in composite checks
  std::size_t max_instances = 600;  // per check; 0 means unlimited
  std::size_t max_witnesses = 3;
  std::uint64_t seed = 0;
};

enum class Status { Pass, Fail, Skipped };
const char* to_string(Status s);

struct CheckResult {
  std::string id;
  std::string description;
  Status status = Status::Skipped;
  std::size_t instances = 0;
  std::size_t failures = 0;
  bool sampled = false;
  std::vector<std::string> witnesses;
  std::string note;
};

struct Report {
  std::string subject;
  std::vector<CheckResult> checks;

  bool passed() const;  // no failures and nothing skipped
  std::size_t failures() const;
  const CheckResult* find(const std::string& id) const;
  std::string to_text() const;
  void append(const Report& other, const std::string& prefix = "");
};

// One quantified instance. run() returns a failure description, or nullopt on success.
struct Instance {
  std::string label;
  std::function<std::optional<std::string>()> run;
};

struct PlannedCheck {
  std::string id;
  std::string description;
  std::vector<Instance> instances;
  bool sampled = false;
  std::string note;
};

using Plan = std::vector<PlannedCheck>;

CheckResult run_check(const PlannedCheck& check, std::size_t max_witnesses);
Report run_plan(const std::string& subject, const Plan& plan, std::size_t max_witnesses);

// Keeps at most `limit` instances (seeded choice, original order preserved); marks the check sampled.
void thin(PlannedCheck& check, std::size_t limit, std::mt19937_64& rng);

struct Sample {
  std::vector<GroupElement> elements;
  bool sampled = false;
};
// Every element when |G| <= order_cap, otherwise zero, the generators and `samples` random elements.
Sample sample_group(const FinAbGroup& g, const VerifyConfig& cfg, std::mt19937_64& rng);

// Shorthand for instance bodies.
inline std::optional<std::string> expect(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

}  // namespace nexang
