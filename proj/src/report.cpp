#include "nexang/report.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace nexang {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Pass; });
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == Status::Fail;
  return n;
}

const CheckResult* Report::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << subject << "\n";
  for (const auto& c : checks) {
    os << "  " << to_string(c.status) << "  " << c.id << "  (" << c.instances << " instances";
    if (c.failures) os << ", " << c.failures << " failed";
    if (c.sampled) os << ", sampled";
    os << ")";
    if (!c.note.empty()) os << "  " << c.note;
    os << "\n";
    for (const auto& w : c.witnesses) os << "      witness: " << w << "\n";
  }
  return os.str();
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.id = prefix + c.id;
    checks.push_back(std::move(c));
  }
}

CheckResult run_check(const PlannedCheck& check, std::size_t max_witnesses) {
  CheckResult r;
  r.id = check.id;
  r.description = check.description;
  r.sampled = check.sampled;
  r.note = check.note;
  r.instances = check.instances.size();
  for (const auto& inst : check.instances) {
    std::optional<std::string> failure;
    try {
      failure = inst.run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      ++r.failures;
      if (r.witnesses.size() < max_witnesses) r.witnesses.push_back(inst.label + ": " + *failure);
    }
  }
  if (r.failures)
    r.status = Status::Fail;
  else
    r.status = r.instances ? Status::Pass : Status::Skipped;
  if (!r.instances && r.note.empty()) r.note = "no instances";
  return r;
}

Report run_plan(const std::string& subject, const Plan& plan, std::size_t max_witnesses) {
  Report rep{subject, {}};
  for (const auto& c : plan) rep.checks.push_back(run_check(c, max_witnesses));
  return rep;
}

void thin(PlannedCheck& check, std::size_t limit, std::mt19937_64& rng) {
  if (limit == 0 || check.instances.size() <= limit) return;
  std::vector<std::size_t> idx(check.instances.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(limit);
  std::sort(idx.begin(), idx.end());
  std::vector<Instance> kept;
  for (auto i : idx) kept.push_back(std::move(check.instances[i]));
  check.instances = std::move(kept);
  check.sampled = true;
}

Sample sample_group(const FinAbGroup& g, const VerifyConfig& cfg, std::mt19937_64& rng) {
  Sample s;
  if (g.order() <= cfg.order_cap) {
    s.elements = enumerate(g);
    return s;
  }
  s.sampled = true;
  std::set<GroupElement> seen;
  auto add = [&](GroupElement x) {
    if (seen.insert(x).second) s.elements.push_back(std::move(x));
  };
  add(GroupElement::zero(g));
  for (std::size_t i = 0; i < g.rank(); ++i) add(GroupElement::basis(g, i));
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    std::vector<Int> c;
    for (Int f : g.factors()) c.push_back(std::uniform_int_distribution<Int>(0, f - 1)(rng));
    add(GroupElement{g, c});
  }
  return s;
}

}  // namespace nexang
