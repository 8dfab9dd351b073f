#include "srl/evaluate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "srl/rng.hpp"

namespace srl {

double f1_score(double precision, double recall) {
  double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

double PRF::f1() const { return f1_score(precision(), recall()); }

namespace {

using SpanKey = std::tuple<int, int, std::string>;

std::map<SpanKey, long> counted(const std::vector<RoleSpan>& spans) {
  std::map<SpanKey, long> out;
  for (const RoleSpan& s : spans) {
    if (s.role == kNullLabel || s.role == kRelLabel) continue;
    ++out[SpanKey{s.begin, s.end, s.role}];
  }
  return out;
}

}  // namespace

PRF score_labels(const std::vector<RoleSpan>& predicted,
                 const std::vector<RoleSpan>& gold) {
  std::map<SpanKey, long> p = counted(predicted);
  std::map<SpanKey, long> g = counted(gold);
  PRF out;
  for (const auto& [key, pc] : p) {
    auto it = g.find(key);
    long match = it == g.end() ? 0 : std::min(pc, it->second);
    out.tp += match;
    out.fp += pc - match;
  }
  for (const auto& [key, gc] : g) {
    auto it = p.find(key);
    long match = it == p.end() ? 0 : std::min(gc, it->second);
    out.fn += gc - match;
  }
  return out;
}

PerRoleReport per_role_report(const std::vector<RoleSpan>& predicted,
                              const std::vector<RoleSpan>& gold) {
  PerRoleReport report;
  std::map<std::string, std::vector<RoleSpan>> p_by_role, g_by_role;
  for (const RoleSpan& s : predicted) {
    if (s.role == kNullLabel || s.role == kRelLabel) continue;
    p_by_role[s.role].push_back(s);
  }
  for (const RoleSpan& s : gold) {
    if (s.role == kNullLabel || s.role == kRelLabel) continue;
    g_by_role[s.role].push_back(s);
  }
  std::set<std::string> roles;
  for (const auto& [r, _] : p_by_role) roles.insert(r);
  for (const auto& [r, _] : g_by_role) roles.insert(r);
  for (const std::string& role : roles) {
    PRF prf = score_labels(p_by_role[role], g_by_role[role]);
    report.total += prf;
    report.by_role.emplace(role, prf);
  }
  return report;
}

FoldPlan FoldPlan::make(int corpus_size, int k, std::uint64_t seed) {
  if (k < 2)
    throw std::invalid_argument(
        "cross-validation needs k >= 2 (no held-out data otherwise)");
  if (k > corpus_size)
    throw std::invalid_argument("k exceeds the corpus size");
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  std::vector<int> ids(corpus_size);
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(seed);
  rng.shuffle(ids);
  plan.assignment.assign(corpus_size, 0);
  for (int pos = 0; pos < corpus_size; ++pos)
    plan.assignment[ids[pos]] = pos % k;
  return plan;
}

}  // namespace srl
