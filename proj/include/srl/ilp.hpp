#ifndef SRL_ILP_HPP
#define SRL_ILP_HPP

#include <utility>
#include <vector>

#include "srl/learn.hpp"

namespace srl {

// One sentence's constrained decoding instance: per-candidate per-role
// scores plus the constraint data. Roles must contain the NULL label, which
// keeps the all-NULL assignment feasible.
struct IlpProblem {
  RoleSet roles;
  std::vector<std::vector<double>> scores;  // M x |roles|
  std::vector<std::pair<int, int>> spans;   // [begin, end) per candidate
  bool predicate_is_verb = true;
  std::vector<std::pair<int, int>> overlap_pairs;  // i < j, spans intersect

  int num_candidates() const { return static_cast<int>(scores.size()); }
};

std::vector<std::pair<int, int>> overlaps_from_spans(
    const std::vector<std::pair<int, int>>& spans);

struct Assignment {
  std::vector<int> labels;  // role index per candidate
  double objective = 0.0;
};

// True when the labelling satisfies every encoded constraint family: one
// label per candidate, no two overlapping non-NULL arguments, core roles
// unique, and no Arg2/Arg3/Arg4 for a non-verb predicate.
bool is_feasible(const IlpProblem& problem, const std::vector<int>& labels);

// Exact maximizer of the summed scores over feasible assignments.
// Branch-and-bound with the per-candidate-maximum upper bound; candidates
// are expanded in descending score-gap order. Among equal optima the
// lexicographically smallest label sequence (role order) is returned.
Assignment solve(const IlpProblem& problem);

// Exhaustive reference with identical feasibility and tie-breaking rules.
// Refuses instances with more than 10^7 labelings.
Assignment brute_force(const IlpProblem& problem);

// Unconstrained per-candidate argmax (ties to the earlier role).
std::vector<int> independent_argmax(const IlpProblem& problem);

// Independent argmax or exact ILP decoding over an assembled problem.
std::vector<int> decode_labels(const IlpProblem& problem, bool use_ilp);

}  // namespace srl

#endif  // SRL_ILP_HPP
