#include "srl/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srl {

std::vector<std::pair<int, int>> overlaps_from_spans(
    const std::vector<std::pair<int, int>>& spans) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = i + 1; j < spans.size(); ++j)
      if (spans[i].first < spans[j].second && spans[j].first < spans[i].second)
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

namespace {

struct Constraints {
  int n_roles = 0;
  int null_role = -1;
  std::vector<char> forbidden;  // role index -> barred by constraint 5
  std::vector<char> core;       // role index -> core role
  std::vector<std::vector<int>> adj;  // candidate -> overlapping candidates

  Constraints(const IlpProblem& p) {
    n_roles = static_cast<int>(p.roles.labels.size());
    null_role = p.roles.null_index();
    if (null_role < 0)
      throw std::invalid_argument("role set has no NULL label");
    forbidden.assign(n_roles, 0);
    core.assign(n_roles, 0);
    for (int c = 0; c < n_roles; ++c) {
      const std::string& label = p.roles.labels[c];
      core[c] = p.roles.is_core(label);
      if (!p.predicate_is_verb && core[c] && label != "Arg0" &&
          label != "Arg1")
        forbidden[c] = 1;
    }
    adj.assign(p.num_candidates(), {});
    for (auto [i, j] : p.overlap_pairs) {
      if (i == j || i < 0 || j < 0 || i >= p.num_candidates() ||
          j >= p.num_candidates())
        throw std::invalid_argument("bad overlap pair");
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  }

  // Can candidate i take role c given the partial labels (-1 = unassigned)?
  bool admissible(int i, int c, const std::vector<int>& labels,
                  const std::vector<char>& core_used) const {
    if (c == null_role) return true;
    if (forbidden[c]) return false;
    if (core[c] && core_used[c]) return false;
    for (int j : adj[i])
      if (labels[j] >= 0 && labels[j] != null_role) return false;
    return true;
  }
};

void check_scores(const IlpProblem& p) {
  int n_roles = static_cast<int>(p.roles.labels.size());
  if (static_cast<int>(p.spans.size()) != p.num_candidates())
    throw std::invalid_argument("spans/scores size mismatch");
  for (const auto& row : p.scores) {
    if (static_cast<int>(row.size()) != n_roles)
      throw std::invalid_argument("score row width mismatch");
    for (double s : row)
      if (std::isnan(s)) throw std::invalid_argument("NaN in scores");
  }
}

// Sum in candidate order so equal label sequences always round identically.
double canonical_objective(const IlpProblem& p, const std::vector<int>& labels) {
  double s = 0.0;
  for (int i = 0; i < p.num_candidates(); ++i) s += p.scores[i][labels[i]];
  return s;
}

struct Searcher {
  const IlpProblem& p;
  const Constraints& con;
  std::vector<int> order;          // expansion order of candidates
  std::vector<double> suffix_max;  // by depth in `order`
  std::vector<std::vector<int>> label_order;  // per candidate, tried in order
  std::vector<int> labels;
  std::vector<char> core_used;

  Searcher(const IlpProblem& problem, const Constraints& constraints,
           std::vector<int> expansion_order, bool labels_by_score)
      : p(problem), con(constraints), order(std::move(expansion_order)) {
    int m = p.num_candidates();
    labels.assign(m, -1);
    core_used.assign(con.n_roles, 0);
    suffix_max.assign(m + 1, 0.0);
    for (int d = m - 1; d >= 0; --d) {
      double best = -HUGE_VAL;
      for (int c = 0; c < con.n_roles; ++c) {
        if (c != con.null_role && con.forbidden[c]) continue;
        best = std::max(best, p.scores[order[d]][c]);
      }
      suffix_max[d] = suffix_max[d + 1] + best;
    }
    label_order.assign(m, {});
    for (int i = 0; i < m; ++i) {
      label_order[i].resize(con.n_roles);
      for (int c = 0; c < con.n_roles; ++c) label_order[i][c] = c;
      if (labels_by_score)
        std::sort(label_order[i].begin(), label_order[i].end(),
                  [&](int a, int b) {
                    if (p.scores[i][a] != p.scores[i][b])
                      return p.scores[i][a] > p.scores[i][b];
                    return a < b;
                  });
    }
  }
};

// Phase 1: optimal objective value, any witness. Labels are tried from the
// highest score down so good incumbents appear early.
void search_best(Searcher& s, int depth, double partial, double& best,
                 std::vector<int>& best_labels) {
  int m = s.p.num_candidates();
  if (depth == m) {
    double value = canonical_objective(s.p, s.labels);
    if (value > best) {
      best = value;
      best_labels = s.labels;
    }
    return;
  }
  if (partial + s.suffix_max[depth] <= best) return;
  int i = s.order[depth];
  for (int c : s.label_order[i]) {
    if (!s.con.admissible(i, c, s.labels, s.core_used)) continue;
    s.labels[i] = c;
    if (s.con.core[c]) s.core_used[c] = 1;
    search_best(s, depth + 1, partial + s.p.scores[i][c], best, best_labels);
    if (s.con.core[c]) s.core_used[c] = 0;
    s.labels[i] = -1;
  }
}

// Phase 2: first leaf in lexicographic label order reaching the optimum.
bool search_lex(Searcher& s, int depth, double partial, double target,
                std::vector<int>& out) {
  int m = s.p.num_candidates();
  if (depth == m) {
    if (partial >= target) {
      out = s.labels;
      return true;
    }
    return false;
  }
  if (partial + s.suffix_max[depth] < target) return false;
  int i = s.order[depth];
  for (int c : s.label_order[i]) {
    if (!s.con.admissible(i, c, s.labels, s.core_used)) continue;
    s.labels[i] = c;
    if (s.con.core[c]) s.core_used[c] = 1;
    bool found =
        search_lex(s, depth + 1, partial + s.p.scores[i][c], target, out);
    if (s.con.core[c]) s.core_used[c] = 0;
    s.labels[i] = -1;
    if (found) return true;
  }
  return false;
}

}  // namespace

bool is_feasible(const IlpProblem& problem, const std::vector<int>& labels) {
  Constraints con(problem);
  if (static_cast<int>(labels.size()) != problem.num_candidates()) return false;
  std::vector<char> core_used(con.n_roles, 0);
  for (int i = 0; i < problem.num_candidates(); ++i) {
    int c = labels[i];
    if (c < 0 || c >= con.n_roles) return false;
    if (c == con.null_role) continue;
    if (con.forbidden[c]) return false;
    if (con.core[c]) {
      if (core_used[c]) return false;
      core_used[c] = 1;
    }
    for (int j : con.adj[i])
      if (j < i && labels[j] != con.null_role) return false;
  }
  return true;
}

Assignment solve(const IlpProblem& problem) {
  check_scores(problem);
  Constraints con(problem);
  int m = problem.num_candidates();
  if (m == 0) return Assignment{{}, 0.0};

  // All-NULL incumbent: always feasible.
  std::vector<int> all_null(m, con.null_role);
  double best = canonical_objective(problem, all_null);
  std::vector<int> best_labels = all_null;

  // Expansion order: most decisive candidates (largest gap between their two
  // best admissible scores) first.
  std::vector<int> order(m);
  std::vector<double> gap(m, 0.0);
  for (int i = 0; i < m; ++i) {
    order[i] = i;
    double top = -HUGE_VAL, second = -HUGE_VAL;
    for (int c = 0; c < con.n_roles; ++c) {
      if (c != con.null_role && con.forbidden[c]) continue;
      double sc = problem.scores[i][c];
      if (sc > top) {
        second = top;
        top = sc;
      } else if (sc > second) {
        second = sc;
      }
    }
    gap[i] = second == -HUGE_VAL ? 0.0 : top - second;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&gap](int a, int b) { return gap[a] > gap[b]; });

  {
    Searcher s(problem, con, order, /*labels_by_score=*/true);
    search_best(s, 0, 0.0, best, best_labels);
  }

  // Re-derive the lexicographically smallest optimum in candidate order.
  std::vector<int> natural(m);
  for (int i = 0; i < m; ++i) natural[i] = i;
  Searcher s2(problem, con, natural, /*labels_by_score=*/false);
  std::vector<int> lex_labels;
  if (!search_lex(s2, 0, 0.0, best, lex_labels)) lex_labels = best_labels;
  return Assignment{lex_labels, canonical_objective(problem, lex_labels)};
}

Assignment brute_force(const IlpProblem& problem) {
  check_scores(problem);
  Constraints con(problem);
  int m = problem.num_candidates();
  double combos = 1.0;
  for (int i = 0; i < m; ++i) {
    combos *= static_cast<double>(con.n_roles);
    if (combos > 1e7)
      throw std::invalid_argument("instance too large for brute force");
  }
  if (m == 0) return Assignment{{}, 0.0};

  std::vector<int> labels(m, -1);
  std::vector<char> core_used(con.n_roles, 0);
  std::vector<int> best_labels;
  double best = -HUGE_VAL;
  // Lexicographic enumeration; the first optimum found is the tie winner.
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      double value = canonical_objective(problem, labels);
      if (value > best) {
        best = value;
        best_labels = labels;
      }
      return;
    }
    for (int c = 0; c < con.n_roles; ++c) {
      if (!con.admissible(i, c, labels, core_used)) continue;
      labels[i] = c;
      if (con.core[c]) core_used[c] = 1;
      self(self, i + 1);
      if (con.core[c]) core_used[c] = 0;
      labels[i] = -1;
    }
  };
  rec(rec, 0);
  return Assignment{best_labels, best};
}

std::vector<int> independent_argmax(const IlpProblem& problem) {
  std::vector<int> out(problem.num_candidates());
  int n_roles = static_cast<int>(problem.roles.labels.size());
  for (int i = 0; i < problem.num_candidates(); ++i) {
    int best = 0;
    for (int c = 1; c < n_roles; ++c)
      if (problem.scores[i][c] > problem.scores[i][best]) best = c;
    out[i] = best;
  }
  return out;
}

std::vector<int> decode_labels(const IlpProblem& problem, bool use_ilp) {
  if (!use_ilp) return independent_argmax(problem);
  return solve(problem).labels;
}

}  // namespace srl
