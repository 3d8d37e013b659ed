#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "announce/formula.hpp"
#include "announce/model.hpp"

namespace announce {

struct CheckStats {
  // Announcement sets actually tried by quantifier clauses; monotone over the
  // context's lifetime and reproducible (enumeration order is fixed).
  std::uint64_t candidates_enumerated = 0;
  std::uint64_t quantifier_evals = 0;
};

struct CheckOptions {
  // Cap on the work of a single quantifier evaluation (sets scanned during
  // enumeration plus candidates tried). Exceeding it raises
  // QuantifierBudgetExceeded instead of silently truncating.
  std::uint64_t budget = 0;  // 0 = use default_budget()
  // Evaluate the coalition box clause verbatim (the complement coalition may
  // pick an announcement that is false at the evaluation point, which
  // trivialises most instances) instead of the dual reading.
  bool cal_literal = false;
};

// ANNOUNCE_BUDGET environment variable, else 2^22.
std::uint64_t default_budget();

// The quantifier candidate on which a universal clause failed; kept for
// diagnostics when a formula comes out false.
struct FailingCandidate {
  std::string box;
  std::string state;
  std::vector<std::string> announcement;
};

struct CheckReport {
  std::string formula;
  std::string point;
  bool value = false;
  std::uint64_t candidates_enumerated = 0;
  double elapsed_ms = 0.0;
};

// Evaluator for one model. Quantifiers range over announcement extensions:
// nonempty unions of stable bisimulation classes of the current restriction
// (atoms = the model's valuation atoms), which are exactly the sets definable
// by announcement-free formulas. Group quantifiers intersect per-agent sets
// X_a(B) = { s : [s]_a included in B } over definable B. Results are memoised
// by (restriction, state, subformula); restrictions never materialise new
// models. One context per thread; the underlying model may be shared.
class CheckContext {
public:
  explicit CheckContext(const Model& m, CheckOptions opt = {});
  ~CheckContext();
  CheckContext(const CheckContext&) = delete;
  CheckContext& operator=(const CheckContext&) = delete;

  bool check(const std::string& state, const Formula& f);
  bool check(int state, const Formula& f);
  bool check_validity(const Formula& f);  // true at every state
  StateSet extension(const Formula& f);
  StateSet extension(const StateSet& within, const Formula& f);

  // Deterministic list (ascending set order, empty set excluded) of candidate
  // extensions of group announcements by `group`; {} yields the full state
  // set. Same enumeration the quantifier clauses use.
  std::vector<StateSet> gal_sets(const std::vector<std::string>& group);

  const Model& model() const { return m_; }
  const CheckStats& stats() const { return stats_; }
  const std::optional<FailingCandidate>& failing_candidate() const { return failing_; }

private:
  struct Impl;
  const Model& m_;
  CheckStats stats_;
  std::optional<FailingCandidate> failing_;
  Impl* impl_;
  friend struct Impl;
};

}  // namespace announce
