#pragma once

#include <map>
#include <string>
#include <vector>

#include "announce/errors.hpp"
#include "announce/stateset.hpp"

namespace announce {

// One agent's equivalence relation, stored as a partition into blocks.
struct AgentPartition {
  std::vector<StateSet> blocks;  // ordered by least member
  std::vector<int> block_of;     // state index -> block index
};

// Finite multi-agent S5 model. Relations are equivalence relations by
// construction: they are only ever supplied as partitions. States, agents and
// atoms are strings at the boundary and dense indices internally; the state
// order given at construction is the canonical order used everywhere.
// Immutable after construction; safe to share across threads.
class Model {
public:
  // `valuation` maps each atom to the states where it holds; `partitions`
  // maps each agent to its blocks (every agent needs one, covering all states).
  Model(std::vector<std::string> states,
        std::vector<std::string> agents,
        const std::map<std::string, std::vector<std::string>>& valuation,
        const std::map<std::string, std::vector<std::vector<std::string>>>& partitions);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  int num_props() const { return static_cast<int>(props_.size()); }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& props() const { return props_; }  // sorted

  int state_index(const std::string& s) const;  // throws UnknownState
  int agent_index(const std::string& a) const;  // throws UnknownAgent
  int prop_index(const std::string& p) const;   // -1 when not in the signature

  bool holds(int state, int prop) const { return extensions_[prop].test(state); }
  const StateSet& prop_extension(int prop) const { return extensions_[prop]; }
  const AgentPartition& partition(int agent) const { return parts_[agent]; }
  const StateSet& block(int agent, int state) const {
    return parts_[agent].blocks[parts_[agent].block_of[state]];
  }

  StateSet all_states() const { return StateSet::full(num_states()); }

  // Sub-model induced by `keep`; state names, order and valuation survive,
  // blocks are intersected and empty ones dropped.
  Model restrict(const StateSet& keep) const;
  Model restrict(const std::vector<std::string>& keep) const;

  std::vector<std::string> equiv_class(const std::string& agent, const std::string& state) const;
  std::vector<std::string> names_of(const StateSet& set) const;
  StateSet set_of(const std::vector<std::string>& names) const;

private:
  std::vector<std::string> states_;
  std::vector<std::string> agents_;
  std::vector<std::string> props_;
  std::map<std::string, int> state_ix_;
  std::map<std::string, int> agent_ix_;
  std::map<std::string, int> prop_ix_;
  std::vector<StateSet> extensions_;  // per prop
  std::vector<AgentPartition> parts_;
};

struct PointedModel {
  Model model;
  std::string point;

  int point_index() const { return model.state_index(point); }
};

// Composite programs: an agent step moves along that agent's relation, a test
// keeps the current states satisfying the atom.
struct ProgramStep {
  bool is_test = false;
  std::string name;  // agent or atom
};
using Program = std::vector<ProgramStep>;

Program parse_program(const std::string& text);  // "s;r?;e;l?"
StateSet run_program(const Model& m, const Program& p, int start);

// States reachable from `start` via the union of the given agents' relations.
StateSet reach(const Model& m, const std::vector<std::string>& agents, int start);

}  // namespace announce
