#include "announce/model.hpp"

#include <algorithm>
#include <set>

namespace announce {

namespace {

void check_unique(const std::vector<std::string>& xs, const char* what) {
  std::set<std::string> seen;
  for (const auto& x : xs) {
    if (x.empty()) fail(Errc::bad_input, std::string(what) + " name must be nonempty");
    if (!seen.insert(x).second) fail(Errc::bad_input, std::string("duplicate ") + what + " \"" + x + "\"");
  }
}

}  // namespace

Model::Model(std::vector<std::string> states,
             std::vector<std::string> agents,
             const std::map<std::string, std::vector<std::string>>& valuation,
             const std::map<std::string, std::vector<std::vector<std::string>>>& partitions)
    : states_(std::move(states)), agents_(std::move(agents)) {
  if (states_.empty()) fail(Errc::bad_input, "a model needs at least one state");
  check_unique(states_, "state");
  check_unique(agents_, "agent");
  for (size_t i = 0; i < states_.size(); ++i) state_ix_[states_[i]] = static_cast<int>(i);
  for (size_t i = 0; i < agents_.size(); ++i) agent_ix_[agents_[i]] = static_cast<int>(i);

  // Atom signature: exactly the keys of the valuation (atom -> states where it
  // holds), already sorted because the map is ordered.
  for (const auto& [p, sts] : valuation) {
    if (p.empty()) fail(Errc::bad_input, "atom name must be nonempty");
    props_.push_back(p);
    for (const auto& st : sts) {
      if (!state_ix_.count(st))
        fail(Errc::unknown_state, "valuation mentions unknown state \"" + st + "\"");
    }
  }
  for (size_t i = 0; i < props_.size(); ++i) prop_ix_[props_[i]] = static_cast<int>(i);
  extensions_.assign(props_.size(), StateSet(num_states()));
  for (const auto& [p, sts] : valuation) {
    StateSet& ext = extensions_[prop_ix_.at(p)];
    for (const auto& st : sts) ext.set(state_ix_.at(st));
  }

  for (const auto& [agent, _] : partitions) {
    if (!agent_ix_.count(agent)) fail(Errc::unknown_agent, "partition given for unknown agent \"" + agent + "\"");
  }

  parts_.resize(agents_.size());
  for (size_t a = 0; a < agents_.size(); ++a) {
    const std::string& agent = agents_[a];
    AgentPartition& part = parts_[a];
    part.block_of.assign(states_.size(), -1);
    auto it = partitions.find(agent);
    const std::vector<std::vector<std::string>> no_blocks;
    const auto& blocks = it == partitions.end() ? no_blocks : it->second;
    for (const auto& blk : blocks) {
      if (blk.empty()) continue;
      StateSet bs(num_states());
      for (const auto& st : blk) {
        auto sit = state_ix_.find(st);
        if (sit == state_ix_.end())
          fail(Errc::unknown_state, "agent \"" + agent + "\" block mentions unknown state \"" + st + "\"");
        if (part.block_of[sit->second] != -1 || bs.test(sit->second))
          fail(Errc::overlapping_blocks,
               "agent \"" + agent + "\": state \"" + st + "\" occurs in more than one block");
        bs.set(sit->second);
      }
      int ix = static_cast<int>(part.blocks.size());
      bs.for_each([&](int s) { part.block_of[s] = ix; });
      part.blocks.push_back(std::move(bs));
    }
    for (size_t s = 0; s < states_.size(); ++s) {
      if (part.block_of[s] == -1)
        fail(Errc::uncovered_state,
             "agent \"" + agent + "\": state \"" + states_[s] + "\" is covered by no block");
    }
    // Canonical block order: by least member.
    std::vector<int> order(part.blocks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return part.blocks[x].first() < part.blocks[y].first(); });
    std::vector<StateSet> sorted;
    sorted.reserve(part.blocks.size());
    for (int ix : order) sorted.push_back(std::move(part.blocks[ix]));
    part.blocks = std::move(sorted);
    for (size_t i = 0; i < part.blocks.size(); ++i)
      part.blocks[i].for_each([&](int s) { part.block_of[s] = static_cast<int>(i); });
  }
}

int Model::state_index(const std::string& s) const {
  auto it = state_ix_.find(s);
  if (it == state_ix_.end()) fail(Errc::unknown_state, "unknown state \"" + s + "\"");
  return it->second;
}

int Model::agent_index(const std::string& a) const {
  auto it = agent_ix_.find(a);
  if (it == agent_ix_.end()) fail(Errc::unknown_agent, "unknown agent \"" + a + "\"");
  return it->second;
}

int Model::prop_index(const std::string& p) const {
  auto it = prop_ix_.find(p);
  return it == prop_ix_.end() ? -1 : it->second;
}

Model Model::restrict(const StateSet& keep) const {
  if (keep.universe() != num_states()) fail(Errc::bad_input, "restriction set has wrong universe");
  if (keep.empty()) fail(Errc::empty_restriction, "cannot restrict a model to the empty state set");

  std::vector<std::string> new_states;
  keep.for_each([&](int s) { new_states.push_back(states_[s]); });

  // Atoms whose surviving extension is empty drop out of the signature.
  std::map<std::string, std::vector<std::string>> val;
  for (int p = 0; p < num_props(); ++p) {
    std::vector<std::string> where;
    (extensions_[p] & keep).for_each([&](int s) { where.push_back(states_[s]); });
    if (!where.empty()) val[props_[p]] = std::move(where);
  }

  std::map<std::string, std::vector<std::vector<std::string>>> parts;
  for (int a = 0; a < num_agents(); ++a) {
    std::vector<std::vector<std::string>> blocks;
    for (const StateSet& b : parts_[a].blocks) {
      std::vector<std::string> blk;
      (b & keep).for_each([&](int s) { blk.push_back(states_[s]); });
      if (!blk.empty()) blocks.push_back(std::move(blk));
    }
    parts[agents_[a]] = std::move(blocks);
  }
  return Model(std::move(new_states), agents_, val, parts);
}

Model Model::restrict(const std::vector<std::string>& keep) const {
  return restrict(set_of(keep));
}

std::vector<std::string> Model::equiv_class(const std::string& agent, const std::string& state) const {
  return names_of(block(agent_index(agent), state_index(state)));
}

std::vector<std::string> Model::names_of(const StateSet& set) const {
  std::vector<std::string> out;
  set.for_each([&](int s) { out.push_back(states_[s]); });
  return out;
}

StateSet Model::set_of(const std::vector<std::string>& names) const {
  StateSet out(num_states());
  for (const auto& n : names) out.set(state_index(n));
  return out;
}

Program parse_program(const std::string& text) {
  Program prog;
  size_t i = 0;
  while (i <= text.size()) {
    size_t j = text.find(';', i);
    if (j == std::string::npos) j = text.size();
    std::string step = text.substr(i, j - i);
    // trim
    while (!step.empty() && (step.front() == ' ' || step.front() == '\t')) step.erase(step.begin());
    while (!step.empty() && (step.back() == ' ' || step.back() == '\t')) step.pop_back();
    if (step.empty()) fail(Errc::bad_input, "empty program step");
    if (step.back() == '?')
      prog.push_back({true, step.substr(0, step.size() - 1)});
    else
      prog.push_back({false, step});
    if (j == text.size()) break;
    i = j + 1;
  }
  if (prog.empty()) fail(Errc::bad_input, "empty program");
  return prog;
}

StateSet run_program(const Model& m, const Program& p, int start) {
  if (p.empty()) fail(Errc::bad_input, "empty program");
  StateSet cur(m.num_states());
  cur.set(start);
  for (const ProgramStep& step : p) {
    if (step.is_test) {
      int prop = m.prop_index(step.name);
      if (prop < 0) fail(Errc::unknown_prop, "program tests unknown atom \"" + step.name + "\"");
      cur &= m.prop_extension(prop);
    } else {
      int a = m.agent_index(step.name);
      StateSet next(m.num_states());
      cur.for_each([&](int s) { next |= m.block(a, s); });
      cur = next;
    }
  }
  return cur;
}

StateSet reach(const Model& m, const std::vector<std::string>& agents, int start) {
  std::vector<int> ag;
  ag.reserve(agents.size());
  for (const auto& a : agents) ag.push_back(m.agent_index(a));
  StateSet seen(m.num_states());
  seen.set(start);
  std::vector<int> queue{start};
  while (!queue.empty()) {
    int s = queue.back();
    queue.pop_back();
    for (int a : ag) {
      m.block(a, s).for_each([&](int t) {
        if (!seen.test(t)) {
          seen.set(t);
          queue.push_back(t);
        }
      });
    }
  }
  return seen;
}

}  // namespace announce
