#include "announce/random.hpp"

namespace announce {

Model random_model(Rng& rng, int max_states, int max_agents, int max_atoms) {
  int ns = 1 + rng.below(max_states);
  int na = 1 + rng.below(max_agents);
  int np = 1 + rng.below(max_atoms);

  std::vector<std::string> states;
  for (int i = 0; i < ns; ++i) states.push_back("w" + std::to_string(i));
  const std::vector<std::string> agent_names = {"a", "b", "c"};
  const std::vector<std::string> atom_names = {"p", "q", "r"};
  std::vector<std::string> agents(agent_names.begin(), agent_names.begin() + na);

  std::map<std::string, std::vector<std::string>> val;
  for (int p = 0; p < np; ++p) {
    std::vector<std::string> ext;
    for (const auto& s : states)
      if (rng.flip()) ext.push_back(s);
    val[atom_names[p]] = std::move(ext);
  }

  std::map<std::string, std::vector<std::vector<std::string>>> parts;
  for (const auto& a : agents) {
    std::vector<std::string> order = states;
    rng.shuffle(order);
    std::vector<std::vector<std::string>> blocks;
    std::vector<std::string> cur;
    for (const auto& s : order) {
      cur.push_back(s);
      // Close the block with probability 1/2, always closing the last one.
      if (rng.flip()) {
        blocks.push_back(cur);
        cur.clear();
      }
    }
    if (!cur.empty()) blocks.push_back(cur);
    parts[a] = std::move(blocks);
  }

  return Model(std::move(states), std::move(agents), val, parts);
}

namespace {

// `fuel` caps the node count: binary connectives do not shrink `depth`, so
// without it the recursion would be a supercritical branching process.
Formula rand_formula(Rng& rng, const std::vector<std::string>& atoms,
                     const std::vector<std::string>& agents, int depth, bool with_ann,
                     int& fuel) {
  if (fuel <= 0) return Formula::atom(rng.pick(atoms));
  --fuel;
  int max_case = depth > 0 ? (with_ann ? 8 : 7) : 6;
  switch (rng.below(max_case)) {
    case 0: return Formula::atom(rng.pick(atoms));
    case 1: return Formula::atom(rng.pick(atoms));
    case 2: return rng.flip() ? Formula::top() : Formula::bottom();
    case 3: return Formula::neg(rand_formula(rng, atoms, agents, depth, with_ann, fuel));
    case 4:
      return Formula::conj(rand_formula(rng, atoms, agents, depth, with_ann, fuel),
                           rand_formula(rng, atoms, agents, depth, with_ann, fuel));
    case 5:
      return rng.flip()
                 ? Formula::disj(rand_formula(rng, atoms, agents, depth, with_ann, fuel),
                                 rand_formula(rng, atoms, agents, depth, with_ann, fuel))
                 : Formula::impl(rand_formula(rng, atoms, agents, depth, with_ann, fuel),
                                 rand_formula(rng, atoms, agents, depth, with_ann, fuel));
    case 6: {
      Formula body = rand_formula(rng, atoms, agents, depth - 1, with_ann, fuel);
      return rng.flip() ? Formula::know(rng.pick(agents), std::move(body))
                        : Formula::know_dual(rng.pick(agents), std::move(body));
    }
    default: {
      Formula psi = rand_formula(rng, atoms, agents, depth - 1, with_ann, fuel);
      Formula body = rand_formula(rng, atoms, agents, depth - 1, with_ann, fuel);
      return rng.flip() ? Formula::ann(std::move(psi), std::move(body))
                        : Formula::ann_dual(std::move(psi), std::move(body));
    }
  }
}

}  // namespace

Formula random_el_formula(Rng& rng, const std::vector<std::string>& atoms,
                          const std::vector<std::string>& agents, int depth) {
  int fuel = 24;
  return rand_formula(rng, atoms, agents, depth, false, fuel);
}

Formula random_pal_formula(Rng& rng, const std::vector<std::string>& atoms,
                           const std::vector<std::string>& agents, int depth) {
  int fuel = 24;
  return rand_formula(rng, atoms, agents, depth, true, fuel);
}

}  // namespace announce
