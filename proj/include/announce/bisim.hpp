#pragma once

#include <optional>
#include <string>
#include <vector>

#include "announce/formula.hpp"
#include "announce/model.hpp"

namespace announce {

// Partition of (a subset of) a model's states. Blocks are ordered by least
// member and list members ascending; class_of is -1 for states outside the
// covered set. level is empty when the partition is the stable fixpoint.
struct Partition {
  std::optional<int> level;
  std::vector<std::string> atoms;
  std::vector<std::vector<int>> blocks;
  std::vector<int> class_of;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  bool same_blocks(const Partition& o) const { return blocks == o.blocks; }
};

// Depth-bounded bisimulation equivalence over the atoms in `atoms`:
// level 0 groups states by their valuation restricted to `atoms`; level m
// refines level m-1 by agreement, for every agent, on the set of level-(m-1)
// classes reachable along that agent's relation. Atoms absent from the model
// are uniformly false and never split anything.
Partition nbisim(const Model& m, const std::vector<std::string>& atoms, int n);

// Fixpoint of the refinement above (reached after at most |S| rounds).
Partition stable_bisim(const Model& m, const std::vector<std::string>& atoms);

// Variants over an induced sub-model given by `active` (used by the model
// checker so announcement results never need materialising).
Partition nbisim_within(const Model& m, const StateSet& active,
                        const std::vector<std::string>& atoms, int n);
Partition stable_bisim_within(const Model& m, const StateSet& active,
                              const std::vector<std::string>& atoms);

// Characteristic formula of `state`'s level-n class: modal depth <= n, and its
// truth set in the model is exactly that class. Subformulas are shared per
// (class, level), so the result is a compact DAG.
Formula distinguishing_formula(const Model& m, const std::vector<std::string>& atoms, int n,
                               const std::string& state);

// One characteristic formula per level-n block, in block order.
std::vector<Formula> class_formulas(const Model& m, const std::vector<std::string>& atoms, int n);
// Same at the stable level.
std::vector<Formula> stable_class_formulas(const Model& m, const std::vector<std::string>& atoms);

// Enumerates every nonempty union of stable_bisim blocks, i.e. all nonempty
// sets definable by announcement-free formulas over `atoms`. Deterministic
// order: block-index bitmasks counting up from 1, block 0 the least
// significant bit.
class ClosedSets {
public:
  ClosedSets(const Model& m, const std::vector<std::string>& atoms);
  std::optional<StateSet> next();
  std::uint64_t total() const { return total_; }

private:
  std::vector<StateSet> block_sets_;
  std::uint64_t mask_ = 0;
  std::uint64_t total_ = 0;
  int universe_ = 0;
};

}  // namespace announce
