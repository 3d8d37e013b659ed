#include "announce/bisim.hpp"

#include <algorithm>
#include <map>

namespace announce {

namespace {

std::vector<std::string> dedup_atoms(const std::vector<std::string>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms)
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

// Blocks are rebuilt from class ids in order of first occurrence scanning
// states ascending, which keeps them sorted by least member.
void rebuild_blocks(Partition& p, const StateSet& active, int nstates) {
  std::vector<int> old_to_new(nstates, -1);
  std::vector<int> new_class(nstates, -1);
  p.blocks.clear();
  int next = 0;
  for (int s = 0; s < nstates; ++s) {
    if (!active.test(s)) continue;
    int c = p.class_of[s];
    if (old_to_new[c] == -1) {
      old_to_new[c] = next++;
      p.blocks.emplace_back();
    }
    new_class[s] = old_to_new[c];
    p.blocks[old_to_new[c]].push_back(s);
  }
  p.class_of = std::move(new_class);
}

Partition level0(const Model& m, const StateSet& active, const std::vector<std::string>& atoms) {
  Partition p;
  p.atoms = atoms;
  p.class_of.assign(m.num_states(), -1);
  std::vector<int> atom_ids;
  for (const auto& a : atoms) atom_ids.push_back(m.prop_index(a));
  std::map<std::vector<bool>, int> key_to_class;
  for (int s = 0; s < m.num_states(); ++s) {
    if (!active.test(s)) continue;
    std::vector<bool> key;
    key.reserve(atom_ids.size());
    for (int id : atom_ids) key.push_back(id >= 0 && m.holds(s, id));
    auto [it, fresh] = key_to_class.emplace(std::move(key), static_cast<int>(key_to_class.size()));
    p.class_of[s] = it->second;
    (void)fresh;
  }
  rebuild_blocks(p, active, m.num_states());
  return p;
}

// One refinement round; returns false when nothing split.
bool refine_step(const Model& m, const StateSet& active, Partition& p) {
  using Sig = std::pair<int, std::vector<std::vector<int>>>;
  std::map<Sig, int> sig_to_class;
  std::vector<int> next_class(m.num_states(), -1);
  for (int s = 0; s < m.num_states(); ++s) {
    if (!active.test(s)) continue;
    Sig sig;
    sig.first = p.class_of[s];
    sig.second.reserve(m.num_agents());
    for (int a = 0; a < m.num_agents(); ++a) {
      std::vector<int> classes;
      (m.block(a, s) & active).for_each([&](int t) { classes.push_back(p.class_of[t]); });
      std::sort(classes.begin(), classes.end());
      classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
      sig.second.push_back(std::move(classes));
    }
    auto [it, fresh] = sig_to_class.emplace(std::move(sig), static_cast<int>(sig_to_class.size()));
    next_class[s] = it->second;
    (void)fresh;
  }
  bool changed = static_cast<int>(sig_to_class.size()) != p.num_blocks();
  p.class_of = std::move(next_class);
  rebuild_blocks(p, active, m.num_states());
  return changed;
}

// Partitions for levels 0..n (or to the fixpoint when n is negative).
std::vector<Partition> refine_chain(const Model& m, const StateSet& active,
                                    const std::vector<std::string>& atoms, int n) {
  std::vector<Partition> levels;
  levels.push_back(level0(m, active, atoms));
  levels.back().level = 0;
  int limit = n >= 0 ? n : m.num_states() + 1;
  for (int l = 1; l <= limit; ++l) {
    Partition next = levels.back();
    bool changed = refine_step(m, active, next);
    next.level = l;
    if (!changed && n < 0) break;
    levels.push_back(std::move(next));
    if (!changed && n >= 0) {
      // Stable: remaining levels are identical, reuse instead of re-refining.
      while (static_cast<int>(levels.size()) <= n) {
        Partition copy = levels.back();
        copy.level = static_cast<int>(levels.size());
        levels.push_back(std::move(copy));
      }
      break;
    }
  }
  return levels;
}

}  // namespace

Partition nbisim_within(const Model& m, const StateSet& active,
                        const std::vector<std::string>& atoms, int n) {
  if (n < 0) fail(Errc::bad_input, "bisimulation depth must be >= 0");
  auto as = dedup_atoms(atoms);
  auto levels = refine_chain(m, active, as, n);
  Partition p = std::move(levels.back());
  p.level = n;
  return p;
}

Partition nbisim(const Model& m, const std::vector<std::string>& atoms, int n) {
  return nbisim_within(m, m.all_states(), atoms, n);
}

Partition stable_bisim_within(const Model& m, const StateSet& active,
                              const std::vector<std::string>& atoms) {
  auto as = dedup_atoms(atoms);
  auto levels = refine_chain(m, active, as, -1);
  Partition p = std::move(levels.back());
  p.level.reset();
  return p;
}

Partition stable_bisim(const Model& m, const std::vector<std::string>& atoms) {
  return stable_bisim_within(m, m.all_states(), atoms);
}

namespace {

// phi[level][block]: characteristic formulas, shared bottom-up.
std::vector<std::vector<Formula>> class_formula_table(const Model& m,
                                                      const std::vector<Partition>& levels,
                                                      const std::vector<std::string>& atoms) {
  std::vector<int> atom_ids;
  for (const auto& a : atoms) atom_ids.push_back(m.prop_index(a));

  std::vector<std::vector<Formula>> phi(levels.size());

  // Level 0: the valuation literal conjunction, in the given atom order.
  for (const auto& blk : levels[0].blocks) {
    int s = blk.front();
    std::vector<Formula> lits;
    for (size_t i = 0; i < atoms.size(); ++i) {
      bool pos = atom_ids[i] >= 0 && m.holds(s, atom_ids[i]);
      Formula at = Formula::atom(atoms[i]);
      lits.push_back(pos ? at : Formula::neg(at));
    }
    phi[0].push_back(Formula::conj_all(lits));
  }

  for (size_t l = 1; l < levels.size(); ++l) {
    const Partition& prev = levels[l - 1];
    for (const auto& blk : levels[l].blocks) {
      int s = blk.front();
      Formula f = phi[0][levels[0].class_of[s]];
      for (int a = 0; a < m.num_agents(); ++a) {
        std::vector<int> hit;
        m.block(a, s).for_each([&](int t) {
          if (prev.class_of[t] >= 0) hit.push_back(prev.class_of[t]);
        });
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        std::vector<Formula> alts;
        for (int c : hit) {
          f = Formula::conj(f, Formula::know_dual(m.agents()[a], phi[l - 1][c]));
          alts.push_back(phi[l - 1][c]);
        }
        f = Formula::conj(f, Formula::know(m.agents()[a], Formula::disj_all(alts)));
      }
      phi[l].push_back(f);
    }
  }
  return phi;
}

}  // namespace

Formula distinguishing_formula(const Model& m, const std::vector<std::string>& atoms, int n,
                               const std::string& state) {
  if (n < 0) fail(Errc::bad_input, "bisimulation depth must be >= 0");
  int s = m.state_index(state);
  auto as = dedup_atoms(atoms);
  auto levels = refine_chain(m, m.all_states(), as, n);
  auto phi = class_formula_table(m, levels, as);
  return phi[n][levels[n].class_of[s]];
}

std::vector<Formula> class_formulas(const Model& m, const std::vector<std::string>& atoms, int n) {
  if (n < 0) fail(Errc::bad_input, "bisimulation depth must be >= 0");
  auto as = dedup_atoms(atoms);
  auto levels = refine_chain(m, m.all_states(), as, n);
  auto phi = class_formula_table(m, levels, as);
  return phi[n];
}

std::vector<Formula> stable_class_formulas(const Model& m, const std::vector<std::string>& atoms) {
  auto as = dedup_atoms(atoms);
  auto levels = refine_chain(m, m.all_states(), as, -1);
  auto phi = class_formula_table(m, levels, as);
  return phi.back();
}

ClosedSets::ClosedSets(const Model& m, const std::vector<std::string>& atoms) {
  Partition p = stable_bisim(m, atoms);
  universe_ = m.num_states();
  for (const auto& blk : p.blocks) {
    StateSet bs(universe_);
    for (int s : blk) bs.set(s);
    block_sets_.push_back(std::move(bs));
  }
  if (block_sets_.size() > 62)
    fail(Errc::bad_input, "too many bisimulation classes to enumerate (" +
                              std::to_string(block_sets_.size()) + " > 62)");
  total_ = (1ull << block_sets_.size()) - 1;
}

std::optional<StateSet> ClosedSets::next() {
  if (mask_ >= total_) return std::nullopt;
  ++mask_;
  StateSet out(universe_);
  for (size_t b = 0; b < block_sets_.size(); ++b)
    if ((mask_ >> b) & 1) out |= block_sets_[b];
  return out;
}

}  // namespace announce
