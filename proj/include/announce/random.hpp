#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "announce/formula.hpp"
#include "announce/model.hpp"

namespace announce {

// Deterministic source for the property suites. mt19937_64 has a fully
// specified sequence and values are reduced by modulo, so streams are
// identical across platforms and standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
  bool flip() { return (gen_() & 1) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(static_cast<int>(xs.size()))];
  }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (int i = static_cast<int>(xs.size()) - 1; i > 0; --i)
      std::swap(xs[i], xs[below(i + 1)]);
  }

private:
  std::mt19937_64 gen_;
};

// Random S5 model: states w0..; agents drawn from a,b,c; atoms from p,q,r.
// Each agent gets a uniformly random partition, each atom a coin-flip
// valuation.
Model random_model(Rng& rng, int max_states, int max_agents, int max_atoms);

// Random announcement-free formula with modal_depth <= depth.
Formula random_el_formula(Rng& rng, const std::vector<std::string>& atoms,
                          const std::vector<std::string>& agents, int depth);

// Random formula that may additionally contain announcement boxes/diamonds.
Formula random_pal_formula(Rng& rng, const std::vector<std::string>& atoms,
                           const std::vector<std::string>& agents, int depth);

}  // namespace announce
