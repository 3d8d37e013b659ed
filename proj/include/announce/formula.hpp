#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "announce/errors.hpp"

namespace announce {

// Connectives kept after parsing. Diamonds and the knowledge dual are sugar
// and normalise to negation around the matching box at construction time:
//   Kh a f        ->  ~K a ~f
//   <psi> f       ->  ~[psi]~f
//   <!> f         ->  ~[!]~f
//   <G{..}> f     ->  ~[G{..}]~f
//   <C{..}> f     ->  ~[C{..}]~f
enum class Conn : std::uint8_t {
  top,
  bottom,
  atom,
  neg,
  conj,
  disj,
  impl,
  know,   // K a f
  ann,    // [psi] f
  apal,   // [!] f
  gal,    // [G{..}] f
  cal,    // [C{..}] f
};

// Immutable formula tree with shared subterms. Copying is cheap (one shared
// pointer); equality is structural.
class Formula {
public:
  Formula() : Formula(top()) {}

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula impl(Formula a, Formula b);
  static Formula know(std::string agent, Formula f);
  static Formula know_dual(std::string agent, Formula f);
  static Formula ann(Formula psi, Formula body);
  static Formula ann_dual(Formula psi, Formula body);
  static Formula apal(Formula f);
  static Formula apal_dual(Formula f);
  static Formula gal(std::vector<std::string> group, Formula f);
  static Formula gal_dual(std::vector<std::string> group, Formula f);
  static Formula cal(std::vector<std::string> group, Formula f);
  static Formula cal_dual(std::vector<std::string> group, Formula f);

  // Left-associated folds; the empty conjunction is top, the empty
  // disjunction is bottom.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Conn conn() const;
  const std::string& name() const;                // atom name or know agent
  const std::vector<std::string>& group() const;  // gal/cal, sorted unique
  Formula child() const;                          // unary body (neg/know/apal/gal/cal)
  Formula left() const;                           // binary lhs; for ann: the announcement
  Formula right() const;                          // binary rhs; for ann: the body

  std::uint32_t id() const;  // unique per node, stable for the node's lifetime
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
  size_t hash() const;

  // Deterministic text in the concrete grammar; parse(str()) == *this.
  std::string str() const;

  struct Node;
  const Node* node() const { return n_.get(); }

private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Nesting depth of K; defined for epistemic formulas only and throws
// NotEpistemic when the formula contains announcements or quantifiers.
int modal_depth(const Formula& f);

// Quantifier- and announcement-free?
bool is_el(const Formula& f);

// A conjunction with exactly one conjunct K_a phi_a (phi_a in EL) per agent in
// `group` and nothing else; the empty group accepts exactly `top`.
bool is_el_group(const Formula& f, const std::vector<std::string>& group);

std::vector<std::string> atoms_of(const Formula& f);
std::vector<std::string> agents_of(const Formula& f);

}  // namespace announce
