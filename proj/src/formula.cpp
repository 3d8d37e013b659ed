#include "announce/formula.hpp"

#include <algorithm>
#include <atomic>
#include <set>

namespace announce {

struct Formula::Node {
  Conn conn;
  std::string name;
  std::vector<std::string> group;
  std::shared_ptr<const Node> a, b;
  size_t hash = 0;
  std::uint32_t uid = 0;
};

namespace {

std::atomic<std::uint32_t> uid_counter{1};

size_t mix(size_t h, size_t v) { return h * 0x9e3779b97f4a7c15ull + v + 0x1234567; }

std::shared_ptr<const Formula::Node> make_node(Conn conn, std::string name,
                                               std::vector<std::string> group,
                                               std::shared_ptr<const Formula::Node> a,
                                               std::shared_ptr<const Formula::Node> b) {
  auto n = std::make_shared<Formula::Node>();
  n->conn = conn;
  n->name = std::move(name);
  n->group = std::move(group);
  n->a = std::move(a);
  n->b = std::move(b);
  size_t h = mix(0, static_cast<size_t>(conn));
  h = mix(h, std::hash<std::string>()(n->name));
  for (const auto& g : n->group) h = mix(h, std::hash<std::string>()(g));
  if (n->a) h = mix(h, n->a->hash);
  if (n->b) h = mix(h, n->b->hash);
  n->hash = h;
  n->uid = uid_counter.fetch_add(1, std::memory_order_relaxed);
  return n;
}

std::vector<std::string> canonical_group(std::vector<std::string> g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  for (const auto& a : g)
    if (a.empty()) fail(Errc::bad_input, "agent name must be nonempty");
  return g;
}

bool node_eq(const Formula::Node* x, const Formula::Node* y) {
  if (x == y) return true;
  if (x->hash != y->hash || x->conn != y->conn) return false;
  if (x->name != y->name || x->group != y->group) return false;
  if (!!x->a != !!y->a || !!x->b != !!y->b) return false;
  if (x->a && !node_eq(x->a.get(), y->a.get())) return false;
  if (x->b && !node_eq(x->b.get(), y->b.get())) return false;
  return true;
}

}  // namespace

Formula Formula::top() {
  static const Formula f{make_node(Conn::top, "", {}, nullptr, nullptr)};
  return f;
}
Formula Formula::bottom() {
  static const Formula f{make_node(Conn::bottom, "", {}, nullptr, nullptr)};
  return f;
}
Formula Formula::atom(std::string name) {
  if (name.empty()) fail(Errc::bad_input, "atom name must be nonempty");
  return Formula{make_node(Conn::atom, std::move(name), {}, nullptr, nullptr)};
}
Formula Formula::neg(Formula f) { return Formula{make_node(Conn::neg, "", {}, f.n_, nullptr)}; }
Formula Formula::conj(Formula a, Formula b) {
  return Formula{make_node(Conn::conj, "", {}, a.n_, b.n_)};
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula{make_node(Conn::disj, "", {}, a.n_, b.n_)};
}
Formula Formula::impl(Formula a, Formula b) {
  return Formula{make_node(Conn::impl, "", {}, a.n_, b.n_)};
}
Formula Formula::know(std::string agent, Formula f) {
  if (agent.empty()) fail(Errc::bad_input, "agent name must be nonempty");
  return Formula{make_node(Conn::know, std::move(agent), {}, f.n_, nullptr)};
}
Formula Formula::know_dual(std::string agent, Formula f) {
  return neg(know(std::move(agent), neg(std::move(f))));
}
Formula Formula::ann(Formula psi, Formula body) {
  return Formula{make_node(Conn::ann, "", {}, psi.n_, body.n_)};
}
Formula Formula::ann_dual(Formula psi, Formula body) {
  return neg(ann(std::move(psi), neg(std::move(body))));
}
Formula Formula::apal(Formula f) { return Formula{make_node(Conn::apal, "", {}, f.n_, nullptr)}; }
Formula Formula::apal_dual(Formula f) { return neg(apal(neg(std::move(f)))); }
Formula Formula::gal(std::vector<std::string> group, Formula f) {
  return Formula{make_node(Conn::gal, "", canonical_group(std::move(group)), f.n_, nullptr)};
}
Formula Formula::gal_dual(std::vector<std::string> group, Formula f) {
  return neg(gal(std::move(group), neg(std::move(f))));
}
Formula Formula::cal(std::vector<std::string> group, Formula f) {
  return Formula{make_node(Conn::cal, "", canonical_group(std::move(group)), f.n_, nullptr)};
}
Formula Formula::cal_dual(std::vector<std::string> group, Formula f) {
  return neg(cal(std::move(group), neg(std::move(f))));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}
Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = disj(out, fs[i]);
  return out;
}

Conn Formula::conn() const { return n_->conn; }
const std::string& Formula::name() const { return n_->name; }
const std::vector<std::string>& Formula::group() const { return n_->group; }

Formula Formula::child() const { return Formula{n_->a}; }
Formula Formula::left() const { return Formula{n_->a}; }
Formula Formula::right() const { return Formula{n_->b}; }

std::uint32_t Formula::id() const { return n_->uid; }
bool Formula::operator==(const Formula& o) const { return node_eq(n_.get(), o.n_.get()); }
size_t Formula::hash() const { return n_->hash; }

namespace {

// Precedence levels matching the grammar: implication 0, disjunction 1,
// conjunction 2, unary operators 3, atoms 4.
int level(const Formula::Node* n) {
  switch (n->conn) {
    case Conn::impl: return 0;
    case Conn::disj: return 1;
    case Conn::conj: return 2;
    case Conn::top:
    case Conn::bottom:
    case Conn::atom: return 4;
    default: return 3;
  }
}

void join_group(std::string& out, const std::vector<std::string>& g) {
  out += '{';
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) out += ',';
    out += g[i];
  }
  out += '}';
}

void pr(std::string& out, const Formula::Node* n, int need);

void pr_at(std::string& out, const Formula::Node* n, int need) {
  if (level(n) < need) {
    out += '(';
    pr(out, n, 0);
    out += ')';
  } else {
    pr(out, n, 0);
  }
}

void pr(std::string& out, const Formula::Node* n, int) {
  switch (n->conn) {
    case Conn::top: out += "true"; break;
    case Conn::bottom: out += "false"; break;
    case Conn::atom: out += n->name; break;
    case Conn::neg:
      out += '~';
      pr_at(out, n->a.get(), 3);
      break;
    case Conn::know:
      out += "K ";
      out += n->name;
      out += ' ';
      pr_at(out, n->a.get(), 3);
      break;
    case Conn::ann:
      out += '[';
      pr_at(out, n->a.get(), 0);
      out += ']';
      pr_at(out, n->b.get(), 3);
      break;
    case Conn::apal:
      out += "[!]";
      pr_at(out, n->a.get(), 3);
      break;
    case Conn::gal:
      out += "[G";
      join_group(out, n->group);
      out += ']';
      pr_at(out, n->a.get(), 3);
      break;
    case Conn::cal:
      out += "[C";
      join_group(out, n->group);
      out += ']';
      pr_at(out, n->a.get(), 3);
      break;
    case Conn::conj:
      pr_at(out, n->a.get(), 2);
      out += " & ";
      pr_at(out, n->b.get(), 3);
      break;
    case Conn::disj:
      pr_at(out, n->a.get(), 1);
      out += " | ";
      pr_at(out, n->b.get(), 2);
      break;
    case Conn::impl:
      pr_at(out, n->a.get(), 1);
      out += " -> ";
      pr_at(out, n->b.get(), 0);
      break;
  }
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  pr(out, n_.get(), 0);
  return out;
}

int modal_depth(const Formula& f) {
  switch (f.conn()) {
    case Conn::top:
    case Conn::bottom:
    case Conn::atom: return 0;
    case Conn::neg: return modal_depth(f.child());
    case Conn::conj:
    case Conn::disj:
    case Conn::impl: return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case Conn::know: return 1 + modal_depth(f.child());
    default:
      fail(Errc::not_epistemic, "modal depth is defined for announcement-free formulas only");
  }
}

bool is_el(const Formula& f) {
  switch (f.conn()) {
    case Conn::top:
    case Conn::bottom:
    case Conn::atom: return true;
    case Conn::neg:
    case Conn::know: return is_el(f.child());
    case Conn::conj:
    case Conn::disj:
    case Conn::impl: return is_el(f.left()) && is_el(f.right());
    default: return false;
  }
}

namespace {

void flatten_conj(const Formula& f, std::vector<Formula>& out) {
  if (f.conn() == Conn::conj) {
    flatten_conj(f.left(), out);
    flatten_conj(f.right(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

bool is_el_group(const Formula& f, const std::vector<std::string>& group) {
  std::set<std::string> want(group.begin(), group.end());
  if (want.empty()) return f.conn() == Conn::top;
  std::vector<Formula> parts;
  flatten_conj(f, parts);
  if (parts.size() != want.size()) return false;
  std::set<std::string> seen;
  for (const Formula& p : parts) {
    if (p.conn() != Conn::know || !is_el(p.child())) return false;
    if (!want.count(p.name())) return false;
    if (!seen.insert(p.name()).second) return false;
  }
  return seen == want;
}

namespace {

void collect(const Formula& f, std::set<std::string>& atoms, std::set<std::string>& agents) {
  switch (f.conn()) {
    case Conn::top:
    case Conn::bottom: return;
    case Conn::atom: atoms.insert(f.name()); return;
    case Conn::neg: collect(f.child(), atoms, agents); return;
    case Conn::know:
      agents.insert(f.name());
      collect(f.child(), atoms, agents);
      return;
    case Conn::apal: collect(f.child(), atoms, agents); return;
    case Conn::gal:
    case Conn::cal:
      for (const auto& a : f.group()) agents.insert(a);
      collect(f.child(), atoms, agents);
      return;
    case Conn::conj:
    case Conn::disj:
    case Conn::impl:
    case Conn::ann:
      collect(f.left(), atoms, agents);
      collect(f.right(), atoms, agents);
      return;
  }
}

}  // namespace

std::vector<std::string> atoms_of(const Formula& f) {
  std::set<std::string> atoms, agents;
  collect(f, atoms, agents);
  return {atoms.begin(), atoms.end()};
}

std::vector<std::string> agents_of(const Formula& f) {
  std::set<std::string> atoms, agents;
  collect(f, atoms, agents);
  return {agents.begin(), agents.end()};
}

}  // namespace announce
