#include "announce/check.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "announce/bisim.hpp"

namespace announce {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("ANNOUNCE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      fail(Errc::bad_input, "ANNOUNCE_BUDGET must be a positive integer, got \"" +
                                std::string(env) + "\"");
    return v;
  }
  return 1ull << 22;
}

namespace {

struct BudgetGuard {
  std::uint64_t used = 0;
  std::uint64_t budget = 0;
  void charge(std::uint64_t k = 1) {
    used += k;
    if (used > budget)
      fail(Errc::quantifier_budget_exceeded,
           "quantifier enumeration exceeded the budget of " + std::to_string(budget) +
               " candidates; raise --budget or ANNOUNCE_BUDGET");
  }
};

struct QKey {
  StateSet r;
  int s = 0;
  int node = 0;
  bool operator==(const QKey& o) const { return s == o.s && node == o.node && r == o.r; }
};

struct QKeyHash {
  size_t operator()(const QKey& k) const {
    size_t h = k.r.hash();
    h = h * 0x9e3779b97f4a7c15ull + static_cast<size_t>(k.s);
    h = h * 0x9e3779b97f4a7c15ull + static_cast<size_t>(k.node);
    return h;
  }
};

// Flat compiled form of a formula DAG: children by index, names resolved
// against the model once. Unknown atoms resolve to "false"; unknown agents
// are a signature mismatch.
struct CNode {
  Conn conn = Conn::top;
  int a = -1, b = -1;
  int prop = -1;
  int agent = -1;
  std::vector<int> group;
  Formula src;
};

struct CachedPartition {
  std::vector<StateSet> blocks;
  std::vector<int> class_of;
};

}  // namespace

struct CheckContext::Impl {
  const Model& m;
  int n;
  CheckOptions opt;
  CheckContext* owner;

  std::vector<CNode> nodes;
  std::unordered_map<std::uint32_t, int> node_of_uid;

  // Scratch truth table per (node, state), valid for the scope whose epoch
  // matches the stamp; a fresh epoch per restriction scope makes invalidation
  // free of charge.
  std::vector<std::uint8_t> val;
  std::vector<std::uint64_t> stamp;
  std::uint64_t epoch_counter = 0;
  struct Scope {
    StateSet r;
    std::uint64_t epoch = 0;
  };
  std::vector<Scope> scopes;
  size_t depth = 0;

  std::unordered_map<QKey, bool, QKeyHash> qmemo;
  std::unordered_map<StateSet, CachedPartition, StateSetHash> partitions;
  std::map<std::pair<StateSet, int>, std::vector<StateSet>> agent_values;
  std::map<std::pair<StateSet, std::vector<int>>, std::vector<StateSet>> group_values;

  Impl(const Model& model, CheckOptions o, CheckContext* own)
      : m(model), n(model.num_states()), opt(o), owner(own) {}

  int resolve_agent(const std::string& name) {
    for (int a = 0; a < m.num_agents(); ++a)
      if (m.agents()[a] == name) return a;
    fail(Errc::signature_mismatch,
         "formula mentions agent \"" + name + "\" absent from the model");
  }

  int compile(const Formula& f) {
    auto it = node_of_uid.find(f.id());
    if (it != node_of_uid.end()) return it->second;
    CNode nd;
    nd.conn = f.conn();
    nd.src = f;
    switch (f.conn()) {
      case Conn::top:
      case Conn::bottom:
        break;
      case Conn::atom:
        nd.prop = m.prop_index(f.name());  // -1: uniformly false
        break;
      case Conn::neg:
      case Conn::apal:
        nd.a = compile(f.child());
        break;
      case Conn::know:
        nd.agent = resolve_agent(f.name());
        nd.a = compile(f.child());
        break;
      case Conn::gal:
      case Conn::cal:
        for (const auto& g : f.group()) nd.group.push_back(resolve_agent(g));
        std::sort(nd.group.begin(), nd.group.end());
        nd.a = compile(f.child());
        break;
      case Conn::conj:
      case Conn::disj:
      case Conn::impl:
      case Conn::ann:
        nd.a = compile(f.left());
        nd.b = compile(f.right());
        break;
    }
    int ix = static_cast<int>(nodes.size());
    nodes.push_back(std::move(nd));
    node_of_uid.emplace(f.id(), ix);
    return ix;
  }

  void ensure_scratch() {
    size_t need = nodes.size() * static_cast<size_t>(n);
    if (val.size() < need) {
      val.resize(need, 0);
      stamp.resize(need, 0);
    }
  }

  void push_scope(const StateSet& r) {
    if (scopes.size() <= depth) scopes.emplace_back();
    scopes[depth].r = r;
    scopes[depth].epoch = ++epoch_counter;
    ++depth;
  }
  void pop_scope() { --depth; }
  const StateSet& cur_r() const { return scopes[depth - 1].r; }

  CachedPartition stable_partition(const StateSet& r) {
    auto it = partitions.find(r);
    if (it != partitions.end()) return it->second;
    Partition p = stable_bisim_within(m, r, m.props());
    CachedPartition cp;
    cp.class_of = p.class_of;
    for (const auto& blk : p.blocks) {
      StateSet bs(n);
      for (int s : blk) bs.set(s);
      cp.blocks.push_back(std::move(bs));
    }
    return partitions.emplace(r, std::move(cp)).first->second;
  }

  // Distinct values of X_a(B) = { s in r : [s]_a cap r included in B } as B
  // ranges over unions of stable classes of r; the empty value is dropped.
  // Each value is a union of a-classes whose class set is closed under the
  // induced closure, enumerated by class subsets.
  std::vector<StateSet> agent_closed_values(const StateSet& r, int agent, BudgetGuard& g) {
    auto key = std::make_pair(r, agent);
    auto it = agent_values.find(key);
    if (it != agent_values.end()) return it->second;

    CachedPartition p = stable_partition(r);
    int k = static_cast<int>(p.blocks.size());
    std::vector<StateSet> classes;
    std::vector<StateSet> supp;  // stable blocks touched, universe k
    std::vector<char> seen(n, 0);
    r.for_each([&](int s) {
      if (seen[s]) return;
      StateSet e = m.block(agent, s) & r;
      StateSet sp(k);
      e.for_each([&](int t) {
        seen[t] = 1;
        sp.set(p.class_of[t]);
      });
      classes.push_back(std::move(e));
      supp.push_back(std::move(sp));
    });
    int cnt = static_cast<int>(classes.size());
    if (cnt > 62)
      fail(Errc::quantifier_budget_exceeded,
           "too many agent classes to enumerate announcements over (" + std::to_string(cnt) + ")");
    std::vector<StateSet> out;
    StateSet mask(k), x(n);
    for (std::uint64_t t = 1; t < (1ull << cnt); ++t) {
      g.charge();
      mask.clear();
      for (int j = 0; j < cnt; ++j)
        if ((t >> j) & 1) mask |= supp[j];
      bool closed = true;
      for (int j = 0; j < cnt && closed; ++j)
        if (!((t >> j) & 1) && supp[j].is_subset_of(mask)) closed = false;
      if (!closed) continue;
      x.clear();
      for (int j = 0; j < cnt; ++j)
        if ((t >> j) & 1) x |= classes[j];
      out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return agent_values.emplace(std::move(key), std::move(out)).first->second;
  }

  // Candidate extensions of group announcements: intersections of one
  // X_a value per agent, deduplicated, ascending, empty set dropped. The
  // empty group announces nothing: the only candidate is r itself.
  std::vector<StateSet> gal_candidates(const StateSet& r, const std::vector<int>& group,
                                       BudgetGuard& g) {
    if (group.empty()) return {r};
    auto key = std::make_pair(r, group);
    auto it = group_values.find(key);
    if (it != group_values.end()) return it->second;

    std::vector<StateSet> cur = agent_closed_values(r, group[0], g);
    for (size_t i = 1; i < group.size(); ++i) {
      std::vector<StateSet> vals = agent_closed_values(r, group[i], g);
      std::set<StateSet> next;
      for (const StateSet& x : cur) {
        for (const StateSet& v : vals) {
          g.charge();
          StateSet y = x & v;
          if (!y.empty()) next.insert(std::move(y));
        }
      }
      cur.assign(next.begin(), next.end());
    }
    return group_values.emplace(std::move(key), std::move(cur)).first->second;
  }

  void note_failure(int ni, int s, const StateSet& x) {
    if (owner->failing_) return;
    owner->failing_ = FailingCandidate{nodes[ni].src.str(), m.states()[s], m.names_of(x)};
  }

  bool eval_apal(int s, int ni, BudgetGuard& g) {
    StateSet r = cur_r();
    CachedPartition p = stable_partition(r);
    int k = static_cast<int>(p.blocks.size());
    if (k > 62)
      fail(Errc::quantifier_budget_exceeded,
           "too many bisimulation classes to enumerate announcements over (" + std::to_string(k) +
               ")");
    int sb = p.class_of[s];
    int body = nodes[ni].a;
    StateSet x(n);
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
      g.charge();
      if (!((mask >> sb) & 1)) continue;
      x.clear();
      for (int b = 0; b < k; ++b)
        if ((mask >> b) & 1) x |= p.blocks[b];
      ++owner->stats_.candidates_enumerated;
      push_scope(x);
      bool ok = ev(s, body);
      pop_scope();
      if (!ok) {
        note_failure(ni, s, x);
        return false;
      }
    }
    return true;
  }

  bool eval_gal(int s, int ni, BudgetGuard& g) {
    StateSet r = cur_r();
    std::vector<StateSet> cands = gal_candidates(r, nodes[ni].group, g);
    int body = nodes[ni].a;
    for (const StateSet& x : cands) {
      if (!x.test(s)) continue;
      g.charge();
      ++owner->stats_.candidates_enumerated;
      push_scope(x);
      bool ok = ev(s, body);
      pop_scope();
      if (!ok) {
        note_failure(ni, s, x);
        return false;
      }
    }
    return true;
  }

  // Dual reading: every truthful announcement by the coalition can be
  // answered by a truthful announcement of the complement that keeps the body
  // true. The literal reading drops the truthfulness requirement on the
  // answer, so an answer false at s satisfies the clause vacuously.
  bool eval_cal(int s, int ni, BudgetGuard& g) {
    StateSet r = cur_r();
    const std::vector<int>& group = nodes[ni].group;
    std::vector<int> comp;
    for (int a = 0; a < m.num_agents(); ++a)
      if (!std::binary_search(group.begin(), group.end(), a)) comp.push_back(a);
    std::vector<StateSet> xs = gal_candidates(r, group, g);
    std::vector<StateSet> ys = gal_candidates(r, comp, g);
    int body = nodes[ni].a;
    for (const StateSet& x : xs) {
      if (!x.test(s)) continue;
      bool answered = false;
      for (const StateSet& y : ys) {
        g.charge();
        if (!y.test(s)) {
          if (opt.cal_literal) {
            answered = true;
            break;
          }
          continue;
        }
        ++owner->stats_.candidates_enumerated;
        push_scope(x & y);
        bool ok = ev(s, body);
        pop_scope();
        if (ok) {
          answered = true;
          break;
        }
      }
      if (!answered) {
        note_failure(ni, s, x);
        return false;
      }
    }
    return true;
  }

  bool eval_quant(int s, int ni) {
    QKey key{cur_r(), s, ni};
    auto it = qmemo.find(key);
    if (it != qmemo.end()) return it->second;
    ++owner->stats_.quantifier_evals;
    BudgetGuard g{0, opt.budget};
    bool r = false;
    switch (nodes[ni].conn) {
      case Conn::apal: r = eval_apal(s, ni, g); break;
      case Conn::gal: r = eval_gal(s, ni, g); break;
      default: r = eval_cal(s, ni, g); break;
    }
    qmemo.emplace(std::move(key), r);
    return r;
  }

  StateSet ext_in_scope(int ni) {
    StateSet r = cur_r();
    StateSet out(n);
    r.for_each([&](int t) {
      if (ev(t, ni)) out.set(t);
    });
    return out;
  }

  bool ev(int s, int ni) {
    const CNode& nd = nodes[ni];
    switch (nd.conn) {
      case Conn::top: return true;
      case Conn::bottom: return false;
      case Conn::atom: return nd.prop >= 0 && m.prop_extension(nd.prop).test(s);
      default: break;
    }
    size_t cell = static_cast<size_t>(ni) * n + s;
    std::uint64_t ep = scopes[depth - 1].epoch;
    if (stamp[cell] == ep) return val[cell] != 0;
    bool r = false;
    switch (nd.conn) {
      case Conn::neg: r = !ev(s, nd.a); break;
      case Conn::conj: r = ev(s, nd.a) && ev(s, nd.b); break;
      case Conn::disj: r = ev(s, nd.a) || ev(s, nd.b); break;
      case Conn::impl: r = !ev(s, nd.a) || ev(s, nd.b); break;
      case Conn::know: {
        r = true;
        const StateSet& blk = m.block(nd.agent, s);
        size_t words = blk.words().size();
        for (size_t i = 0; i < words && r; ++i) {
          // Re-read the scope each word: nested announcements may grow the
          // scope stack and move it.
          std::uint64_t w = blk.words()[i] & scopes[depth - 1].r.words()[i];
          while (w) {
            int t = static_cast<int>(i * 64 + __builtin_ctzll(w));
            w &= w - 1;
            if (!ev(t, nd.a)) {
              r = false;
              break;
            }
          }
        }
        break;
      }
      case Conn::ann: {
        if (!ev(s, nd.a)) {
          r = true;
          break;
        }
        StateSet x = ext_in_scope(nd.a);
        push_scope(x);
        r = ev(s, nd.b);
        pop_scope();
        break;
      }
      default: r = eval_quant(s, ni); break;
    }
    stamp[cell] = ep;
    val[cell] = r ? 1 : 0;
    return r;
  }
};

CheckContext::CheckContext(const Model& m, CheckOptions opt) : m_(m) {
  if (opt.budget == 0) opt.budget = default_budget();
  impl_ = new Impl(m, opt, this);
}

CheckContext::~CheckContext() { delete impl_; }

bool CheckContext::check(int state, const Formula& f) {
  if (state < 0 || state >= m_.num_states()) fail(Errc::unknown_state, "state index out of range");
  failing_.reset();
  int ni = impl_->compile(f);
  impl_->ensure_scratch();
  impl_->depth = 0;
  impl_->push_scope(m_.all_states());
  bool r = impl_->ev(state, ni);
  impl_->pop_scope();
  return r;
}

bool CheckContext::check(const std::string& state, const Formula& f) {
  return check(m_.state_index(state), f);
}

bool CheckContext::check_validity(const Formula& f) {
  for (int s = 0; s < m_.num_states(); ++s)
    if (!check(s, f)) return false;
  return true;
}

StateSet CheckContext::extension(const Formula& f) { return extension(m_.all_states(), f); }

StateSet CheckContext::extension(const StateSet& within, const Formula& f) {
  if (within.universe() != m_.num_states())
    fail(Errc::bad_input, "extension set has wrong universe");
  failing_.reset();
  int ni = impl_->compile(f);
  impl_->ensure_scratch();
  impl_->depth = 0;
  impl_->push_scope(within);
  StateSet out(m_.num_states());
  within.for_each([&](int s) {
    if (impl_->ev(s, ni)) out.set(s);
  });
  impl_->pop_scope();
  return out;
}

std::vector<StateSet> CheckContext::gal_sets(const std::vector<std::string>& group) {
  std::vector<int> g;
  for (const auto& a : group) g.push_back(impl_->resolve_agent(a));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  BudgetGuard guard{0, impl_->opt.budget};
  return impl_->gal_candidates(m_.all_states(), g, guard);
}

}  // namespace announce
