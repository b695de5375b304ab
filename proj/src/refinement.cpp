// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/refinement.hpp"

#include <algorithm>
#include <set>

#include "mzia/errors.hpp"

namespace mzia {

std::string fail_kind_string(FailKind k) {
  switch (k) {
    case FailKind::RczState: return "rcz-state";
    case FailKind::RczAction: return "rcz-action";
    case FailKind::MissingTransition: return "missing-transition";
    case FailKind::DelayMatch: return "delay-match";
  }
  return "?";
}

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

/// Failure record of a settled-false pair: either terminal (the primitive
/// check that failed here) or a step towards the pair where it did.
struct Fail {
  FailKind kind = FailKind::RczState;
  std::optional<std::string> action;
  std::optional<std::pair<std::string, Pair>> via;
};

bool can_delay(const FiniteSystem& fs, std::size_t s) {
  return s < fs.canDelay.size() && fs.canDelay[s];
}

class Engine {
 public:
  // Which side's moves must be answered: the procedure proper quantifies over
  // the right system, the converse diagnostic over the left.
  enum class Quantify { OverRhs, OverLhs };

  Engine(const FiniteSystem& lhs, const FiniteSystem& rhs, const RcOptions& opts, Quantify qf)
      : lhs_(lhs), rhs_(rhs), opts_(opts), qf_(qf) {}

  bool run(Pair pq) {
    const bool ok = rcs(pq).first;
    settle_conditionals();
    return ok;
  }

  bool run_match(Pair pq, const std::string& a) {
    if (!lhs_.actionSchemas.count(a))
      throw ContextError("action " + a + " has no schema in " + lhs_.name);
    if (!rhs_.actionSchemas.count(a))
      throw ContextError("action " + a + " has no schema in " + rhs_.name);
    auto& e = memo_[pq];
    e.st = Status::InProgress;  // cycles back to the pair are assumed to hold
    std::set<Pair> acc;
    Fail fail;
    const bool ok = match(pq, a, acc, fail);
    memo_.erase(pq);
    return ok;
  }

  std::size_t finalized() const { return finalized_; }
  std::size_t bodyRuns() const { return bodyRuns_; }

  void harvest(std::map<Pair, bool>& out) const {
    for (const auto& [pq, e] : memo_) {
      if (e.st == Status::TrueFinal) out[pq] = true;
      if (e.st == Status::FalseFinal) out[pq] = false;
    }
  }

  /// Rebuilds the failure path recorded under a settled-false root.
  void witness(Pair root, Verdict& v) const {
    Pair cur = root;
    for (;;) {
      const auto it = memo_.find(cur);
      if (it == memo_.end() || it->second.st != Status::FalseFinal) return;
      const Fail& f = it->second.fail;
      if (f.via) {
        v.witness.push_back({cur.first, cur.second, f.via->first});
        cur = f.via->second;
        continue;
      }
      v.failPair = cur;
      v.failKind = f.kind;
      v.failAction = f.action;
      return;
    }
  }

 private:
  enum class Status { InProgress, TrueFinal, FalseFinal, Conditional };

  struct Entry {
    Status st = Status::InProgress;
    std::set<Pair> assume;  // for Conditional: open hypotheses the truth rests on
    Fail fail;              // for FalseFinal
  };

  const FiniteSystem& lhs_;
  const FiniteSystem& rhs_;
  const RcOptions& opts_;
  Quantify qf_;
  std::map<Pair, Entry> memo_;
  std::map<std::string, bool> actionOk_;
  std::size_t finalized_ = 0;
  std::size_t bodyRuns_ = 0;

  bool in_progress(Pair pq) const {
    const auto it = memo_.find(pq);
    return it != memo_.end() && it->second.st == Status::InProgress;
  }

  bool action_schema_ok(const std::string& a) {
    const auto it = actionOk_.find(a);
    if (it != actionOk_.end()) return it->second;
    const auto li = lhs_.actionSchemas.find(a);
    const auto ri = rhs_.actionSchemas.find(a);
    if (li == lhs_.actionSchemas.end())
      throw ContextError("action " + a + " has no schema in " + lhs_.name);
    if (ri == rhs_.actionSchemas.end())
      throw ContextError("action " + a + " has no schema in " + rhs_.name);
    const bool ok = rcz(li->second, ri->second, opts_.mode, opts_.env);
    actionOk_.emplace(a, ok);
    return ok;
  }

  std::pair<bool, std::set<Pair>> rcs(Pair pq) {
    auto it = memo_.find(pq);
    if (it != memo_.end()) {
      Entry& e = it->second;
      switch (e.st) {
        case Status::TrueFinal: return {true, {}};
        case Status::FalseFinal: return {false, {}};
        case Status::InProgress: return {true, {pq}};  // coinductive hypothesis
        case Status::Conditional: {
          for (auto a = e.assume.begin(); a != e.assume.end();) {
            const auto m = memo_.find(*a);
            if (m != memo_.end() && m->second.st == Status::TrueFinal)
              a = e.assume.erase(a);
            else
              ++a;
          }
          if (e.assume.empty()) {
            e.st = Status::TrueFinal;
            ++finalized_;
            return {true, {}};
          }
          if (std::all_of(e.assume.begin(), e.assume.end(),
                          [&](const Pair& a) { return in_progress(a); }))
            return {true, e.assume};  // all hypotheses are live ancestors: reusable
          break;  // stale entry: recompute
        }
      }
    }
    Entry& e = memo_[pq];
    e.st = Status::InProgress;
    e.assume.clear();

    Fail fail;
    auto [res, acc] = body(pq, fail);
    ++bodyRuns_;

    if (!res) {
      e.st = Status::FalseFinal;
      e.assume.clear();
      e.fail = fail;
      ++finalized_;
      purge(pq);
      return {false, {}};
    }
    acc.erase(pq);  // a cycle closing at this very pair is discharged here
    for (auto a = acc.begin(); a != acc.end();) {
      const auto m = memo_.find(*a);
      if (m != memo_.end() && m->second.st == Status::TrueFinal)
        a = acc.erase(a);
      else
        ++a;
    }
    if (acc.empty()) {
      e.st = Status::TrueFinal;
      ++finalized_;
      return {true, {}};
    }
    e.st = Status::Conditional;
    e.assume = acc;
    return {true, acc};
  }

  std::pair<bool, std::set<Pair>> body(Pair pq, Fail& fail) {
    const auto [p, q] = pq;
    std::set<Pair> acc;
    if (!rcz(lhs_.stateSchemas[p], rhs_.stateSchemas[q], opts_.mode, opts_.env)) {
      fail.kind = FailKind::RczState;
      return {false, acc};
    }
    if (opts_.requireDelayMatch && can_delay(lhs_, p) && !can_delay(rhs_, q)) {
      fail.kind = FailKind::DelayMatch;
      return {false, acc};
    }
    std::set<std::string> acts = lhs_.enabled(p);
    for (const auto& a : rhs_.enabled(q)) acts.insert(a);
    for (const auto& a : acts)
      if (!match(pq, a, acc, fail)) return {false, acc};
    return {true, acc};
  }

  bool match(Pair pq, const std::string& a, std::set<Pair>& acc, Fail& fail) {
    const auto [p, q] = pq;
    const bool overRhs = qf_ == Quantify::OverRhs;
    const auto need = overRhs ? rhs_.successors(q, a) : lhs_.successors(p, a);
    if (need.empty()) return true;  // no move to answer
    const auto cands = overRhs ? lhs_.successors(p, a) : rhs_.successors(q, a);
    if (cands.empty()) {
      fail.kind = FailKind::MissingTransition;
      fail.action = a;
      return false;
    }
    if (!action_schema_ok(a)) {
      fail.kind = FailKind::RczAction;
      fail.action = a;
      return false;
    }
    for (const std::size_t nj : need) {
      bool found = false;
      std::optional<Pair> firstFailed;
      for (const std::size_t ci : cands) {
        const Pair child = overRhs ? Pair{ci, nj} : Pair{nj, ci};
        auto [ok, s] = rcs(child);
        if (ok) {
          acc.insert(s.begin(), s.end());
          found = true;
          break;
        }
        if (!firstFailed) firstFailed = child;
      }
      if (!found) {
        fail.via = {a, *firstFailed};
        return false;
      }
    }
    return true;
  }

  /// Drops every cached positive result that rested on the newly failed pair.
  void purge(Pair pq) {
    for (auto it = memo_.begin(); it != memo_.end();) {
      if (it->second.st == Status::Conditional && it->second.assume.count(pq))
        it = memo_.erase(it);
      else
        ++it;
    }
  }

  /// After a root finishes, resolve leftover conditional entries: hypotheses
  /// settled true are dropped, entries resting on anything unsettled are
  /// forgotten, and a remaining cycle of mutually supporting entries is a
  /// consistent post-fixpoint, hence true.
  void settle_conditionals() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = memo_.begin(); it != memo_.end();) {
        Entry& e = it->second;
        if (e.st != Status::Conditional) {
          ++it;
          continue;
        }
        bool drop = false;
        for (auto a = e.assume.begin(); a != e.assume.end();) {
          const auto m = memo_.find(*a);
          if (m == memo_.end() || m->second.st == Status::FalseFinal) {
            drop = true;
            break;
          }
          if (m->second.st == Status::TrueFinal)
            a = e.assume.erase(a);
          else
            ++a;
        }
        if (drop) {
          it = memo_.erase(it);
          changed = true;
        } else if (e.assume.empty()) {
          e.st = Status::TrueFinal;
          ++finalized_;
          changed = true;
          ++it;
        } else {
          ++it;
        }
      }
    }
    for (auto& [pq, e] : memo_)
      if (e.st == Status::Conditional) {
        e.st = Status::TrueFinal;
        ++finalized_;
      }
  }
};

std::vector<Pair> initial_pairs(const FiniteSystem& lhs, const FiniteSystem& rhs) {
  std::vector<Pair> out;
  for (const std::size_t p : lhs.initials)
    for (const std::size_t q : rhs.initials) out.push_back({p, q});
  return out;
}

}  // namespace

Verdict rc(const FiniteSystem& lhs, const FiniteSystem& rhs, const RcOptions& opts) {
  Verdict v;
  v.mode = opts.mode;
  const std::vector<Pair> inits = initial_pairs(lhs, rhs);
  Engine eng(lhs, rhs, opts, Engine::Quantify::OverRhs);
  for (const Pair& pq : inits)
    if (eng.run(pq)) {
      v.refines = true;
      break;
    }
  if (!v.refines && !inits.empty()) eng.witness(inits.front(), v);
  eng.harvest(v.pairResults);
  v.finalizedPairs = eng.finalized();
  v.bodyRuns = eng.bodyRuns();
  if (opts.checkConverse) {
    Engine conv(lhs, rhs, opts, Engine::Quantify::OverLhs);
    bool any = false;
    for (const Pair& pq : inits)
      if (conv.run(pq)) {
        any = true;
        break;
      }
    v.converseHolds = any;
  }
  return v;
}

bool rcs(const FiniteSystem& lhs, const FiniteSystem& rhs, std::size_t p, std::size_t q,
         const RcOptions& opts) {
  Engine eng(lhs, rhs, opts, Engine::Quantify::OverRhs);
  return eng.run({p, q});
}

bool match_action(const FiniteSystem& lhs, const FiniteSystem& rhs, std::size_t p, std::size_t q,
                  const std::string& a, const RcOptions& opts) {
  Engine eng(lhs, rhs, opts, Engine::Quantify::OverRhs);
  return eng.run_match({p, q}, a);
}

}  // namespace mzia
