// Decidable predicates and binary relations on semantic carriers, and the
// monad-lifting constructions that turn a relation on X into a relation on
// T X: exception lifting, free lifting (smallest congruence), continuation
// (double-dualization) lifting, and the set/list simulation lifting. A law
// checker verifies unit/bind/operation closure exhaustively on bounded
// carriers.
#pragma once

#include "cbpv/monad.hpp"

namespace cbpv {

struct Pred {
  SemSet carrier;
  std::function<bool(const SemVal&)> member;

  static Pred of(SemSet carrier, std::vector<SemVal> members) {
    auto ms = std::make_shared<std::vector<SemVal>>(std::move(members));
    return Pred{std::move(carrier), [ms](const SemVal& v) {
                  for (auto& m : *ms)
                    if (m == v) return true;
                  return false;
                }};
  }
  static Pred full(SemSet carrier) {
    return Pred{std::move(carrier), [](const SemVal&) { return true; }};
  }
  static Pred empty(SemSet carrier) {
    return Pred{std::move(carrier), [](const SemVal&) { return false; }};
  }

  // enumerate members (finite carrier only)
  std::vector<SemVal> members_of() const {
    std::vector<SemVal> out;
    for (auto& v : carrier.elems)
      if (member(v)) out.push_back(v);
    return out;
  }
};

struct BinRel {
  SemSet left, right;
  std::function<bool(const SemVal&, const SemVal&)> member;

  static BinRel of(SemSet l, SemSet r, std::vector<std::pair<SemVal, SemVal>> prs) {
    auto ps = std::make_shared<std::vector<std::pair<SemVal, SemVal>>>(std::move(prs));
    return BinRel{std::move(l), std::move(r), [ps](const SemVal& a, const SemVal& b) {
                    for (auto& [x, y] : *ps)
                      if (x == a && y == b) return true;
                    return false;
                  }};
  }
  static BinRel full(SemSet l, SemSet r) {
    return BinRel{std::move(l), std::move(r),
                  [](const SemVal&, const SemVal&) { return true; }};
  }
  static BinRel empty(SemSet l, SemSet r) {
    return BinRel{std::move(l), std::move(r),
                  [](const SemVal&, const SemVal&) { return false; }};
  }
  static BinRel identity(SemSet c) {
    return BinRel{c, c, [](const SemVal& a, const SemVal& b) { return a == b; }};
  }
};

// A relation transformer for monadic types. Unary liftings send a predicate
// on X to a predicate on T X over a single monad; binary liftings send a
// relation between X and Y to a relation between T1 X and T2 Y.
struct MonadLifting {
  bool binary = false;
  Monad monad;       // unary, or the left monad of a binary lifting
  Monad right_monad; // binary only
  std::function<Pred(const Pred&)> lift_pred;
  std::function<BinRel(const BinRel&)> lift_rel;
};

// ---------------------------------------------------------------------------
// Exception lifting: lift(R) holds of ok x iff x ∈ R, of err e iff e ∈ Ē.

inline MonadLifting exception_lifting(const Pred& ebar) {
  MonadLifting l;
  l.monad = make_exception_monad(ebar.carrier);
  Pred eb = ebar;
  Monad m = l.monad;
  l.lift_pred = [eb, m](const Pred& r) {
    return Pred{m.apply(r.carrier), [eb, r](const SemVal& t) {
                  if (t.kind() == SemVal::Kind::Ok) return r.member(t.first());
                  if (t.kind() == SemVal::Kind::Err) return eb.member(t.first());
                  return false;
                }};
  };
  return l;
}

// ---------------------------------------------------------------------------
// Free lifting: the smallest relation containing the returns of R-elements
// and closed under every operation. Membership is structural recursion;
// nullary operations are vacuously in.

inline MonadLifting free_lifting(const Signature& sig) {
  MonadLifting l;
  l.monad = make_free_monad(sig);
  l.lift_pred = [sig](const Pred& r) {
    auto in_ptr = std::make_shared<std::function<bool(const FreeTree&)>>();
    *in_ptr = [r, in_ptr](const FreeTree& t) -> bool {
      if (t.is_ret) return r.member(t.val);
      for (auto& k : t.kids)
        if (!(*in_ptr)(*k)) return false;
      return true;
    };
    return Pred{SemSet::opaque(), [in_ptr](const SemVal& t) {
                  if (t.kind() != SemVal::Kind::Free) return false;
                  return (*in_ptr)(*t.tree());
                }};
  };
  return l;
}

// ---------------------------------------------------------------------------
// Continuation-style (double-dualization) lifting, parameterized by an
// algebra `alg : T P -> P` and a predicate on P. An element t of T X passes
// iff every test k : X -> P that maps R into the predicate makes
// alg(map(k, t)) satisfy the predicate.

// Check the Eilenberg-Moore algebra laws for alg by enumeration:
//   alg(unit(p)) = p, and alg(mu(tt)) = alg(map(alg, tt))
// over carriers bounded by `bound`. Returns an error description on failure.
inline std::optional<std::string> validate_algebra(
    const Monad& m, const SemSet& p,
    const std::function<SemVal(const SemVal&)>& alg, std::size_t bound) {
  for (auto& x : p.elems) {
    SemVal u = m.unit(x);
    if (alg(u) != x)
      return "unit law fails: alg(unit(" + x.str() + ")) = " + alg(u).str();
  }
  auto tp = m.enumerate_bounded(p, bound);
  SemSet tp_set = SemSet::of(tp);
  for (auto& tt : m.enumerate_bounded(tp_set, bound)) {
    SemVal lhs = alg(m.bind(tt, [](const SemVal& t) { return t; }));
    SemVal rhs = alg(m.bind(tt, [&](const SemVal& t) { return m.unit(alg(t)); }));
    if (lhs != rhs)
      return "multiplication law fails on " + tt.str() + ": " + lhs.str() +
             " vs " + rhs.str();
  }
  return std::nullopt;
}

inline MonadLifting tt_lifting(const Monad& m, const SemSet& param_carrier,
                               const std::function<SemVal(const SemVal&)>& alg,
                               const Pred& param_pred, std::size_t law_bound = 2) {
  if (!param_carrier.finite)
    throw EvalError("continuation lifting requires a finite parameter carrier");
  if (auto err = validate_algebra(m, param_carrier, alg, law_bound))
    throw EvalError("parameter is not an algebra: " + *err);
  MonadLifting l;
  l.monad = m;
  SemSet pc = param_carrier;
  Pred pp = param_pred;
  l.lift_pred = [m, pc, pp, alg](const Pred& r) {
    if (!r.carrier.finite)
      throw EvalError("continuation lifting requires a finite base carrier "
                      "(the test space must be exhaustible)");
    SemSet tests = function_set(r.carrier, pc);
    return Pred{m.apply(r.carrier), [m, pc, pp, alg, r, tests](const SemVal& t) {
                  for (auto& k : tests.elems) {
                    bool admissible = true;
                    for (auto& x : r.carrier.elems) {
                      if (r.member(x) && !pp.member(k.apply(x))) {
                        admissible = false;
                        break;
                      }
                    }
                    if (!admissible) continue;
                    SemVal mapped = m.bind(
                        t, [&](const SemVal& x) { return m.unit(k.apply(x)); });
                    if (!pp.member(alg(mapped))) return false;
                  }
                  return true;
                }};
  };
  return l;
}

// ---------------------------------------------------------------------------
// Set/list simulation lifting: (p, l) related iff every member of p has a
// related element in l, and every element of l has a related member in p.

inline MonadLifting em_lifting() {
  MonadLifting l;
  l.binary = true;
  l.monad = make_pfin_monad();
  l.right_monad = make_list_monad();
  l.lift_rel = [](const BinRel& r) {
    Monad pfin = make_pfin_monad();
    Monad list = make_list_monad();
    return BinRel{pfin.apply(r.left), list.apply(r.right),
                  [r](const SemVal& p, const SemVal& l2) {
                    if (p.kind() != SemVal::Kind::Set ||
                        l2.kind() != SemVal::Kind::List)
                      return false;
                    for (auto& x : p.members()) {
                      bool found = false;
                      for (auto& y : l2.members())
                        if (r.member(x, y)) { found = true; break; }
                      if (!found) return false;
                    }
                    for (auto& y : l2.members()) {
                      bool found = false;
                      for (auto& x : p.members())
                        if (r.member(x, y)) { found = true; break; }
                      if (!found) return false;
                    }
                    return true;
                  }};
  };
  return l;
}

// Apply the set/list simulation lifting to a concrete relation.
inline BinRel em_pair_lifting(const BinRel& r) { return em_lifting().lift_rel(r); }

// Pointwise list lifting: equal length and pointwise related.
inline MonadLifting pair_list_lifting_t() {
  MonadLifting l;
  l.binary = true;
  l.monad = make_list_monad();
  l.right_monad = make_list_monad();
  l.lift_rel = [](const BinRel& r) {
    Monad list = make_list_monad();
    return BinRel{list.apply(r.left), list.apply(r.right),
                  [r](const SemVal& a, const SemVal& b) {
                    if (a.kind() != SemVal::Kind::List ||
                        b.kind() != SemVal::Kind::List)
                      return false;
                    if (a.members().size() != b.members().size()) return false;
                    for (std::size_t i = 0; i < a.members().size(); ++i)
                      if (!r.member(a.members()[i], b.members()[i])) return false;
                    return true;
                  }};
  };
  return l;
}

inline BinRel pair_list_lifting(const BinRel& r) {
  return pair_list_lifting_t().lift_rel(r);
}

// ---------------------------------------------------------------------------
// Law checker: unit-closure, bind-closure and op-closure, verified by
// exhaustive enumeration over a finite base carrier.

struct LawReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;

  std::string str() const {
    std::ostringstream os;
    os << (passed ? "pass" : "fail") << " (" << checked << " instances checked";
    if (!counterexamples.empty())
      os << ", " << counterexamples.size() << " counterexamples";
    os << ")";
    for (auto& c : counterexamples) os << "\n  " << c;
    return os.str();
  }
};

namespace detail {

inline std::size_t op_arity(const Monad& m, const std::string& name) {
  switch (m.kind) {
    case MonadKind::Pfin:
    case MonadKind::List:
      return name == "or" ? 2 : 0;
    case MonadKind::Exception:
      return 0;
    case MonadKind::State:
      return name == "read" ? m.state_set.elems.size() : 1;
    case MonadKind::Free: {
      const OpDecl* d = m.free_sig.find_op(name);
      if (!d) throw EvalError("unknown operation '" + name + "'");
      return d->arity;
    }
    case MonadKind::Product:
      return op_arity(*m.left, name);
  }
  return 0;
}

inline void budget_guard(std::size_t& budget, std::size_t cost) {
  if (cost > budget)
    throw EvalError("law-check search space exceeds the configured budget");
  budget -= cost;
}

} // namespace detail

// Exhaustively verify the three closure laws of a unary lifting over the base
// carrier X. `ops` restricts which operations are checked (defaults to every
// operation the monad interprets). `budget` bounds the total number of
// membership decisions; exceeding it is an error, never a silent pass.
inline LawReport check_lifting_laws(const MonadLifting& lift, const SemSet& x,
                                    std::size_t bound,
                                    std::optional<std::vector<std::string>> ops =
                                        std::nullopt,
                                    std::size_t budget = 20'000'000) {
  if (lift.binary)
    throw EvalError("binary liftings are law-checked with check_lifting_laws_binary");
  const Monad& m = lift.monad;
  LawReport rep;
  std::vector<std::string> op_list = ops ? *ops : m.op_names();

  auto tx = m.enumerate_bounded(x, bound);

  // all predicates on X
  auto subs = subsets_of(x.elems);
  std::vector<Pred> preds;
  for (auto& s : subs) preds.push_back(Pred::of(x, s));

  for (auto& r : preds) {
    Pred lr = lift.lift_pred(r);

    // (i) unit closure
    for (auto& v : x.elems) {
      if (!r.member(v)) continue;
      detail::budget_guard(budget, 1);
      ++rep.checked;
      if (!lr.member(m.unit(v))) {
        rep.passed = false;
        rep.counterexamples.push_back("unit closure: " + v.str() +
                                      " ∈ R but unit = " + m.unit(v).str() +
                                      " ∉ lift(R)");
      }
    }

    // members of lift(R) among the bounded enumeration
    std::vector<SemVal> in_lift;
    for (auto& t : tx) {
      detail::budget_guard(budget, 1);
      if (lr.member(t)) in_lift.push_back(t);
    }

    // (iii) op closure
    for (auto& opn : op_list) {
      std::size_t ar = detail::op_arity(m, opn);
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < ar; ++i) {
        if (!in_lift.empty() && tuples > budget / in_lift.size())
          throw EvalError("law-check search space exceeds the configured budget");
        tuples *= in_lift.size();
      }
      if (ar > 0 && in_lift.empty()) continue;
      detail::budget_guard(budget, tuples);
      for (std::size_t c = 0; c < tuples; ++c) {
        std::vector<SemVal> args;
        std::size_t rem = c;
        for (std::size_t i = 0; i < ar; ++i) {
          args.push_back(in_lift[rem % in_lift.size()]);
          rem /= in_lift.size();
        }
        SemVal res = m.op_apply(opn, std::nullopt, args);
        ++rep.checked;
        if (!lr.member(res)) {
          rep.passed = false;
          std::ostringstream os;
          os << "op closure (" << opn << "): arguments in lift(R) but result "
             << res.str() << " ∉ lift(R), R = {";
          bool sep = false;
          for (auto& v : r.members_of()) {
            if (sep) os << ", ";
            sep = true;
            os << v.str();
          }
          os << "}";
          rep.counterexamples.push_back(os.str());
        }
      }
    }

    // (ii) bind closure, against every target predicate R'
    std::vector<SemVal> r_members = r.members_of();
    for (auto& r2 : preds) {
      Pred lr2 = lift.lift_pred(r2);
      // continuations X -> T X drawn from the bounded enumeration
      std::size_t nk = 1;
      for (std::size_t i = 0; i < x.elems.size(); ++i) {
        if (!tx.empty() && nk > budget / tx.size())
          throw EvalError("law-check search space exceeds the configured budget");
        nk *= tx.size();
      }
      if (tx.empty()) continue;
      for (std::size_t c = 0; c < nk; ++c) {
        std::vector<SemVal> choice;
        std::size_t rem = c;
        for (std::size_t i = 0; i < x.elems.size(); ++i) {
          choice.push_back(tx[rem % tx.size()]);
          rem /= tx.size();
        }
        auto k = [&](const SemVal& v) -> SemVal {
          for (std::size_t i = 0; i < x.elems.size(); ++i)
            if (x.elems[i] == v) return choice[i];
          throw EvalError("bind-law continuation applied outside the carrier");
        };
        // admissibility: k maps R-members into lift(R')
        bool admissible = true;
        for (auto& v : r_members) {
          detail::budget_guard(budget, 1);
          if (!lr2.member(k(v))) { admissible = false; break; }
        }
        if (!admissible) continue;
        for (auto& t : in_lift) {
          detail::budget_guard(budget, 1);
          ++rep.checked;
          SemVal bt = m.bind(t, k);
          if (!lr2.member(bt)) {
            rep.passed = false;
            rep.counterexamples.push_back(
                "bind closure: t = " + t.str() + " ∈ lift(R), k admissible, but "
                "bind(t,k) = " + bt.str() + " ∉ lift(R')");
          }
        }
      }
    }
  }
  return rep;
}

// Binary variant over base carriers X and Y; relations are enumerated as all
// subsets of X × Y.
inline LawReport check_lifting_laws_binary(const MonadLifting& lift,
                                           const SemSet& x, const SemSet& y,
                                           std::size_t bound,
                                           std::optional<std::vector<std::string>>
                                               ops = std::nullopt,
                                           std::size_t budget = 20'000'000) {
  if (!lift.binary)
    throw EvalError("unary liftings are law-checked with check_lifting_laws");
  const Monad& ml = lift.monad;
  const Monad& mr = lift.right_monad;
  LawReport rep;
  std::vector<std::string> op_list = ops ? *ops : ml.op_names();

  auto tl = ml.enumerate_bounded(x, bound);
  auto tr = mr.enumerate_bounded(y, bound);

  std::vector<std::pair<SemVal, SemVal>> all_pairs;
  for (auto& a : x.elems)
    for (auto& b : y.elems) all_pairs.emplace_back(a, b);
  if (all_pairs.size() > 12)
    throw EvalError("binary law check: relation space too large");
  std::vector<BinRel> rels;
  for (std::size_t mask = 0; mask < (std::size_t{1} << all_pairs.size()); ++mask) {
    std::vector<std::pair<SemVal, SemVal>> prs;
    for (std::size_t i = 0; i < all_pairs.size(); ++i)
      if (mask & (std::size_t{1} << i)) prs.push_back(all_pairs[i]);
    rels.push_back(BinRel::of(x, y, std::move(prs)));
  }

  for (auto& r : rels) {
    BinRel lr = lift.lift_rel(r);

    // (i) unit closure
    for (auto& [a, b] : all_pairs) {
      if (!r.member(a, b)) continue;
      detail::budget_guard(budget, 1);
      ++rep.checked;
      if (!lr.member(ml.unit(a), mr.unit(b))) {
        rep.passed = false;
        rep.counterexamples.push_back("unit closure: (" + a.str() + ", " +
                                      b.str() + ") ∈ R but units unrelated");
      }
    }

    // related pairs among the bounded enumerations
    std::vector<std::pair<SemVal, SemVal>> in_lift;
    detail::budget_guard(budget, tl.size() * tr.size());
    for (auto& t1 : tl)
      for (auto& t2 : tr)
        if (lr.member(t1, t2)) in_lift.emplace_back(t1, t2);

    // (iii) op closure
    for (auto& opn : op_list) {
      if (!mr.supports_op(opn)) continue;
      std::size_t ar = detail::op_arity(ml, opn);
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < ar; ++i) {
        if (!in_lift.empty() && tuples > budget / in_lift.size())
          throw EvalError("law-check search space exceeds the configured budget");
        tuples *= in_lift.size();
      }
      if (ar > 0 && in_lift.empty()) continue;
      detail::budget_guard(budget, tuples);
      for (std::size_t c = 0; c < tuples; ++c) {
        std::vector<SemVal> argl, argr;
        std::size_t rem = c;
        for (std::size_t i = 0; i < ar; ++i) {
          argl.push_back(in_lift[rem % in_lift.size()].first);
          argr.push_back(in_lift[rem % in_lift.size()].second);
          rem /= in_lift.size();
        }
        SemVal resl = ml.op_apply(opn, std::nullopt, argl);
        SemVal resr = mr.op_apply(opn, std::nullopt, argr);
        ++rep.checked;
        if (!lr.member(resl, resr)) {
          rep.passed = false;
          rep.counterexamples.push_back("op closure (" + opn +
                                        "): related arguments but results (" +
                                        resl.str() + ", " + resr.str() +
                                        ") unrelated");
        }
      }
    }

    // (ii) bind closure
    std::vector<std::pair<SemVal, SemVal>> r_members;
    for (auto& [a, b] : all_pairs)
      if (r.member(a, b)) r_members.emplace_back(a, b);
    for (auto& r2 : rels) {
      BinRel lr2 = lift.lift_rel(r2);
      std::size_t nkl = 1, nkr = 1;
      for (std::size_t i = 0; i < x.elems.size(); ++i) {
        if (!tl.empty() && nkl > budget / std::max<std::size_t>(tl.size(), 1))
          throw EvalError("law-check search space exceeds the configured budget");
        nkl *= tl.size();
      }
      for (std::size_t i = 0; i < y.elems.size(); ++i) {
        if (!tr.empty() && nkr > budget / std::max<std::size_t>(tr.size(), 1))
          throw EvalError("law-check search space exceeds the configured budget");
        nkr *= tr.size();
      }
      if (tl.empty() || tr.empty()) continue;
      detail::budget_guard(budget, nkl * nkr);
      for (std::size_t cl = 0; cl < nkl; ++cl) {
        std::vector<SemVal> chl;
        std::size_t rem = cl;
        for (std::size_t i = 0; i < x.elems.size(); ++i) {
          chl.push_back(tl[rem % tl.size()]);
          rem /= tl.size();
        }
        auto kl = [&](const SemVal& v) -> SemVal {
          for (std::size_t i = 0; i < x.elems.size(); ++i)
            if (x.elems[i] == v) return chl[i];
          throw EvalError("bind-law continuation applied outside the carrier");
        };
        for (std::size_t cr = 0; cr < nkr; ++cr) {
          std::vector<SemVal> chr;
          rem = cr;
          for (std::size_t i = 0; i < y.elems.size(); ++i) {
            chr.push_back(tr[rem % tr.size()]);
            rem /= tr.size();
          }
          auto kr = [&](const SemVal& v) -> SemVal {
            for (std::size_t i = 0; i < y.elems.size(); ++i)
              if (y.elems[i] == v) return chr[i];
            throw EvalError("bind-law continuation applied outside the carrier");
          };
          bool admissible = true;
          for (auto& [a, b] : r_members) {
            if (!lr2.member(kl(a), kr(b))) { admissible = false; break; }
          }
          if (!admissible) continue;
          for (auto& [t1, t2] : in_lift) {
            ++rep.checked;
            SemVal b1 = ml.bind(t1, kl);
            SemVal b2 = mr.bind(t2, kr);
            if (!lr2.member(b1, b2)) {
              rep.passed = false;
              rep.counterexamples.push_back(
                  "bind closure: (" + t1.str() + ", " + t2.str() +
                  ") related, continuations admissible, but (" + b1.str() +
                  ", " + b2.str() + ") unrelated");
            }
          }
        }
      }
    }
  }
  return rep;
}

} // namespace cbpv
