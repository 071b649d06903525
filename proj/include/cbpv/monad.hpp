// Concrete strong monads on finite-scale sets: finite powerset, list,
// exception, state, free (operation trees), and binary products of these.
//
// Strength is not reified: continuations may capture ambient environment
// values directly, which is the canonical strength at set scale.
#pragma once

#include "cbpv/semval.hpp"
#include "cbpv/syntax.hpp"

namespace cbpv {

enum class MonadKind { Pfin, List, Exception, State, Free, Product };

struct Monad {
  MonadKind kind = MonadKind::Pfin;
  SemSet except_set;  // Exception
  SemSet state_set;   // State
  Signature free_sig; // Free
  std::shared_ptr<const Monad> left, right; // Product

  SemSet apply(const SemSet& x) const;
  SemVal unit(const SemVal& v) const;
  SemVal bind(const SemVal& t, const std::function<SemVal(const SemVal&)>& k) const;

  bool supports_op(const std::string& name) const;
  // action of an algebraic operation on T X
  SemVal op_apply(const std::string& name, const std::optional<SemVal>& param,
                  const std::vector<SemVal>& args) const;

  // the operation names this monad interprets (used by law checkers)
  std::vector<std::string> op_names() const;

  // Elements of T X up to a structural bound: full carrier for Pfin /
  // Exception / State, lists of length <= bound, trees of depth <= bound.
  std::vector<SemVal> enumerate_bounded(const SemSet& x, std::size_t bound) const;
};

inline Monad make_pfin_monad() {
  Monad m;
  m.kind = MonadKind::Pfin;
  return m;
}

inline Monad make_list_monad() {
  Monad m;
  m.kind = MonadKind::List;
  return m;
}

inline Monad make_exception_monad(SemSet e) {
  Monad m;
  m.kind = MonadKind::Exception;
  m.except_set = std::move(e);
  return m;
}

inline Monad make_state_monad(SemSet s) {
  if (!s.finite || s.elems.empty())
    throw EvalError("state monad requires a nonempty finite state set");
  Monad m;
  m.kind = MonadKind::State;
  m.state_set = std::move(s);
  return m;
}

inline Monad make_free_monad(Signature sig) {
  Monad m;
  m.kind = MonadKind::Free;
  m.free_sig = std::move(sig);
  return m;
}

inline Monad make_product_monad(Monad a, Monad b) {
  Monad m;
  m.kind = MonadKind::Product;
  m.left = std::make_shared<Monad>(std::move(a));
  m.right = std::make_shared<Monad>(std::move(b));
  return m;
}

// ---------------------------------------------------------------------------

inline SemSet Monad::apply(const SemSet& x) const {
  switch (kind) {
    case MonadKind::Pfin: {
      if (!x.finite) return SemSet::opaque();
      std::vector<SemVal> out;
      for (auto& sub : subsets_of(x.elems)) out.push_back(SemVal::set(sub));
      return SemSet::of(std::move(out));
    }
    case MonadKind::List: {
      if (!x.finite) return SemSet::opaque();
      if (x.elems.empty()) return SemSet::of({SemVal::list({})});
      // enumerate by length, then lexicographically by element index
      auto elems = x.elems;
      return SemSet::lazy([elems](std::size_t i) {
        const std::size_t k = elems.size();
        std::size_t len = 0, block = 1, skipped = 0;
        while (i >= skipped + block) {
          skipped += block;
          block *= k;
          ++len;
        }
        std::size_t rem = i - skipped;
        std::vector<SemVal> xs(len, SemVal::unit());
        for (std::size_t j = 0; j < len; ++j) {
          xs[len - 1 - j] = elems[rem % k];
          rem /= k;
        }
        return SemVal::list(std::move(xs));
      });
    }
    case MonadKind::Exception: {
      if (!x.finite) return SemSet::opaque();
      std::vector<SemVal> out;
      for (auto& v : x.elems) out.push_back(SemVal::ok(v));
      for (auto& e : except_set.elems) out.push_back(SemVal::err(e));
      return SemSet::of(std::move(out));
    }
    case MonadKind::State: {
      if (!x.finite) return SemSet::opaque();
      // tables s -> (x, s'): |X x S| ^ |S| of them
      SemSet pairs = product_set(x, state_set);
      std::vector<SemVal> out;
      std::size_t count = 1;
      for (std::size_t i = 0; i < state_set.elems.size(); ++i) {
        if (!pairs.elems.empty() && count > 1'000'000 / pairs.elems.size())
          throw EvalError("state carrier too large to enumerate");
        count *= pairs.elems.size();
      }
      if (pairs.elems.empty()) return SemSet::of({});
      for (std::size_t c = 0; c < count; ++c) {
        std::vector<std::pair<SemVal, SemVal>> table;
        std::size_t rem = c;
        for (auto& s : state_set.elems) {
          table.emplace_back(s, pairs.elems[rem % pairs.elems.size()]);
          rem /= pairs.elems.size();
        }
        out.push_back(SemVal::state_table(std::move(table)));
      }
      return SemSet::of(std::move(out));
    }
    case MonadKind::Free:
      return SemSet::opaque(); // trees are unbounded; see enumerate_bounded
    case MonadKind::Product: {
      // carrier of (T1 x T2)(X1 x X2) given componentwise; X arrives as a
      // product set of pairs — split it
      if (!x.finite) return SemSet::opaque();
      std::vector<SemVal> xs1, xs2;
      for (auto& p : x.elems) {
        if (p.kind() != SemVal::Kind::Pair)
          throw EvalError("product monad applied to a non-product carrier");
        xs1.push_back(p.first());
        xs2.push_back(p.second());
      }
      return product_set(left->apply(SemSet::of(std::move(xs1))),
                         right->apply(SemSet::of(std::move(xs2))));
    }
  }
  throw EvalError("unreachable");
}

inline SemVal Monad::unit(const SemVal& v) const {
  switch (kind) {
    case MonadKind::Pfin: return SemVal::set({v});
    case MonadKind::List: return SemVal::list({v});
    case MonadKind::Exception: return SemVal::ok(v);
    case MonadKind::State: {
      std::vector<std::pair<SemVal, SemVal>> table;
      for (auto& s : state_set.elems) table.emplace_back(s, SemVal::pair(v, s));
      return SemVal::state_table(std::move(table));
    }
    case MonadKind::Free: return SemVal::free_tree(FreeTree::ret(v));
    case MonadKind::Product:
      if (v.kind() != SemVal::Kind::Pair)
        throw EvalError("product monad unit expects a pair");
      return SemVal::pair(left->unit(v.first()), right->unit(v.second()));
  }
  throw EvalError("unreachable");
}

namespace detail {

inline std::shared_ptr<const FreeTree> free_bind(
    const std::shared_ptr<const FreeTree>& t,
    const std::function<SemVal(const SemVal&)>& k) {
  if (t->is_ret) {
    SemVal r = k(t->val);
    if (r.kind() != SemVal::Kind::Free)
      throw EvalError("free bind continuation returned a non-tree");
    return r.tree();
  }
  std::vector<std::shared_ptr<const FreeTree>> kids;
  kids.reserve(t->kids.size());
  for (auto& c : t->kids) kids.push_back(free_bind(c, k));
  return FreeTree::node(t->op, t->param, std::move(kids));
}

} // namespace detail

// Some element of X occurring inside a monadic value over X, if any.
inline std::optional<SemVal> some_element(const Monad& m, const SemVal& t) {
  switch (m.kind) {
    case MonadKind::Pfin:
    case MonadKind::List:
      return t.members().empty() ? std::nullopt
                                 : std::optional<SemVal>(t.members().front());
    case MonadKind::Exception:
      if (t.kind() == SemVal::Kind::Ok) return t.first();
      return std::nullopt;
    case MonadKind::State:
      return t.table().empty()
                 ? std::nullopt
                 : std::optional<SemVal>(t.table().front().second.first());
    case MonadKind::Free: {
      std::function<const FreeTree*(const FreeTree&)> find =
          [&](const FreeTree& n) -> const FreeTree* {
        if (n.is_ret) return &n;
        for (auto& c : n.kids)
          if (auto* r = find(*c)) return r;
        return nullptr;
      };
      if (auto* r = find(*t.tree())) return r->val;
      return std::nullopt;
    }
    case MonadKind::Product: {
      auto a = some_element(*m.left, t.first());
      auto b = some_element(*m.right, t.second());
      if (a && b) return SemVal::pair(*a, *b);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

inline SemVal Monad::bind(const SemVal& t,
                          const std::function<SemVal(const SemVal&)>& k) const {
  switch (kind) {
    case MonadKind::Pfin: {
      if (t.kind() != SemVal::Kind::Set) throw EvalError("pfin bind on a non-set");
      std::vector<SemVal> out;
      for (auto& x : t.members()) {
        SemVal r = k(x);
        if (r.kind() != SemVal::Kind::Set)
          throw EvalError("pfin bind continuation returned a non-set");
        for (auto& y : r.members()) out.push_back(y);
      }
      return SemVal::set(std::move(out));
    }
    case MonadKind::List: {
      if (t.kind() != SemVal::Kind::List) throw EvalError("list bind on a non-list");
      std::vector<SemVal> out;
      for (auto& x : t.members()) {
        SemVal r = k(x);
        if (r.kind() != SemVal::Kind::List)
          throw EvalError("list bind continuation returned a non-list");
        for (auto& y : r.members()) out.push_back(y);
      }
      return SemVal::list(std::move(out));
    }
    case MonadKind::Exception: {
      if (t.kind() == SemVal::Kind::Err) return t;
      if (t.kind() == SemVal::Kind::Ok) return k(t.first());
      throw EvalError("exception bind on a non-tagged value");
    }
    case MonadKind::State: {
      if (t.kind() != SemVal::Kind::State) throw EvalError("state bind on a non-table");
      std::vector<std::pair<SemVal, SemVal>> table;
      for (auto& [s, xs] : t.table()) {
        const SemVal& x = xs.first();
        const SemVal& s1 = xs.second();
        SemVal kt = k(x);
        if (kt.kind() != SemVal::Kind::State)
          throw EvalError("state bind continuation returned a non-table");
        // run the continuation's table at s1
        const SemVal* res = nullptr;
        for (auto& [s2, ys] : kt.table())
          if (s2 == s1) { res = &ys; break; }
        if (!res) throw EvalError("state bind: state not in table");
        table.emplace_back(s, *res);
      }
      return SemVal::state_table(std::move(table));
    }
    case MonadKind::Free: {
      if (t.kind() != SemVal::Kind::Free) throw EvalError("free bind on a non-tree");
      return SemVal::free_tree(detail::free_bind(t.tree(), k));
    }
    case MonadKind::Product: {
      // Componentwise. The continuation receives paired elements; genuine
      // product-model continuations are pairs of maps, so the unused side of
      // the argument pair does not affect the projected result. We fill it
      // with any element occurring in the other component.
      if (t.kind() != SemVal::Kind::Pair)
        throw EvalError("product bind expects a pair");
      auto d1 = some_element(*left, t.first());
      auto d2 = some_element(*right, t.second());
      auto never = [](const SemVal&) -> SemVal {
        throw EvalError("product bind: uninhabited component demanded");
      };
      SemVal l = d2 ? left->bind(t.first(),
                                 [&](const SemVal& x1) {
                                   return k(SemVal::pair(x1, *d2)).first();
                                 })
                    : left->bind(t.first(), never);
      SemVal r = d1 ? right->bind(t.second(),
                                  [&](const SemVal& x2) {
                                    return k(SemVal::pair(*d1, x2)).second();
                                  })
                    : right->bind(t.second(), never);
      return SemVal::pair(std::move(l), std::move(r));
    }
  }
  throw EvalError("unreachable");
}

inline bool Monad::supports_op(const std::string& name) const {
  switch (kind) {
    case MonadKind::Pfin:
    case MonadKind::List:
      return name == "or" || name == "fail";
    case MonadKind::Exception: {
      for (auto& e : except_set.elems)
        if (name == "raise_" + e.str()) return true;
      return false;
    }
    case MonadKind::State: {
      if (name == "read") return true;
      for (auto& s : state_set.elems)
        if (name == "write_" + s.str()) return true;
      return false;
    }
    case MonadKind::Free:
      return free_sig.find_op(name) != nullptr;
    case MonadKind::Product:
      return left->supports_op(name) && right->supports_op(name);
  }
  return false;
}

inline std::vector<std::string> Monad::op_names() const {
  switch (kind) {
    case MonadKind::Pfin:
    case MonadKind::List:
      return {"or", "fail"};
    case MonadKind::Exception: {
      std::vector<std::string> out;
      for (auto& e : except_set.elems) out.push_back("raise_" + e.str());
      return out;
    }
    case MonadKind::State: {
      std::vector<std::string> out{"read"};
      for (auto& s : state_set.elems) out.push_back("write_" + s.str());
      return out;
    }
    case MonadKind::Free: {
      std::vector<std::string> out;
      for (auto& o : free_sig.operations) out.push_back(o.name);
      return out;
    }
    case MonadKind::Product: {
      std::vector<std::string> out;
      for (auto& n : left->op_names())
        if (right->supports_op(n)) out.push_back(n);
      return out;
    }
  }
  return {};
}

inline SemVal Monad::op_apply(const std::string& name,
                              const std::optional<SemVal>& param,
                              const std::vector<SemVal>& args) const {
  switch (kind) {
    case MonadKind::Pfin: {
      if (name == "fail") return SemVal::set({});
      if (name == "or") {
        std::vector<SemVal> out;
        for (auto& a : args)
          for (auto& x : a.members()) out.push_back(x);
        return SemVal::set(std::move(out));
      }
      break;
    }
    case MonadKind::List: {
      if (name == "fail") return SemVal::list({});
      if (name == "or") {
        std::vector<SemVal> out;
        for (auto& a : args)
          for (auto& x : a.members()) out.push_back(x);
        return SemVal::list(std::move(out));
      }
      break;
    }
    case MonadKind::Exception: {
      for (auto& e : except_set.elems) {
        if (name == "raise_" + e.str()) return SemVal::err(e);
      }
      break;
    }
    case MonadKind::State: {
      if (name == "read") {
        if (args.size() != state_set.elems.size())
          throw EvalError("read expects one argument per state");
        std::vector<std::pair<SemVal, SemVal>> table;
        for (std::size_t i = 0; i < state_set.elems.size(); ++i) {
          const SemVal& s = state_set.elems[i];
          // run the i-th branch at state s
          const SemVal* res = nullptr;
          for (auto& [s2, ys] : args[i].table())
            if (s2 == s) { res = &ys; break; }
          if (!res) throw EvalError("read: state not in branch table");
          table.emplace_back(s, *res);
        }
        return SemVal::state_table(std::move(table));
      }
      for (auto& s : state_set.elems) {
        if (name == "write_" + s.str()) {
          if (args.size() != 1) throw EvalError("write expects one argument");
          // run the argument at state s regardless of the incoming state
          const SemVal* res = nullptr;
          for (auto& [s2, ys] : args[0].table())
            if (s2 == s) { res = &ys; break; }
          if (!res) throw EvalError("write: state not in table");
          std::vector<std::pair<SemVal, SemVal>> table;
          for (auto& s0 : state_set.elems) table.emplace_back(s0, *res);
          return SemVal::state_table(std::move(table));
        }
      }
      break;
    }
    case MonadKind::Free: {
      if (free_sig.find_op(name)) {
        std::vector<std::shared_ptr<const FreeTree>> kids;
        for (auto& a : args) {
          if (a.kind() != SemVal::Kind::Free)
            throw EvalError("free op argument is not a tree");
          kids.push_back(a.tree());
        }
        return SemVal::free_tree(FreeTree::node(name, param, std::move(kids)));
      }
      break;
    }
    case MonadKind::Product: {
      std::vector<SemVal> ls, rs;
      for (auto& a : args) {
        if (a.kind() != SemVal::Kind::Pair)
          throw EvalError("product op argument is not a pair");
        ls.push_back(a.first());
        rs.push_back(a.second());
      }
      std::optional<SemVal> pl, pr;
      if (param) {
        if (param->kind() != SemVal::Kind::Pair)
          throw EvalError("product op parameter is not a pair");
        pl = param->first();
        pr = param->second();
      }
      return SemVal::pair(left->op_apply(name, pl, ls),
                          right->op_apply(name, pr, rs));
    }
  }
  throw EvalError("operation '" + name + "' unsupported by this monad kind");
}

namespace detail {

inline void enumerate_free_trees(const Signature& sig, const SemSet& x,
                                 std::size_t depth,
                                 std::vector<SemVal>& out) {
  // trees of depth <= depth (a return leaf has depth 0)
  std::vector<std::vector<std::shared_ptr<const FreeTree>>> by_depth;
  std::vector<std::shared_ptr<const FreeTree>> level;
  for (auto& v : x.elems) level.push_back(FreeTree::ret(v));
  by_depth.push_back(level);
  // cumulative: all trees of depth <= d
  std::vector<std::shared_ptr<const FreeTree>> all = level;
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<std::shared_ptr<const FreeTree>> next;
    for (auto& op : sig.operations) {
      if (op.param) continue; // parameterized ops are not enumerated
      // all tuples of children drawn from `all`
      std::vector<std::size_t> idx(op.arity, 0);
      const std::size_t n = all.size();
      if (op.arity == 0) {
        if (d == 1) next.push_back(FreeTree::node(op.name, std::nullopt, {}));
        continue;
      }
      if (n == 0) continue;
      std::size_t count = 1;
      bool overflow = false;
      for (std::size_t i = 0; i < op.arity; ++i) {
        if (count > 200'000 / n) { overflow = true; break; }
        count *= n;
      }
      if (overflow) throw EvalError("free-tree enumeration budget exceeded");
      for (std::size_t c = 0; c < count; ++c) {
        std::vector<std::shared_ptr<const FreeTree>> kids;
        std::size_t rem = c;
        for (std::size_t i = 0; i < op.arity; ++i) {
          kids.push_back(all[rem % n]);
          rem /= n;
        }
        next.push_back(FreeTree::node(op.name, std::nullopt, std::move(kids)));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  for (auto& t : all) out.push_back(SemVal::free_tree(t));
}

} // namespace detail

inline std::vector<SemVal> Monad::enumerate_bounded(const SemSet& x,
                                                    std::size_t bound) const {
  switch (kind) {
    case MonadKind::Pfin:
    case MonadKind::Exception:
    case MonadKind::State:
      return apply(x).elems;
    case MonadKind::List: {
      std::vector<SemVal> out;
      std::vector<std::vector<SemVal>> lists{{}};
      out.push_back(SemVal::list({}));
      for (std::size_t len = 1; len <= bound; ++len) {
        std::vector<std::vector<SemVal>> next;
        for (auto& l : lists)
          for (auto& v : x.elems) {
            auto l2 = l;
            l2.push_back(v);
            out.push_back(SemVal::list(l2));
            next.push_back(std::move(l2));
          }
        lists = std::move(next);
      }
      return out;
    }
    case MonadKind::Free: {
      std::vector<SemVal> out;
      detail::enumerate_free_trees(free_sig, x, bound, out);
      return out;
    }
    case MonadKind::Product: {
      std::vector<SemVal> xs1, xs2;
      for (auto& p : x.elems) {
        xs1.push_back(p.first());
        xs2.push_back(p.second());
      }
      auto l = left->enumerate_bounded(SemSet::of(std::move(xs1)), bound);
      auto r = right->enumerate_bounded(SemSet::of(std::move(xs2)), bound);
      std::vector<SemVal> out;
      for (auto& a : l)
        for (auto& b : r) out.push_back(SemVal::pair(a, b));
      return out;
    }
  }
  return {};
}

// Factory matching the JSON model configuration.
inline Monad make_monad(const std::string& kind_name, const SemSet& e_or_s,
                        const Signature& sig) {
  if (kind_name == "pfin") return make_pfin_monad();
  if (kind_name == "list") return make_list_monad();
  if (kind_name == "exception") return make_exception_monad(e_or_s);
  if (kind_name == "state") return make_state_monad(e_or_s);
  if (kind_name == "free") return make_free_monad(sig);
  throw EvalError("unknown monad kind '" + kind_name + "'");
}

} // namespace cbpv
