// Seeded, type-directed random generation of well-typed computation terms.
//
// Generation works in checking mode against a target computation type and
// backtracks when a chosen production cannot be completed (for example, a
// base type with no constants in scope). Binder types are drawn from a small
// first-order pool so that generated terms always have finite denotations.
#pragma once

#include <random>

#include "cbpv/typecheck.hpp"

namespace cbpv {

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct GenFail {}; // local backtracking signal

class Generator {
 public:
  Generator(const Signature& sig, const ConstEnv& cenv, std::uint64_t seed)
      : sig_(sig), cenv_(cenv), rng_(seed) {
    // first-order pool for binder / intermediate types
    pool_.push_back(ValueType::unit());
    for (auto& b : sig_.value_bases) pool_.push_back(ValueType::mk_base(b));
    std::vector<ValueType> layer = pool_;
    for (auto& a : layer)
      for (auto& b : layer) {
        pool_.push_back(ValueType::sum(a, b));
        pool_.push_back(ValueType::prod(a, b));
      }
  }

  TermPtr gen_comp_top(const CompType& target, std::size_t depth) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      try {
        Context ctx;
        TermPtr t = gen_comp(ctx, target, depth);
        check_comp(sig_, Context{}, *t, target, cenv_); // defensive re-check
        return t;
      } catch (const GenFail&) {
      } catch (const TypeError&) {
      }
    }
    throw GenError("could not generate a term of type " + print_ctype(target) +
                   "; the type may be uninhabited with the given constants");
  }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
  }
  std::string fresh() { return "x" + std::to_string(counter_++); }

  const ValueType& pool_type() { return pool_[pick(pool_.size())]; }

  // -- values ---------------------------------------------------------------

  TermPtr gen_value(const Context& ctx, const ValueType& a, std::size_t depth) {
    // prefer a variable or constant of the right type half the time
    std::vector<TermPtr> atoms;
    for (auto& [n, t] : ctx.entries())
      if (t == a) atoms.push_back(mk::var(n));
    for (auto& [n, t] : cenv_.values)
      if (t == a) atoms.push_back(mk::constant(n));
    if (!atoms.empty() && (depth == 0 || coin(0.5)))
      return atoms[pick(atoms.size())];

    switch (a.kind) {
      case ValueType::Kind::Unit:
        return mk::unitval();
      case ValueType::Kind::Prod:
        if (depth == 0) break;
        return mk::pair(gen_value(ctx, *a.fst, depth - 1),
                        gen_value(ctx, *a.snd, depth - 1));
      case ValueType::Kind::Sum: {
        if (depth == 0) break;
        // try one side, fall back to the other
        bool l = coin(0.5);
        try {
          return l ? mk::inl(gen_value(ctx, *a.fst, depth - 1))
                   : mk::inr(gen_value(ctx, *a.snd, depth - 1));
        } catch (const GenFail&) {
          return l ? mk::inr(gen_value(ctx, *a.snd, depth - 1))
                   : mk::inl(gen_value(ctx, *a.fst, depth - 1));
        }
      }
      case ValueType::Kind::Thunk:
        if (depth == 0) break;
        return mk::thunk(gen_comp(ctx, *a.comp, depth - 1));
      case ValueType::Kind::Base:
      case ValueType::Kind::Empty:
        break; // only atoms can produce these
    }
    if (!atoms.empty()) return atoms[pick(atoms.size())];
    throw GenFail{};
  }

  // -- computations ---------------------------------------------------------

  TermPtr gen_comp(const Context& ctx, const CompType& b, std::size_t depth) {
    // introduction forms for the target type
    auto intro = [&]() -> TermPtr {
      switch (b.kind) {
        case CompType::Kind::Free:
          return mk::ret(gen_value(ctx, *b.val, depth));
        case CompType::Kind::Arrow: {
          std::string x = fresh();
          return mk::lambda(x, *b.val,
                            gen_comp(ctx.extended(x, *b.val), *b.body,
                                     depth == 0 ? 0 : depth - 1));
        }
        case CompType::Kind::With:
          if (depth == 0) throw GenFail{};
          return mk::cpair(gen_comp(ctx, *b.fst, depth - 1),
                           gen_comp(ctx, *b.snd, depth - 1));
        case CompType::Kind::Top:
        case CompType::Kind::Base:
          throw GenFail{}; // no introduction form; rely on ops/elims/constants
      }
      throw GenFail{};
    };

    std::vector<TermPtr> catoms;
    for (auto& [n, t] : cenv_.comps)
      if (t == b) catoms.push_back(mk::constant(n));

    if (depth == 0) {
      // leaves: intro, a constant, or a nullary operation
      std::vector<std::function<TermPtr()>> leaves;
      leaves.push_back(intro);
      if (!catoms.empty())
        leaves.push_back([&]() { return catoms[pick(catoms.size())]; });
      for (auto& op : sig_.operations) {
        if (op.arity == 0 && !op.param)
          leaves.push_back([&op]() { return mk::op(op.name, std::nullopt, {}); });
      }
      std::size_t start = pick(leaves.size());
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        try {
          return leaves[(start + i) % leaves.size()]();
        } catch (const GenFail&) {
        }
      }
      throw GenFail{};
    }

    std::vector<std::function<TermPtr()>> rules;
    rules.push_back(intro);
    if (!catoms.empty())
      rules.push_back([&]() { return catoms[pick(catoms.size())]; });

    // operation applied at this type
    if (!sig_.operations.empty()) {
      rules.push_back([&]() {
        const OpDecl& op = sig_.operations[pick(sig_.operations.size())];
        std::optional<TermPtr> param;
        if (op.param) param = gen_value(ctx, *op.param, depth - 1);
        std::vector<TermPtr> args;
        for (std::size_t i = 0; i < op.arity; ++i)
          args.push_back(gen_comp(ctx, b, depth - 1));
        return mk::op(op.name, std::move(param), std::move(args));
      });
    }

    // sequencing: M to x. N
    rules.push_back([&]() {
      ValueType a = pool_type();
      TermPtr m = gen_comp(ctx, CompType::free(a), depth - 1);
      std::string x = fresh();
      TermPtr n = gen_comp(ctx.extended(x, a), b, depth - 1);
      return mk::to(std::move(m), x, std::move(n));
    });

    // application: (\x:A. M) V or any generated function
    rules.push_back([&]() {
      ValueType a = pool_type();
      TermPtr m = gen_comp(ctx, CompType::arrow(a, b), depth - 1);
      TermPtr v = gen_value(ctx, a, depth - 1);
      return mk::app(std::move(m), std::move(v));
    });

    // force (thunk M)
    rules.push_back([&]() {
      TermPtr v = gen_value(ctx, ValueType::thunk(b), depth - 1);
      return mk::force(std::move(v));
    });

    // let x = V in M
    rules.push_back([&]() {
      ValueType a = pool_type();
      TermPtr v = gen_value(ctx, a, depth - 1);
      std::string x = fresh();
      TermPtr m = gen_comp(ctx.extended(x, a), b, depth - 1);
      return mk::letval(x, std::move(v), std::move(m));
    });

    // case on a sum-typed value
    rules.push_back([&]() {
      ValueType a = ValueType::sum(pool_type(), pool_type());
      TermPtr v = gen_value(ctx, a, depth - 1);
      std::string x = fresh(), y = fresh();
      TermPtr l = gen_comp(ctx.extended(x, *a.fst), b, depth - 1);
      TermPtr r = gen_comp(ctx.extended(y, *a.snd), b, depth - 1);
      // bare injections are not inferable as case scrutinees; let-bind first
      std::string s = fresh();
      TermPtr body = mk::case_of(mk::var(s), x, std::move(l), y, std::move(r));
      return mk::letval(s, std::move(v), std::move(body));
    });

    // pattern-match on a pair
    rules.push_back([&]() {
      ValueType a = ValueType::prod(pool_type(), pool_type());
      TermPtr v = gen_value(ctx, a, depth - 1);
      std::string x = fresh(), y = fresh();
      Context ctx2 = ctx.extended(x, *a.fst).extended(y, *a.snd);
      TermPtr m = gen_comp(ctx2, b, depth - 1);
      std::string s = fresh();
      TermPtr body = mk::pmpair(mk::var(s), x, y, std::move(m));
      return mk::letval(s, std::move(v), std::move(body));
    });

    // projections out of a computation pair
    rules.push_back([&]() {
      bool first = coin(0.5);
      CompType w = first ? CompType::with(b, CompType::free(pool_type()))
                         : CompType::with(CompType::free(pool_type()), b);
      TermPtr m = gen_comp(ctx, w, depth - 1);
      return first ? mk::proj1(std::move(m)) : mk::proj2(std::move(m));
    });

    std::size_t start = pick(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
      try {
        return rules[(start + i) % rules.size()]();
      } catch (const GenFail&) {
      }
    }
    throw GenFail{};
  }

  const Signature& sig_;
  const ConstEnv& cenv_;
  std::mt19937_64 rng_;
  std::vector<ValueType> pool_;
  std::size_t counter_ = 0;
};

} // namespace detail

inline std::vector<TermPtr> generate_terms(const Signature& sig,
                                           const ConstEnv& cenv,
                                           const CompType& target,
                                           std::size_t max_depth,
                                           std::uint64_t seed,
                                           std::size_t count) {
  detail::Generator g(sig, cenv, seed);
  std::vector<TermPtr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(g.gen_comp_top(target, max_depth));
  return out;
}

} // namespace cbpv
