// Denotational evaluation of well-typed terms in a model.
//
// Evaluation is type-directed: nullary operations, injections and thunks only
// make sense against a known type, so computations are evaluated in checking
// mode. Forcing a thunk is invisible: the carrier of U B is the carrier of B,
// and thunk/force both evaluate to the identity on denotations.
//
// Product models are evaluated componentwise; every semantic value of a
// product model is a pair of component values and environments are projected
// accordingly.
#pragma once

#include "cbpv/model.hpp"
#include "cbpv/typecheck.hpp"

namespace cbpv {

// Evaluation environment: names bound to a type and a semantic value.
// Innermost binding wins, mirroring the typing context.
class Env {
 public:
  Env() = default;

  Env extended(std::string name, ValueType t, SemVal v) const {
    Env e = *this;
    e.entries_.emplace_back(std::move(name), std::move(t), std::move(v));
    return e;
  }

  const SemVal* lookup(const std::string& name) const {
    for (std::size_t i = entries_.size(); i-- > 0;)
      if (std::get<0>(entries_[i]) == name) return &std::get<2>(entries_[i]);
    return nullptr;
  }

  Context type_context() const {
    Context c;
    for (auto& [n, t, v] : entries_) c = c.extended(n, t);
    return c;
  }

  const std::vector<std::tuple<std::string, ValueType, SemVal>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::tuple<std::string, ValueType, SemVal>> entries_;
};

SemSet interp_vtype(const Model& m, const ValueType& t);
CompObject interp_ctype(const Model& m, const CompType& t);
SemVal eval_value(const Model& m, const ConstEnv& cenv, const Env& env,
                  const Term& v);
SemVal eval_value_check(const Model& m, const ConstEnv& cenv, const Env& env,
                        const Term& v, const ValueType& expected);
SemVal eval_comp(const Model& m, const ConstEnv& cenv, const Env& env,
                 const Term& t, const CompType& expected);

inline SemSet interp_vtype(const Model& m, const ValueType& t) {
  if (m.left) // product model: pairs of component interpretations
    return product_set(interp_vtype(*m.left, t), interp_vtype(*m.right, t));
  switch (t.kind) {
    case ValueType::Kind::Base: {
      auto it = m.base_vtype.find(t.base);
      if (it == m.base_vtype.end())
        throw EvalError("value base type '" + t.base + "' has no interpretation");
      return it->second;
    }
    case ValueType::Kind::Unit:
      return SemSet::of({SemVal::unit()});
    case ValueType::Kind::Empty:
      return SemSet::of({});
    case ValueType::Kind::Prod:
      return product_set(interp_vtype(m, *t.fst), interp_vtype(m, *t.snd));
    case ValueType::Kind::Sum:
      return sum_set(interp_vtype(m, *t.fst), interp_vtype(m, *t.snd));
    case ValueType::Kind::Thunk:
      // the carrier of a thunk type is the carrier of the computation type
      return interp_ctype(m, *t.comp).carrier;
  }
  throw EvalError("unreachable");
}

inline CompObject interp_ctype(const Model& m, const CompType& t) {
  if (m.left) {
    // product models are evaluated componentwise before any of this
    // structure is consulted; only the carrier is meaningful here
    CompObject o;
    o.carrier = product_set(interp_ctype(*m.left, t).carrier,
                            interp_ctype(*m.right, t).carrier);
    o.extend = [](const SemVal&, const Continuation&) -> SemVal {
      throw EvalError("product computation objects are evaluated componentwise");
    };
    o.op_interp = [](const std::string&, const std::optional<SemVal>&,
                     const std::vector<SemVal>&) -> SemVal {
      throw EvalError("product computation objects are evaluated componentwise");
    };
    return o;
  }
  switch (t.kind) {
    case CompType::Kind::Base: {
      auto it = m.base_ctype.find(t.base);
      if (it == m.base_ctype.end())
        throw EvalError("computation base type '" + t.base +
                        "' has no interpretation");
      return it->second;
    }
    case CompType::Kind::Free:
      return m.free_obj(interp_vtype(m, *t.val));
    case CompType::Kind::Top:
      return m.top_obj;
    case CompType::Kind::With:
      return m.with_obj(interp_ctype(m, *t.fst), interp_ctype(m, *t.snd));
    case CompType::Kind::Arrow:
      return m.power_obj(interp_vtype(m, *t.val), interp_ctype(m, *t.body));
  }
  throw EvalError("unreachable");
}

namespace detail {

inline Env project_env(const Env& env, bool first) {
  Env out;
  for (auto& [n, t, v] : env.entries()) {
    if (v.kind() != SemVal::Kind::Pair)
      throw EvalError("product-model environment value for '" + n +
                      "' is not a pair");
    out = out.extended(n, t, first ? v.first() : v.second());
  }
  return out;
}

} // namespace detail

inline SemVal eval_value(const Model& m, const ConstEnv& cenv, const Env& env,
                         const Term& v) {
  if (m.left)
    return SemVal::pair(
        eval_value(*m.left, cenv, detail::project_env(env, true), v),
        eval_value(*m.right, cenv, detail::project_env(env, false), v));
  switch (v.kind) {
    case Term::Kind::Var: {
      if (const SemVal* x = env.lookup(v.name)) return *x;
      auto it = m.const_interp.find(v.name);
      if (it != m.const_interp.end()) return it->second;
      throw EvalError("unbound variable '" + v.name + "'");
    }
    case Term::Kind::Const: {
      auto it = m.const_interp.find(v.name);
      if (it == m.const_interp.end())
        throw EvalError("constant '" + v.name + "' has no interpretation");
      return it->second;
    }
    case Term::Kind::UnitVal:
      return SemVal::unit();
    case Term::Kind::Pair:
      return SemVal::pair(eval_value(m, cenv, env, *v.kids[0]),
                          eval_value(m, cenv, env, *v.kids[1]));
    case Term::Kind::Inl:
      return SemVal::inl(eval_value(m, cenv, env, *v.kids[0]));
    case Term::Kind::Inr:
      return SemVal::inr(eval_value(m, cenv, env, *v.kids[0]));
    case Term::Kind::Thunk: {
      CompType bt = infer_comp(m.sig, env.type_context(), *v.kids[0], cenv);
      return eval_comp(m, cenv, env, *v.kids[0], bt);
    }
    default:
      throw EvalError("computation term in value position");
  }
}

inline SemVal eval_value_check(const Model& m, const ConstEnv& cenv,
                               const Env& env, const Term& v,
                               const ValueType& expected) {
  switch (v.kind) {
    case Term::Kind::Inl:
      if (expected.kind != ValueType::Kind::Sum)
        throw EvalError("inl against non-sum type");
      if (m.left)
        break; // componentwise via eval_value would lose the expected type
      return SemVal::inl(eval_value_check(m, cenv, env, *v.kids[0], *expected.fst));
    case Term::Kind::Inr:
      if (expected.kind != ValueType::Kind::Sum)
        throw EvalError("inr against non-sum type");
      if (m.left) break;
      return SemVal::inr(eval_value_check(m, cenv, env, *v.kids[0], *expected.snd));
    case Term::Kind::Pair:
      if (expected.kind != ValueType::Kind::Prod)
        throw EvalError("pair against non-product type");
      if (m.left) break;
      return SemVal::pair(eval_value_check(m, cenv, env, *v.kids[0], *expected.fst),
                          eval_value_check(m, cenv, env, *v.kids[1], *expected.snd));
    case Term::Kind::Thunk:
      if (expected.kind != ValueType::Kind::Thunk)
        throw EvalError("thunk against non-thunk type");
      if (m.left) break;
      return eval_comp(m, cenv, env, *v.kids[0], *expected.comp);
    default:
      return eval_value(m, cenv, env, v);
  }
  // product model: recurse componentwise, re-entering checking mode
  return SemVal::pair(
      eval_value_check(*m.left, cenv, detail::project_env(env, true), v, expected),
      eval_value_check(*m.right, cenv, detail::project_env(env, false), v,
                       expected));
}

inline SemVal eval_comp(const Model& m, const ConstEnv& cenv, const Env& env,
                        const Term& t, const CompType& expected) {
  if (m.left)
    return SemVal::pair(
        eval_comp(*m.left, cenv, detail::project_env(env, true), t, expected),
        eval_comp(*m.right, cenv, detail::project_env(env, false), t, expected));
  switch (t.kind) {
    case Term::Kind::Return: {
      if (expected.kind != CompType::Kind::Free)
        throw EvalError("return against non-returner type");
      return m.monad.unit(eval_value_check(m, cenv, env, *t.kids[0], *expected.val));
    }
    case Term::Kind::To: {
      CompType mt = infer_comp(m.sig, env.type_context(), *t.kids[0], cenv);
      if (mt.kind != CompType::Kind::Free)
        throw EvalError("left of 'to' must have a returner type");
      ValueType at = *mt.val;
      SemVal tm = eval_comp(m, cenv, env, *t.kids[0], mt);
      CompObject obj = interp_ctype(m, expected);
      std::string x = t.binders[0];
      TermPtr body = t.kids[1];
      return obj.extend(tm, [&, x, at, body](const SemVal& xv) {
        return eval_comp(m, cenv, env.extended(x, at, xv), *body, expected);
      });
    }
    case Term::Kind::Force:
      return eval_value_check(m, cenv, env, *t.kids[0],
                              ValueType::thunk(expected));
    case Term::Kind::Lambda: {
      if (expected.kind != CompType::Kind::Arrow)
        throw EvalError("lambda against non-function type");
      SemSet dom = interp_vtype(m, *expected.val);
      ValueType at = *expected.val;
      CompType bt = *expected.body;
      std::string x = t.binders[0];
      TermPtr body = t.kids[0];
      // capture by value: the closure outlives this frame
      Model mm = m;
      ConstEnv ce = cenv;
      Env e = env;
      return SemVal::fun(dom, [mm, ce, e, x, at, bt, body](const SemVal& arg) {
        return eval_comp(mm, ce, e.extended(x, at, arg), *body, bt);
      });
    }
    case Term::Kind::App: {
      CompType mt = infer_comp(m.sig, env.type_context(), *t.kids[0], cenv);
      if (mt.kind != CompType::Kind::Arrow)
        throw EvalError("application head has non-function type");
      SemVal f = eval_comp(m, cenv, env, *t.kids[0], mt);
      SemVal v = eval_value_check(m, cenv, env, *t.kids[1], *mt.val);
      return f.apply(v);
    }
    case Term::Kind::CPair: {
      if (expected.kind != CompType::Kind::With)
        throw EvalError("computation pair against non-product type");
      return SemVal::pair(eval_comp(m, cenv, env, *t.kids[0], *expected.fst),
                          eval_comp(m, cenv, env, *t.kids[1], *expected.snd));
    }
    case Term::Kind::Proj1: {
      CompType mt = infer_comp(m.sig, env.type_context(), *t.kids[0], cenv);
      if (mt.kind != CompType::Kind::With)
        throw EvalError("fst of a non-product computation");
      return eval_comp(m, cenv, env, *t.kids[0], mt).first();
    }
    case Term::Kind::Proj2: {
      CompType mt = infer_comp(m.sig, env.type_context(), *t.kids[0], cenv);
      if (mt.kind != CompType::Kind::With)
        throw EvalError("snd of a non-product computation");
      return eval_comp(m, cenv, env, *t.kids[0], mt).second();
    }
    case Term::Kind::PmPair: {
      ValueType vt = infer_value(m.sig, env.type_context(), *t.kids[0], cenv);
      if (vt.kind != ValueType::Kind::Prod)
        throw EvalError("pm of a non-pair value");
      SemVal v = eval_value(m, cenv, env, *t.kids[0]);
      Env e2 = env.extended(t.binders[0], *vt.fst, v.first())
                   .extended(t.binders[1], *vt.snd, v.second());
      return eval_comp(m, cenv, e2, *t.kids[1], expected);
    }
    case Term::Kind::Case: {
      ValueType vt = infer_value(m.sig, env.type_context(), *t.kids[0], cenv);
      if (vt.kind != ValueType::Kind::Sum)
        throw EvalError("case of a non-sum value");
      SemVal v = eval_value(m, cenv, env, *t.kids[0]);
      if (v.kind() == SemVal::Kind::Inl)
        return eval_comp(m, cenv, env.extended(t.binders[0], *vt.fst, v.first()),
                         *t.kids[1], expected);
      if (v.kind() == SemVal::Kind::Inr)
        return eval_comp(m, cenv, env.extended(t.binders[1], *vt.snd, v.first()),
                         *t.kids[2], expected);
      throw EvalError("case scrutinee is not an injection");
    }
    case Term::Kind::CaseEmpty:
      // no closed value of the empty type exists, so a well-typed closed term
      // never evaluates this
      throw EvalError("empty-type elimination reached during evaluation");
    case Term::Kind::LetVal: {
      ValueType vt = infer_value(m.sig, env.type_context(), *t.kids[0], cenv);
      SemVal v = eval_value(m, cenv, env, *t.kids[0]);
      return eval_comp(m, cenv, env.extended(t.binders[0], vt, v), *t.kids[1],
                       expected);
    }
    case Term::Kind::Op: {
      const OpDecl* decl = m.sig.find_op(t.name);
      if (!decl) throw EvalError("unknown operation '" + t.name + "'");
      std::optional<SemVal> param;
      std::size_t first = 0;
      if (t.has_param) {
        param = eval_value_check(m, cenv, env, *t.kids[0], *decl->param);
        first = 1;
      }
      std::vector<SemVal> args;
      for (std::size_t i = first; i < t.kids.size(); ++i)
        args.push_back(eval_comp(m, cenv, env, *t.kids[i], expected));
      return interp_ctype(m, expected).op_interp(t.name, param, args);
    }
    case Term::Kind::Const: {
      auto it = m.const_interp.find(t.name);
      if (it == m.const_interp.end())
        throw EvalError("constant '" + t.name + "' has no interpretation");
      return it->second;
    }
    default:
      throw EvalError("value term in computation position");
  }
}

// Infer the type, then evaluate against it.
inline std::pair<CompType, SemVal> eval_comp_infer(const Model& m,
                                                   const ConstEnv& cenv,
                                                   const Env& env,
                                                   const Term& t) {
  CompType bt = infer_comp(m.sig, env.type_context(), t, cenv);
  return {bt, eval_comp(m, cenv, env, t, bt)};
}

} // namespace cbpv
