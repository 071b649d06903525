// Syntax-directed type inference for the value and computation judgments.
#pragma once

#include <map>
#include <variant>

#include "cbpv/syntax.hpp"

namespace cbpv {

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered typing context; innermost binding wins on lookup.
class Context {
 public:
  Context() = default;

  Context extended(std::string name, ValueType t) const {
    Context c = *this;
    c.entries_.emplace_back(std::move(name), std::move(t));
    return c;
  }

  const ValueType* lookup(const std::string& name) const {
    for (std::size_t i = entries_.size(); i-- > 0;)
      if (entries_[i].first == name) return &entries_[i].second;
    return nullptr;
  }

  const std::vector<std::pair<std::string, ValueType>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, ValueType>> entries_;
};

// Constant typings: each name is either a value constant or a computation
// constant.
struct ConstEnv {
  std::map<std::string, ValueType> values;
  std::map<std::string, CompType> comps;

  const ValueType* value_type(const std::string& n) const {
    auto it = values.find(n);
    return it == values.end() ? nullptr : &it->second;
  }
  const CompType* comp_type(const std::string& n) const {
    auto it = comps.find(n);
    return it == comps.end() ? nullptr : &it->second;
  }
};

ValueType infer_value(const Signature& sig, const Context& ctx, const Term& v,
                      const ConstEnv& env);
CompType infer_comp(const Signature& sig, const Context& ctx, const Term& m,
                    const ConstEnv& env);

namespace detail {

[[noreturn]] inline void type_fail(const std::string& msg) { throw TypeError(msg); }

inline void check_base_names(const Signature& sig, const ValueType& t);
inline void check_base_names(const Signature& sig, const CompType& t);

inline void check_base_names(const Signature& sig, const ValueType& t) {
  switch (t.kind) {
    case ValueType::Kind::Base:
      if (!sig.has_value_base(t.base))
        type_fail("unknown value base type '" + t.base + "'");
      break;
    case ValueType::Kind::Prod:
    case ValueType::Kind::Sum:
      check_base_names(sig, *t.fst);
      check_base_names(sig, *t.snd);
      break;
    case ValueType::Kind::Thunk:
      check_base_names(sig, *t.comp);
      break;
    default:
      break;
  }
}

inline void check_base_names(const Signature& sig, const CompType& t) {
  switch (t.kind) {
    case CompType::Kind::Base:
      if (!sig.has_comp_base(t.base))
        type_fail("unknown computation base type '" + t.base + "'");
      break;
    case CompType::Kind::Free:
      check_base_names(sig, *t.val);
      break;
    case CompType::Kind::With:
      check_base_names(sig, *t.fst);
      check_base_names(sig, *t.snd);
      break;
    case CompType::Kind::Arrow:
      check_base_names(sig, *t.val);
      check_base_names(sig, *t.body);
      break;
    default:
      break;
  }
}

} // namespace detail

inline ValueType infer_value(const Signature& sig, const Context& ctx, const Term& v,
                             const ConstEnv& env) {
  switch (v.kind) {
    case Term::Kind::Var: {
      if (const ValueType* t = ctx.lookup(v.name)) return *t;
      // free identifiers in value position may be value constants
      if (const ValueType* t = env.value_type(v.name)) return *t;
      detail::type_fail("unbound variable '" + v.name + "'");
    }
    case Term::Kind::Const: {
      if (const ValueType* t = env.value_type(v.name)) return *t;
      detail::type_fail("unknown value constant '" + v.name + "'");
    }
    case Term::Kind::UnitVal:
      return ValueType::unit();
    case Term::Kind::Pair:
      return ValueType::prod(infer_value(sig, ctx, *v.kids[0], env),
                             infer_value(sig, ctx, *v.kids[1], env));
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      detail::type_fail("bare injection needs a surrounding checking position "
                        "(sums are not inferable)");
    case Term::Kind::Thunk:
      return ValueType::thunk(infer_comp(sig, ctx, *v.kids[0], env));
    default:
      detail::type_fail("computation term in value position");
  }
}

// Checking mode for values; needed for injections, whose sibling type is not
// inferable.
inline void check_value(const Signature& sig, const Context& ctx, const Term& v,
                        const ValueType& expected, const ConstEnv& env) {
  switch (v.kind) {
    case Term::Kind::Inl:
      if (expected.kind != ValueType::Kind::Sum)
        detail::type_fail("inl against non-sum type " + print_vtype(expected));
      check_value(sig, ctx, *v.kids[0], *expected.fst, env);
      return;
    case Term::Kind::Inr:
      if (expected.kind != ValueType::Kind::Sum)
        detail::type_fail("inr against non-sum type " + print_vtype(expected));
      check_value(sig, ctx, *v.kids[0], *expected.snd, env);
      return;
    case Term::Kind::Pair:
      if (expected.kind != ValueType::Kind::Prod)
        detail::type_fail("pair against non-product type " + print_vtype(expected));
      check_value(sig, ctx, *v.kids[0], *expected.fst, env);
      check_value(sig, ctx, *v.kids[1], *expected.snd, env);
      return;
    default: {
      ValueType got = infer_value(sig, ctx, v, env);
      if (got != expected)
        detail::type_fail("expected " + print_vtype(expected) + ", got " +
                          print_vtype(got));
      return;
    }
  }
}

inline CompType infer_comp(const Signature& sig, const Context& ctx, const Term& m,
                           const ConstEnv& env) {
  switch (m.kind) {
    case Term::Kind::Return:
      return CompType::free(infer_value(sig, ctx, *m.kids[0], env));
    case Term::Kind::To: {
      CompType mt = infer_comp(sig, ctx, *m.kids[0], env);
      if (mt.kind != CompType::Kind::Free)
        detail::type_fail("left of 'to' must have a returner type, got " +
                          print_ctype(mt));
      Context ctx2 = ctx.extended(m.binders[0], *mt.val);
      return infer_comp(sig, ctx2, *m.kids[1], env);
    }
    case Term::Kind::Force: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      if (vt.kind != ValueType::Kind::Thunk)
        detail::type_fail("force of a non-thunk value of type " + print_vtype(vt));
      return *vt.comp;
    }
    case Term::Kind::Lambda: {
      if (!m.vannot)
        detail::type_fail("lambda binder '" + m.binders[0] +
                          "' requires a type annotation");
      detail::check_base_names(sig, *m.vannot);
      Context ctx2 = ctx.extended(m.binders[0], *m.vannot);
      return CompType::arrow(*m.vannot, infer_comp(sig, ctx2, *m.kids[0], env));
    }
    case Term::Kind::App: {
      CompType mt = infer_comp(sig, ctx, *m.kids[0], env);
      if (mt.kind != CompType::Kind::Arrow)
        detail::type_fail("application head has non-function type " +
                          print_ctype(mt));
      check_value(sig, ctx, *m.kids[1], *mt.val, env);
      return *mt.body;
    }
    case Term::Kind::CPair:
      return CompType::with(infer_comp(sig, ctx, *m.kids[0], env),
                            infer_comp(sig, ctx, *m.kids[1], env));
    case Term::Kind::Proj1: {
      CompType mt = infer_comp(sig, ctx, *m.kids[0], env);
      if (mt.kind != CompType::Kind::With)
        detail::type_fail("fst of a non-product computation of type " +
                          print_ctype(mt));
      return *mt.fst;
    }
    case Term::Kind::Proj2: {
      CompType mt = infer_comp(sig, ctx, *m.kids[0], env);
      if (mt.kind != CompType::Kind::With)
        detail::type_fail("snd of a non-product computation of type " +
                          print_ctype(mt));
      return *mt.snd;
    }
    case Term::Kind::PmPair: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      if (vt.kind != ValueType::Kind::Prod)
        detail::type_fail("pm of a non-pair value of type " + print_vtype(vt));
      Context ctx2 =
          ctx.extended(m.binders[0], *vt.fst).extended(m.binders[1], *vt.snd);
      return infer_comp(sig, ctx2, *m.kids[1], env);
    }
    case Term::Kind::Case: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      if (vt.kind != ValueType::Kind::Sum)
        detail::type_fail("case of a non-sum value of type " + print_vtype(vt));
      CompType lt =
          infer_comp(sig, ctx.extended(m.binders[0], *vt.fst), *m.kids[1], env);
      CompType rt =
          infer_comp(sig, ctx.extended(m.binders[1], *vt.snd), *m.kids[2], env);
      if (lt != rt)
        detail::type_fail("case branches disagree: " + print_ctype(lt) + " vs " +
                          print_ctype(rt));
      return lt;
    }
    case Term::Kind::CaseEmpty: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      if (vt.kind != ValueType::Kind::Empty)
        detail::type_fail("case0 of a non-empty-typed value of type " +
                          print_vtype(vt));
      detail::check_base_names(sig, *m.cannot_);
      return *m.cannot_;
    }
    case Term::Kind::LetVal: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      return infer_comp(sig, ctx.extended(m.binders[0], vt), *m.kids[1], env);
    }
    case Term::Kind::Op: {
      const OpDecl* decl = sig.find_op(m.name);
      if (!decl) detail::type_fail("unknown operation '" + m.name + "'");
      std::size_t nargs = m.kids.size() - (m.has_param ? 1 : 0);
      if (nargs != decl->arity)
        detail::type_fail("operation '" + m.name + "' expects " +
                          std::to_string(decl->arity) + " arguments, got " +
                          std::to_string(nargs));
      if (m.has_param != decl->param.has_value())
        detail::type_fail("operation '" + m.name + "' " +
                          (decl->param ? "requires" : "does not take") +
                          " a value parameter");
      if (m.has_param) check_value(sig, ctx, *m.kids[0], *decl->param, env);
      // all computation arguments share the operation's result type; infer it
      // from whichever argument determines it
      std::size_t first = m.has_param ? 1 : 0;
      std::optional<CompType> result;
      std::string first_err;
      for (std::size_t i = first; i < m.kids.size(); ++i) {
        try {
          result = infer_comp(sig, ctx, *m.kids[i], env);
          break;
        } catch (const TypeError& e) {
          if (first_err.empty()) first_err = e.what();
        }
      }
      if (!result) {
        if (nargs == 0)
          detail::type_fail("nullary operation '" + m.name +
                            "' has ambiguous type; use it inside a determining "
                            "context");
        detail::type_fail(first_err);
      }
      for (std::size_t i = first; i < m.kids.size(); ++i) {
        CompType t = infer_comp(sig, ctx, *m.kids[i], env);
        if (t != *result)
          detail::type_fail("operation '" + m.name + "' argument types disagree: " +
                            print_ctype(*result) + " vs " + print_ctype(t));
      }
      return *result;
    }
    case Term::Kind::Const: {
      if (const CompType* t = env.comp_type(m.name)) return *t;
      detail::type_fail("unknown computation constant '" + m.name + "'");
    }
    default:
      detail::type_fail("value term in computation position");
  }
}

// Check a computation against an expected type. Needed to resolve nullary
// operations and empty-case annotations against a known target.
inline void check_comp(const Signature& sig, const Context& ctx, const Term& m,
                       const CompType& expected, const ConstEnv& env) {
  switch (m.kind) {
    case Term::Kind::Op: {
      const OpDecl* decl = sig.find_op(m.name);
      if (!decl) detail::type_fail("unknown operation '" + m.name + "'");
      if (m.has_param != decl->param.has_value())
        detail::type_fail("operation '" + m.name + "' parameter mismatch");
      if (m.has_param) check_value(sig, ctx, *m.kids[0], *decl->param, env);
      std::size_t first = m.has_param ? 1 : 0;
      if (m.kids.size() - first != decl->arity)
        detail::type_fail("operation '" + m.name + "' arity mismatch");
      for (std::size_t i = first; i < m.kids.size(); ++i)
        check_comp(sig, ctx, *m.kids[i], expected, env);
      return;
    }
    case Term::Kind::Return: {
      if (expected.kind != CompType::Kind::Free)
        detail::type_fail("return against non-returner type " +
                          print_ctype(expected));
      check_value(sig, ctx, *m.kids[0], *expected.val, env);
      return;
    }
    case Term::Kind::To: {
      CompType mt = infer_comp(sig, ctx, *m.kids[0], env);
      if (mt.kind != CompType::Kind::Free)
        detail::type_fail("left of 'to' must have a returner type");
      check_comp(sig, ctx.extended(m.binders[0], *mt.val), *m.kids[1], expected,
                 env);
      return;
    }
    case Term::Kind::Case: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      if (vt.kind != ValueType::Kind::Sum)
        detail::type_fail("case of a non-sum value");
      check_comp(sig, ctx.extended(m.binders[0], *vt.fst), *m.kids[1], expected,
                 env);
      check_comp(sig, ctx.extended(m.binders[1], *vt.snd), *m.kids[2], expected,
                 env);
      return;
    }
    case Term::Kind::LetVal: {
      ValueType vt = infer_value(sig, ctx, *m.kids[0], env);
      check_comp(sig, ctx.extended(m.binders[0], vt), *m.kids[1], expected, env);
      return;
    }
    default: {
      CompType got = infer_comp(sig, ctx, m, env);
      if (got != expected)
        detail::type_fail("expected " + print_ctype(expected) + ", got " +
                          print_ctype(got));
      return;
    }
  }
}

} // namespace cbpv
