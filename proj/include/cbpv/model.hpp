// The pluggable CBPV model abstraction: per computation type an object
// carrying a carrier, a sequencing operator, and operation interpretations.
// Constructors for algebra models (Eilenberg-Moore style over a strong
// monad), storage models (the state adjunction), and products of models.
#pragma once

#include <map>

#include "cbpv/monad.hpp"

namespace cbpv {

using Continuation = std::function<SemVal(const SemVal&)>;

struct CompObject {
  SemSet carrier; // this is U of the computation object
  // extend(monadic value over X, continuation X -> carrier) -> carrier
  std::function<SemVal(const SemVal&, const Continuation&)> extend;
  std::function<SemVal(const std::string&, const std::optional<SemVal>&,
                       const std::vector<SemVal>&)>
      op_interp;
};

struct Model {
  Monad monad;
  Signature sig;
  std::map<std::string, SemSet> base_vtype;
  std::map<std::string, CompObject> base_ctype;
  std::function<CompObject(const SemSet&)> free_obj;
  std::function<CompObject(const SemSet&, const CompObject&)> power_obj;
  std::function<CompObject(const CompObject&, const CompObject&)> with_obj;
  CompObject top_obj;
  std::map<std::string, SemVal> const_interp;
  // populated for product models; evaluation proceeds componentwise
  std::shared_ptr<const Model> left, right;
};

namespace detail {

// power/with/top structure is pointwise in every model built here
inline CompObject pointwise_power(const SemSet& x, const CompObject& o) {
  CompObject p;
  p.carrier = function_set(x, o.carrier);
  p.extend = [x, o](const SemVal& t, const Continuation& k) {
    return SemVal::fun(x, [t, o, k](const SemVal& arg) {
      return o.extend(t, [&](const SemVal& v) { return k(v).apply(arg); });
    });
  };
  p.op_interp = [x, o](const std::string& name, const std::optional<SemVal>& param,
                       const std::vector<SemVal>& args) {
    return SemVal::fun(x, [=](const SemVal& arg) {
      std::vector<SemVal> applied;
      applied.reserve(args.size());
      for (auto& a : args) applied.push_back(a.apply(arg));
      return o.op_interp(name, param, applied);
    });
  };
  return p;
}

inline CompObject pointwise_with(const CompObject& a, const CompObject& b) {
  CompObject w;
  w.carrier = product_set(a.carrier, b.carrier);
  w.extend = [a, b](const SemVal& t, const Continuation& k) {
    SemVal l = a.extend(t, [&](const SemVal& v) { return k(v).first(); });
    SemVal r = b.extend(t, [&](const SemVal& v) { return k(v).second(); });
    return SemVal::pair(std::move(l), std::move(r));
  };
  w.op_interp = [a, b](const std::string& name, const std::optional<SemVal>& param,
                       const std::vector<SemVal>& args) {
    std::vector<SemVal> ls, rs;
    for (auto& x : args) {
      ls.push_back(x.first());
      rs.push_back(x.second());
    }
    return SemVal::pair(a.op_interp(name, param, ls), b.op_interp(name, param, rs));
  };
  return w;
}

inline CompObject trivial_top() {
  CompObject t;
  t.carrier = SemSet::of({SemVal::unit()});
  t.extend = [](const SemVal&, const Continuation&) { return SemVal::unit(); };
  t.op_interp = [](const std::string&, const std::optional<SemVal>&,
                   const std::vector<SemVal>&) { return SemVal::unit(); };
  return t;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Algebra models: computation objects are free algebras of the monad, with
// extend given by monadic bind and operations acting on the free part.

inline Model algebra_model(Monad m, Signature sig,
                           std::map<std::string, SemSet> bases,
                           std::map<std::string, SemVal> consts) {
  for (auto& op : sig.operations) {
    if (!m.supports_op(op.name))
      throw EvalError("operation '" + op.name + "' unsupported by monad kind");
  }
  Model model;
  model.monad = m;
  model.sig = std::move(sig);
  model.base_vtype = std::move(bases);
  model.const_interp = std::move(consts);
  model.free_obj = [m](const SemSet& x) {
    CompObject o;
    o.carrier = m.apply(x);
    o.extend = [m](const SemVal& t, const Continuation& k) { return m.bind(t, k); };
    o.op_interp = [m](const std::string& name, const std::optional<SemVal>& param,
                      const std::vector<SemVal>& args) {
      return m.op_apply(name, param, args);
    };
    return o;
  };
  model.power_obj = detail::pointwise_power;
  model.with_obj = detail::pointwise_with;
  model.top_obj = detail::trivial_top();
  return model;
}

// ---------------------------------------------------------------------------
// Storage models: computation objects live under the adjunction
// (-) x S  -|  S => (-); the free object on X carries state transformers
// S -> X x S and extend threads the state through directly.

inline Model storage_model(SemSet s, std::map<std::string, SemSet> bases,
                           std::map<std::string, SemVal> consts) {
  if (!s.finite || s.elems.empty())
    throw EvalError("storage model requires a nonempty finite state set");
  Monad m = make_state_monad(s);
  Model model;
  model.monad = m;
  Signature sig;
  sig.operations.push_back({"read", s.elems.size(), std::nullopt});
  for (auto& st : s.elems) sig.operations.push_back({"write_" + st.str(), 1, std::nullopt});
  model.sig = sig;
  model.base_vtype = std::move(bases);
  model.const_interp = std::move(consts);
  SemSet states = s;
  model.free_obj = [states, m](const SemSet& x) {
    CompObject o;
    o.carrier = m.apply(x);
    // extend(f, k) = \s. let (x, s') = f(s) in k(x) at s'
    o.extend = [states](const SemVal& f, const Continuation& k) {
      std::vector<std::pair<SemVal, SemVal>> table;
      for (auto& [st, xs] : f.table()) {
        const SemVal& x = xs.first();
        const SemVal& s1 = xs.second();
        SemVal kt = k(x);
        const SemVal* res = nullptr;
        for (auto& [s2, ys] : kt.table())
          if (s2 == s1) { res = &ys; break; }
        if (!res) throw EvalError("storage extend: state not in table");
        table.emplace_back(st, *res);
      }
      return SemVal::state_table(std::move(table));
    };
    o.op_interp = [m](const std::string& name, const std::optional<SemVal>& param,
                      const std::vector<SemVal>& args) {
      return m.op_apply(name, param, args);
    };
    return o;
  };
  model.power_obj = detail::pointwise_power;
  model.with_obj = detail::pointwise_with;
  model.top_obj = detail::trivial_top();
  return model;
}

// ---------------------------------------------------------------------------
// Products of models: carriers are pairs, all structure componentwise.

inline Model product_model(const Model& m1, const Model& m2) {
  if (m1.sig.operations.size() != m2.sig.operations.size())
    throw EvalError("product model: signature mismatch");
  for (std::size_t i = 0; i < m1.sig.operations.size(); ++i) {
    if (m1.sig.operations[i].name != m2.sig.operations[i].name ||
        m1.sig.operations[i].arity != m2.sig.operations[i].arity)
      throw EvalError("product model: signature mismatch");
  }
  if (m1.sig.value_bases != m2.sig.value_bases ||
      m1.sig.comp_bases != m2.sig.comp_bases)
    throw EvalError("product model: signature mismatch");

  Model model;
  model.monad = make_product_monad(m1.monad, m2.monad);
  model.sig = m1.sig;
  model.left = std::make_shared<Model>(m1);
  model.right = std::make_shared<Model>(m2);
  for (auto& [name, set1] : m1.base_vtype) {
    auto it = m2.base_vtype.find(name);
    if (it != m2.base_vtype.end())
      model.base_vtype[name] = product_set(set1, it->second);
  }
  for (auto& [name, o1] : m1.base_ctype) {
    auto it = m2.base_ctype.find(name);
    if (it != m2.base_ctype.end())
      model.base_ctype[name] = detail::pointwise_with(o1, it->second);
  }
  for (auto& [name, v1] : m1.const_interp) {
    auto it = m2.const_interp.find(name);
    if (it != m2.const_interp.end())
      model.const_interp[name] = SemVal::pair(v1, it->second);
  }
  Monad pm = model.monad;
  model.free_obj = [pm](const SemSet& x) {
    CompObject o;
    o.carrier = pm.apply(x);
    o.extend = [pm](const SemVal& t, const Continuation& k) { return pm.bind(t, k); };
    o.op_interp = [pm](const std::string& name, const std::optional<SemVal>& param,
                       const std::vector<SemVal>& args) {
      return pm.op_apply(name, param, args);
    };
    return o;
  };
  model.power_obj = detail::pointwise_power;
  model.with_obj = detail::pointwise_with;
  model.top_obj = detail::trivial_top();
  return model;
}

} // namespace cbpv
