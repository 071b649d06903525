// Glued "relations" models: assign a relation to every CBPV type from
// base-type relations plus a monad lifting, then check the basic lemma over
// term corpora and run set/list effect-simulation checks.
//
// The glued model adds no new denotations: every relation lives on exactly
// the base model's carrier, and every corpus term is evaluated in the base
// model. Checks are corpus-based; a clean run reports "no counterexample
// found", never a proof.
#pragma once

#include "cbpv/eval.hpp"
#include "cbpv/relations.hpp"

namespace cbpv {

struct GluedModel {
  // unary mode: relations over `base`.
  // binary mode: `base` must be a product model; relations relate its two
  // component models.
  Model base;
  bool binary = false;
  MonadLifting lifting;
  std::map<std::string, Pred> base_rel;
  std::map<std::string, Pred> comp_base_rel;
  std::map<std::string, BinRel> base_rel2;
  std::map<std::string, BinRel> comp_base_rel2;
};

struct SimReport {
  struct Entry {
    std::string term;
    std::string type;
    std::string detail;
  };
  std::size_t checked = 0;
  std::vector<Entry> counterexamples;

  bool passed() const { return counterexamples.empty(); }

  std::string str() const {
    std::ostringstream os;
    if (passed()) {
      os << "no counterexample found (" << checked << " checks)";
    } else {
      os << counterexamples.size() << " counterexample(s) in " << checked
         << " checks:";
      for (auto& e : counterexamples) {
        os << "\n  term: " << e.term;
        if (!e.type.empty()) os << "\n    type: " << e.type;
        os << "\n    " << e.detail;
      }
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Unary relation assignment.

Pred lift_vtype(const GluedModel& g, const ValueType& a);
Pred lift_ctype(const GluedModel& g, const CompType& b);

inline Pred lift_vtype(const GluedModel& g, const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Base: {
      auto it = g.base_rel.find(a.base);
      if (it == g.base_rel.end())
        throw EvalError("no relation supplied for value base '" + a.base + "'");
      return it->second;
    }
    case ValueType::Kind::Unit:
      return Pred::full(interp_vtype(g.base, a));
    case ValueType::Kind::Empty:
      return Pred::empty(interp_vtype(g.base, a));
    case ValueType::Kind::Prod: {
      Pred pf = lift_vtype(g, *a.fst), ps = lift_vtype(g, *a.snd);
      return Pred{interp_vtype(g.base, a), [pf, ps](const SemVal& v) {
                    return v.kind() == SemVal::Kind::Pair &&
                           pf.member(v.first()) && ps.member(v.second());
                  }};
    }
    case ValueType::Kind::Sum: {
      Pred pf = lift_vtype(g, *a.fst), ps = lift_vtype(g, *a.snd);
      return Pred{interp_vtype(g.base, a), [pf, ps](const SemVal& v) {
                    if (v.kind() == SemVal::Kind::Inl) return pf.member(v.first());
                    if (v.kind() == SemVal::Kind::Inr) return ps.member(v.first());
                    return false;
                  }};
    }
    case ValueType::Kind::Thunk:
      // forcing is invisible: the thunk relation is the computation relation
      return lift_ctype(g, *a.comp);
  }
  throw EvalError("unreachable");
}

inline Pred lift_ctype(const GluedModel& g, const CompType& b) {
  switch (b.kind) {
    case CompType::Kind::Base: {
      auto it = g.comp_base_rel.find(b.base);
      if (it == g.comp_base_rel.end())
        throw EvalError("no relation supplied for computation base '" + b.base +
                        "'");
      return it->second;
    }
    case CompType::Kind::Free: {
      Pred pa = lift_vtype(g, *b.val);
      return g.lifting.lift_pred(pa);
    }
    case CompType::Kind::Top:
      return Pred::full(interp_ctype(g.base, b).carrier);
    case CompType::Kind::With: {
      Pred pf = lift_ctype(g, *b.fst), ps = lift_ctype(g, *b.snd);
      return Pred{interp_ctype(g.base, b).carrier, [pf, ps](const SemVal& v) {
                    return v.kind() == SemVal::Kind::Pair &&
                           pf.member(v.first()) && ps.member(v.second());
                  }};
    }
    case CompType::Kind::Arrow: {
      SemSet dom = interp_vtype(g.base, *b.val);
      if (!dom.finite)
        throw EvalError(
            "function-space relation over a non-finite argument carrier");
      Pred pa = lift_vtype(g, *b.val);
      Pred pb = lift_ctype(g, *b.body);
      return Pred{interp_ctype(g.base, b).carrier, [dom, pa, pb](const SemVal& f) {
                    for (auto& x : dom.elems) {
                      if (!pa.member(x)) continue;
                      if (!pb.member(f.apply(x))) return false;
                    }
                    return true;
                  }};
    }
  }
  throw EvalError("unreachable");
}

// ---------------------------------------------------------------------------
// Binary relation assignment: the base is a product model and the relation
// relates its two components.

BinRel lift_vtype2(const GluedModel& g, const ValueType& a);
BinRel lift_ctype2(const GluedModel& g, const CompType& b);

namespace detail {
inline const Model& left_of(const GluedModel& g) {
  if (!g.base.left) throw EvalError("binary gluing requires a product base model");
  return *g.base.left;
}
inline const Model& right_of(const GluedModel& g) {
  if (!g.base.right) throw EvalError("binary gluing requires a product base model");
  return *g.base.right;
}
} // namespace detail

inline BinRel lift_vtype2(const GluedModel& g, const ValueType& a) {
  const Model& ml = detail::left_of(g);
  const Model& mr = detail::right_of(g);
  switch (a.kind) {
    case ValueType::Kind::Base: {
      auto it = g.base_rel2.find(a.base);
      if (it == g.base_rel2.end())
        throw EvalError("no relation supplied for value base '" + a.base + "'");
      return it->second;
    }
    case ValueType::Kind::Unit:
      return BinRel::full(interp_vtype(ml, a), interp_vtype(mr, a));
    case ValueType::Kind::Empty:
      return BinRel::empty(interp_vtype(ml, a), interp_vtype(mr, a));
    case ValueType::Kind::Prod: {
      BinRel rf = lift_vtype2(g, *a.fst), rs = lift_vtype2(g, *a.snd);
      return BinRel{interp_vtype(ml, a), interp_vtype(mr, a),
                    [rf, rs](const SemVal& v, const SemVal& w) {
                      return v.kind() == SemVal::Kind::Pair &&
                             w.kind() == SemVal::Kind::Pair &&
                             rf.member(v.first(), w.first()) &&
                             rs.member(v.second(), w.second());
                    }};
    }
    case ValueType::Kind::Sum: {
      BinRel rf = lift_vtype2(g, *a.fst), rs = lift_vtype2(g, *a.snd);
      return BinRel{interp_vtype(ml, a), interp_vtype(mr, a),
                    [rf, rs](const SemVal& v, const SemVal& w) {
                      if (v.kind() == SemVal::Kind::Inl &&
                          w.kind() == SemVal::Kind::Inl)
                        return rf.member(v.first(), w.first());
                      if (v.kind() == SemVal::Kind::Inr &&
                          w.kind() == SemVal::Kind::Inr)
                        return rs.member(v.first(), w.first());
                      return false;
                    }};
    }
    case ValueType::Kind::Thunk:
      return lift_ctype2(g, *a.comp);
  }
  throw EvalError("unreachable");
}

inline BinRel lift_ctype2(const GluedModel& g, const CompType& b) {
  const Model& ml = detail::left_of(g);
  const Model& mr = detail::right_of(g);
  switch (b.kind) {
    case CompType::Kind::Base: {
      auto it = g.comp_base_rel2.find(b.base);
      if (it == g.comp_base_rel2.end())
        throw EvalError("no relation supplied for computation base '" + b.base +
                        "'");
      return it->second;
    }
    case CompType::Kind::Free:
      return g.lifting.lift_rel(lift_vtype2(g, *b.val));
    case CompType::Kind::Top:
      return BinRel::full(interp_ctype(ml, b).carrier, interp_ctype(mr, b).carrier);
    case CompType::Kind::With: {
      BinRel rf = lift_ctype2(g, *b.fst), rs = lift_ctype2(g, *b.snd);
      return BinRel{interp_ctype(ml, b).carrier, interp_ctype(mr, b).carrier,
                    [rf, rs](const SemVal& v, const SemVal& w) {
                      return v.kind() == SemVal::Kind::Pair &&
                             w.kind() == SemVal::Kind::Pair &&
                             rf.member(v.first(), w.first()) &&
                             rs.member(v.second(), w.second());
                    }};
    }
    case CompType::Kind::Arrow: {
      SemSet doml = interp_vtype(ml, *b.val);
      SemSet domr = interp_vtype(mr, *b.val);
      if (!doml.finite || !domr.finite)
        throw EvalError(
            "function-space relation over a non-finite argument carrier");
      BinRel ra = lift_vtype2(g, *b.val);
      BinRel rb = lift_ctype2(g, *b.body);
      return BinRel{interp_ctype(ml, b).carrier, interp_ctype(mr, b).carrier,
                    [doml, domr, ra, rb](const SemVal& f, const SemVal& h) {
                      for (auto& x : doml.elems)
                        for (auto& y : domr.elems) {
                          if (!ra.member(x, y)) continue;
                          if (!rb.member(f.apply(x), h.apply(y))) return false;
                        }
                      return true;
                    }};
    }
  }
  throw EvalError("unreachable");
}

// ---------------------------------------------------------------------------
// Basic lemma over a corpus of closed terms.

inline SimReport check_basic_lemma(const GluedModel& g, const ConstEnv& cenv,
                                   const std::vector<TermPtr>& corpus) {
  SimReport rep;

  // constants first: every constant must satisfy its lifted relation
  auto const_denotation = [&](const Model& m, const std::string& name) -> SemVal {
    auto it = m.const_interp.find(name);
    if (it == m.const_interp.end())
      throw EvalError("constant '" + name + "' has no interpretation");
    return it->second;
  };
  for (auto& [name, vt] : cenv.values) {
    ++rep.checked;
    bool ok;
    std::string got;
    if (!g.binary) {
      SemVal d = const_denotation(g.base, name);
      ok = lift_vtype(g, vt).member(d);
      got = d.str();
    } else {
      SemVal dl = const_denotation(detail::left_of(g), name);
      SemVal dr = const_denotation(detail::right_of(g), name);
      ok = lift_vtype2(g, vt).member(dl, dr);
      got = "(" + dl.str() + ", " + dr.str() + ")";
    }
    if (!ok)
      rep.counterexamples.push_back(
          {name, print_vtype(vt), "unrelated constant: denotation " + got});
  }
  for (auto& [name, bt] : cenv.comps) {
    ++rep.checked;
    bool ok;
    std::string got;
    if (!g.binary) {
      SemVal d = const_denotation(g.base, name);
      ok = lift_ctype(g, bt).member(d);
      got = d.str();
    } else {
      SemVal dl = const_denotation(detail::left_of(g), name);
      SemVal dr = const_denotation(detail::right_of(g), name);
      ok = lift_ctype2(g, bt).member(dl, dr);
      got = "(" + dl.str() + ", " + dr.str() + ")";
    }
    if (!ok)
      rep.counterexamples.push_back(
          {name, print_ctype(bt), "unrelated constant: denotation " + got});
  }

  for (auto& t : corpus) {
    CompType bt = infer_comp(g.base.sig, Context{}, *t, cenv);
    ++rep.checked;
    if (!g.binary) {
      SemVal d = eval_comp(g.base, cenv, Env{}, *t, bt);
      if (!lift_ctype(g, bt).member(d))
        rep.counterexamples.push_back(
            {print_term(t), print_ctype(bt), "denotation " + d.str() +
             " violates the lifted relation"});
    } else {
      SemVal dl = eval_comp(detail::left_of(g), cenv, Env{}, *t, bt);
      SemVal dr = eval_comp(detail::right_of(g), cenv, Env{}, *t, bt);
      if (!lift_ctype2(g, bt).member(dl, dr))
        rep.counterexamples.push_back(
            {print_term(t), print_ctype(bt), "denotations (" + dl.str() + ", " +
             dr.str() + ") violate the lifted relation"});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Set/list effect simulation (erratic choice): the set denotation is the set
// of elements of the list denotation.

inline SemVal gamma_flatten(const SemVal& l) {
  if (l.kind() != SemVal::Kind::List)
    throw EvalError("gamma_flatten expects a list value");
  return SemVal::set(l.members());
}

inline SimReport check_effect_sim(const Model& m_set, const Model& m_list,
                                  const ConstEnv& cenv,
                                  const std::vector<TermPtr>& corpus) {
  SimReport rep;
  for (auto& t : corpus) {
    CompType bt = infer_comp(m_set.sig, Context{}, *t, cenv);
    if (bt.kind != CompType::Kind::Free)
      throw EvalError("effect simulation requires terms of returner type, got " +
                      print_ctype(bt));
    ++rep.checked;
    SemVal p = eval_comp(m_set, cenv, Env{}, *t, bt);
    SemVal l = eval_comp(m_list, cenv, Env{}, *t, bt);

    bool gamma_ok = (p == gamma_flatten(l));
    // independent decision through the simulation lifting with the identity
    // relation on the (shared) value carrier
    SemSet carrier = interp_vtype(m_set, *bt.val);
    BinRel em = em_pair_lifting(BinRel::identity(carrier));
    bool em_ok = em.member(p, l);

    if (!gamma_ok)
      rep.counterexamples.push_back(
          {print_term(t), print_ctype(bt),
           "set denotation " + p.str() + " differs from flattened list " +
               gamma_flatten(l).str() + " (list " + l.str() + ")"});
    if (gamma_ok != em_ok)
      rep.counterexamples.push_back(
          {print_term(t), print_ctype(bt),
           std::string("decision procedures disagree: direct equation ") +
               (gamma_ok ? "passes" : "fails") + " but relation membership " +
               (em_ok ? "passes" : "fails")});
  }
  return rep;
}

} // namespace cbpv
