// Finite representations of locally indexed categories and locally indexed
// functors, with exhaustive checkers for the reindexing axioms and for the
// internal-fibration lifting property, plus builders for the concrete
// sets-and-relations instances used in the tests.
//
// Everything is table-driven: objects and arrows are names, composition and
// reindexing are finite maps, and every checker enumerates its full instance
// space — an empty report is a proof for the finite instance.
#pragma once

#include <map>
#include <set>

#include "cbpv/semval.hpp"

namespace cbpv {

struct FinCat {
  struct Arrow {
    std::string name, dom, cod;
  };

  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::map<std::string, std::string> identity;                     // obj -> arrow
  std::map<std::pair<std::string, std::string>, std::string> comp; // (g,f) -> g∘f

  const Arrow* find(const std::string& name) const {
    for (auto& a : arrows)
      if (a.name == name) return &a;
    return nullptr;
  }
  bool has_object(const std::string& o) const {
    for (auto& x : objects)
      if (x == o) return true;
    return false;
  }
  // g ∘ f with cod(f) = dom(g)
  const std::string* compose(const std::string& g, const std::string& f) const {
    auto it = comp.find({g, f});
    return it == comp.end() ? nullptr : &it->second;
  }
  std::vector<const Arrow*> homs(const std::string& d, const std::string& c) const {
    std::vector<const Arrow*> out;
    for (auto& a : arrows)
      if (a.dom == d && a.cod == c) out.push_back(&a);
    return out;
  }
};

// A small hom-category over a shared object list: same shape as FinCat minus
// its own object list.
struct HomCat {
  std::vector<FinCat::Arrow> arrows;
  std::map<std::string, std::string> identity;
  std::map<std::pair<std::string, std::string>, std::string> comp;

  const FinCat::Arrow* find(const std::string& name) const {
    for (auto& a : arrows)
      if (a.name == name) return &a;
    return nullptr;
  }
  const std::string* compose(const std::string& g, const std::string& f) const {
    auto it = comp.find({g, f});
    return it == comp.end() ? nullptr : &it->second;
  }
  std::vector<const FinCat::Arrow*> homs(const std::string& d,
                                         const std::string& c) const {
    std::vector<const FinCat::Arrow*> out;
    for (auto& a : arrows)
      if (a.dom == d && a.cod == c) out.push_back(&a);
    return out;
  }
};

struct FinLInd {
  FinCat index;
  std::vector<std::string> objects; // shared by every fiber
  std::map<std::string, HomCat> homs_at;
  // reindex[rho] maps arrows of homs_at(cod rho) to arrows of homs_at(dom rho)
  std::map<std::string, std::map<std::string, std::string>> reindex;
};

struct FinLIndFunctor {
  const FinLInd* source = nullptr;
  const FinLInd* target = nullptr;
  std::map<std::string, std::string> p_obj; // index objects
  std::map<std::string, std::string> p_arr; // index arrows
  std::map<std::string, std::string> P_obj; // shared objects
  // P_arr[c] maps arrows of source.homs_at(c) to arrows of
  // target.homs_at(p_obj(c))
  std::map<std::string, std::map<std::string, std::string>> P_arr;
};

struct LindReport {
  std::vector<std::string> violations;
  std::size_t checked = 0;

  bool passed() const { return violations.empty(); }
  std::string str() const {
    std::ostringstream os;
    if (passed()) {
      os << "valid (" << checked << " instances checked)";
    } else {
      os << violations.size() << " violation(s) in " << checked << " checks:";
      for (auto& v : violations) os << "\n  " << v;
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Plain category axioms.

namespace detail {

template <typename Cat>
inline void check_category_axioms(const Cat& c,
                                  const std::vector<std::string>& objects,
                                  const std::string& label, LindReport& rep) {
  // identities exist, are well-typed, and are units
  for (auto& o : objects) {
    auto it = c.identity.find(o);
    if (it == c.identity.end()) {
      rep.violations.push_back(label + ": no identity for object " + o);
      continue;
    }
    const auto* ia = c.find(it->second);
    if (!ia || ia->dom != o || ia->cod != o) {
      rep.violations.push_back(label + ": identity of " + o + " is malformed");
      continue;
    }
  }
  for (auto& f : c.arrows) {
    ++rep.checked;
    auto idd = c.identity.find(f.dom);
    auto idc = c.identity.find(f.cod);
    if (idd != c.identity.end()) {
      const std::string* r = c.compose(f.name, idd->second);
      if (!r || *r != f.name)
        rep.violations.push_back(label + ": right unit fails for " + f.name);
    }
    if (idc != c.identity.end()) {
      const std::string* r = c.compose(idc->second, f.name);
      if (!r || *r != f.name)
        rep.violations.push_back(label + ": left unit fails for " + f.name);
    }
  }
  // composition totality and typing
  for (auto& f : c.arrows)
    for (auto& g : c.arrows) {
      if (f.cod != g.dom) continue;
      ++rep.checked;
      const std::string* gf = c.compose(g.name, f.name);
      if (!gf) {
        rep.violations.push_back(label + ": missing composite " + g.name + " ∘ " +
                                 f.name);
        continue;
      }
      const auto* a = c.find(*gf);
      if (!a || a->dom != f.dom || a->cod != g.cod)
        rep.violations.push_back(label + ": composite " + g.name + " ∘ " + f.name +
                                 " is ill-typed");
    }
  // associativity
  for (auto& f : c.arrows)
    for (auto& g : c.arrows) {
      if (f.cod != g.dom) continue;
      for (auto& h : c.arrows) {
        if (g.cod != h.dom) continue;
        ++rep.checked;
        const std::string* gf = c.compose(g.name, f.name);
        const std::string* hg = c.compose(h.name, g.name);
        if (!gf || !hg) continue; // already reported
        const std::string* l = c.compose(h.name, *gf);
        const std::string* r = c.compose(*hg, f.name);
        if (!l || !r || *l != *r)
          rep.violations.push_back(label + ": associativity fails on (" + h.name +
                                   ", " + g.name + ", " + f.name + ")");
      }
    }
}

} // namespace detail

inline LindReport check_fincat(const FinCat& c) {
  LindReport rep;
  detail::check_category_axioms(c, c.objects, "index", rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Locally indexed category axioms: each fiber is a category, reindexing along
// every index arrow is an identity-on-objects functor, reindexing along an
// identity is the identity, and reindexing respects index composition.

inline LindReport check_lind_axioms(const FinLInd& l) {
  LindReport rep;
  detail::check_category_axioms(l.index, l.index.objects, "index", rep);
  for (auto& c : l.index.objects) {
    auto it = l.homs_at.find(c);
    if (it == l.homs_at.end()) {
      rep.violations.push_back("no fiber at index object " + c);
      continue;
    }
    detail::check_category_axioms(it->second, l.objects, "fiber(" + c + ")", rep);
  }

  // reindexing functoriality along every index arrow rho : d -> c
  for (auto& rho : l.index.arrows) {
    auto rit = l.reindex.find(rho.name);
    if (rit == l.reindex.end()) {
      rep.violations.push_back("no reindexing table for index arrow " + rho.name);
      continue;
    }
    const auto& table = rit->second;
    auto src = l.homs_at.find(rho.cod);
    auto dst = l.homs_at.find(rho.dom);
    if (src == l.homs_at.end() || dst == l.homs_at.end()) continue;

    for (auto& f : src->second.arrows) {
      ++rep.checked;
      auto ft = table.find(f.name);
      if (ft == table.end()) {
        rep.violations.push_back("reindex(" + rho.name + ") undefined on " +
                                 f.name);
        continue;
      }
      const auto* img = dst->second.find(ft->second);
      if (!img || img->dom != f.dom || img->cod != f.cod)
        rep.violations.push_back("reindex(" + rho.name + ") is not "
                                 "identity-on-objects at " + f.name);
    }
    // preserves identities
    for (auto& o : l.objects) {
      ++rep.checked;
      auto is = src->second.identity.find(o);
      auto id = dst->second.identity.find(o);
      if (is == src->second.identity.end() || id == dst->second.identity.end())
        continue;
      auto ft = table.find(is->second);
      if (ft == table.end() || ft->second != id->second)
        rep.violations.push_back("reindex(" + rho.name +
                                 ") does not preserve the identity at " + o);
    }
    // preserves composition
    for (auto& f : src->second.arrows)
      for (auto& g : src->second.arrows) {
        if (f.cod != g.dom) continue;
        ++rep.checked;
        const std::string* gf = src->second.compose(g.name, f.name);
        auto fg = table.find(g.name);
        auto ff = table.find(f.name);
        if (!gf || fg == table.end() || ff == table.end()) continue;
        auto fgf = table.find(*gf);
        const std::string* dcomp = dst->second.compose(fg->second, ff->second);
        if (fgf == table.end() || !dcomp || fgf->second != *dcomp)
          rep.violations.push_back("reindex(" + rho.name +
                                   ") does not preserve " + g.name + " ∘ " +
                                   f.name);
      }
  }

  // f ▹ id_c = f
  for (auto& c : l.index.objects) {
    auto idc = l.index.identity.find(c);
    auto fib = l.homs_at.find(c);
    if (idc == l.index.identity.end() || fib == l.homs_at.end()) continue;
    auto rit = l.reindex.find(idc->second);
    if (rit == l.reindex.end()) continue;
    for (auto& f : fib->second.arrows) {
      ++rep.checked;
      auto ft = rit->second.find(f.name);
      if (ft == rit->second.end() || ft->second != f.name)
        rep.violations.push_back("f ▹ id fails at index " + c + " on " + f.name);
    }
  }

  // f ▹ (rho ∘ rho') = (f ▹ rho) ▹ rho'
  for (auto& rho : l.index.arrows)
    for (auto& rho2 : l.index.arrows) {
      // rho' : e -> d, rho : d -> c
      if (rho2.cod != rho.dom) continue;
      const std::string* rr = l.index.compose(rho.name, rho2.name);
      if (!rr) continue;
      auto t_rr = l.reindex.find(*rr);
      auto t_rho = l.reindex.find(rho.name);
      auto t_rho2 = l.reindex.find(rho2.name);
      if (t_rr == l.reindex.end() || t_rho == l.reindex.end() ||
          t_rho2 == l.reindex.end())
        continue;
      auto fib = l.homs_at.find(rho.cod);
      if (fib == l.homs_at.end()) continue;
      for (auto& f : fib->second.arrows) {
        ++rep.checked;
        auto one = t_rr->second.find(f.name);
        auto step1 = t_rho->second.find(f.name);
        if (one == t_rr->second.end() || step1 == t_rho->second.end()) continue;
        auto step2 = t_rho2->second.find(step1->second);
        if (step2 == t_rho2->second.end() || one->second != step2->second)
          rep.violations.push_back("f ▹ (ρ∘ρ') fails for " + f.name + " along " +
                                   rho.name + " ∘ " + rho2.name);
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Locally indexed functor axioms: p functorial on the index, each P_c
// functorial on fibers, and P(f ▹ ρ) = P(f) ▹ p(ρ).

inline LindReport check_lind_functor(const FinLIndFunctor& F) {
  LindReport rep;
  const FinLInd& S = *F.source;
  const FinLInd& T = *F.target;

  auto p_of = [&](const std::string& o) -> const std::string* {
    auto it = F.p_obj.find(o);
    return it == F.p_obj.end() ? nullptr : &it->second;
  };

  // p is a functor of index categories
  for (auto& rho : S.index.arrows) {
    ++rep.checked;
    auto pa = F.p_arr.find(rho.name);
    if (pa == F.p_arr.end()) {
      rep.violations.push_back("p undefined on index arrow " + rho.name);
      continue;
    }
    const auto* img = T.index.find(pa->second);
    const std::string* pd = p_of(rho.dom);
    const std::string* pc = p_of(rho.cod);
    if (!img || !pd || !pc || img->dom != *pd || img->cod != *pc)
      rep.violations.push_back("p is ill-typed on " + rho.name);
  }
  for (auto& o : S.index.objects) {
    ++rep.checked;
    auto is = S.index.identity.find(o);
    const std::string* po = p_of(o);
    if (is == S.index.identity.end() || !po) continue;
    auto pa = F.p_arr.find(is->second);
    auto itt = T.index.identity.find(*po);
    if (pa == F.p_arr.end() || itt == T.index.identity.end() ||
        pa->second != itt->second)
      rep.violations.push_back("p does not preserve the identity at " + o);
  }
  for (auto& f : S.index.arrows)
    for (auto& g : S.index.arrows) {
      if (f.cod != g.dom) continue;
      ++rep.checked;
      const std::string* gf = S.index.compose(g.name, f.name);
      auto pf = F.p_arr.find(f.name);
      auto pg = F.p_arr.find(g.name);
      if (!gf || pf == F.p_arr.end() || pg == F.p_arr.end()) continue;
      auto pgf = F.p_arr.find(*gf);
      const std::string* tc = T.index.compose(pg->second, pf->second);
      if (pgf == F.p_arr.end() || !tc || pgf->second != *tc)
        rep.violations.push_back("p does not preserve " + g.name + " ∘ " + f.name);
    }

  // each P_c is a functor between fibers (over P on objects)
  for (auto& c : S.index.objects) {
    const std::string* pc = p_of(c);
    auto sf = S.homs_at.find(c);
    auto pit = F.P_arr.find(c);
    if (!pc || sf == S.homs_at.end() || pit == F.P_arr.end()) {
      if (pit == F.P_arr.end())
        rep.violations.push_back("P undefined at index object " + c);
      continue;
    }
    auto tf = T.homs_at.find(*pc);
    if (tf == T.homs_at.end()) continue;
    for (auto& f : sf->second.arrows) {
      ++rep.checked;
      auto ft = pit->second.find(f.name);
      if (ft == pit->second.end()) {
        rep.violations.push_back("P_" + c + " undefined on " + f.name);
        continue;
      }
      const auto* img = tf->second.find(ft->second);
      auto pd = F.P_obj.find(f.dom);
      auto pcod = F.P_obj.find(f.cod);
      if (!img || pd == F.P_obj.end() || pcod == F.P_obj.end() ||
          img->dom != pd->second || img->cod != pcod->second)
        rep.violations.push_back("P_" + c + " is ill-typed on " + f.name);
    }
    for (auto& o : S.objects) {
      ++rep.checked;
      auto is = sf->second.identity.find(o);
      auto po = F.P_obj.find(o);
      if (is == sf->second.identity.end() || po == F.P_obj.end()) continue;
      auto itt = tf->second.identity.find(po->second);
      auto ft = pit->second.find(is->second);
      if (itt == tf->second.identity.end() || ft == pit->second.end() ||
          ft->second != itt->second)
        rep.violations.push_back("P_" + c + " does not preserve the identity at " +
                                 o);
    }
    for (auto& f : sf->second.arrows)
      for (auto& g : sf->second.arrows) {
        if (f.cod != g.dom) continue;
        ++rep.checked;
        const std::string* gf = sf->second.compose(g.name, f.name);
        auto ff = pit->second.find(f.name);
        auto fg = pit->second.find(g.name);
        if (!gf || ff == pit->second.end() || fg == pit->second.end()) continue;
        auto fgf = pit->second.find(*gf);
        const std::string* tc = tf->second.compose(fg->second, ff->second);
        if (fgf == pit->second.end() || !tc || fgf->second != *tc)
          rep.violations.push_back("P_" + c + " does not preserve " + g.name +
                                   " ∘ " + f.name);
      }
  }

  // compatibility with reindexing: P(f ▹ ρ) = P(f) ▹ p(ρ)
  for (auto& rho : S.index.arrows) {
    auto srt = S.reindex.find(rho.name);
    auto pa = F.p_arr.find(rho.name);
    if (srt == S.reindex.end() || pa == F.p_arr.end()) continue;
    auto trt = T.reindex.find(pa->second);
    auto pc = F.P_arr.find(rho.cod);
    auto pd = F.P_arr.find(rho.dom);
    if (trt == T.reindex.end() || pc == F.P_arr.end() || pd == F.P_arr.end())
      continue;
    auto sf = S.homs_at.find(rho.cod);
    if (sf == S.homs_at.end()) continue;
    for (auto& f : sf->second.arrows) {
      ++rep.checked;
      auto rf = srt->second.find(f.name);      // f ▹ ρ
      auto pf = pc->second.find(f.name);       // P(f)
      if (rf == srt->second.end() || pf == pc->second.end()) continue;
      auto lhs = pd->second.find(rf->second);  // P(f ▹ ρ)
      auto rhs = trt->second.find(pf->second); // P(f) ▹ p(ρ)
      if (lhs == pd->second.end() || rhs == trt->second.end() ||
          lhs->second != rhs->second)
        rep.violations.push_back("P(f ▹ ρ) ≠ P(f) ▹ p(ρ) for f = " + f.name +
                                 ", ρ = " + rho.name);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classical fibration check for the index functor: every index arrow into the
// image of an object has a cartesian lift.

namespace detail {

// is psi : e' -> e cartesian over p? For every psi' : e'' -> e and
// theta : p(e'') -> p(e') with p(psi') = p(psi) ∘ theta, there must be a
// unique chi : e'' -> e' with p(chi) = theta and psi ∘ chi = psi'.
inline bool is_cartesian(const FinCat& S, const FinCat& T,
                         const std::map<std::string, std::string>& p_arr,
                         const FinCat::Arrow& psi) {
  const std::string& ppsi = p_arr.at(psi.name);
  for (auto& psi2 : S.arrows) {
    if (psi2.cod != psi.cod) continue;
    const std::string& ppsi2 = p_arr.at(psi2.name);
    for (auto& theta : T.arrows) {
      const auto* pp = T.find(ppsi);
      const auto* pp2 = T.find(ppsi2);
      if (!pp || !pp2) return false;
      if (theta.dom != pp2->dom || theta.cod != pp->dom) continue;
      const std::string* c = T.compose(ppsi, theta.name);
      if (!c || *c != ppsi2) continue;
      // need unique chi
      std::size_t found = 0;
      for (auto& chi : S.arrows) {
        if (chi.dom != psi2.dom || chi.cod != psi.dom) continue;
        if (p_arr.at(chi.name) != theta.name) continue;
        const std::string* sc = S.compose(psi.name, chi.name);
        if (sc && *sc == psi2.name) ++found;
      }
      if (found != 1) return false;
    }
  }
  return true;
}

} // namespace detail

inline LindReport check_fincat_fibration(const FinCat& S, const FinCat& T,
                                         const std::map<std::string, std::string>& p_obj,
                                         const std::map<std::string, std::string>& p_arr) {
  LindReport rep;
  for (auto& e : S.objects) {
    const std::string& pe = p_obj.at(e);
    for (auto& phi : T.arrows) {
      if (phi.cod != pe) continue;
      ++rep.checked;
      bool found = false;
      for (auto& psi : S.arrows) {
        if (psi.cod != e) continue;
        if (p_arr.at(psi.name) != phi.name) continue;
        if (detail::is_cartesian(S, T, p_arr, psi)) { found = true; break; }
      }
      if (!found)
        rep.violations.push_back("no cartesian lift of " + phi.name +
                                 " to object " + e);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Internal-fibration lifting property over the designated unit index objects.
//
// For every target arrow k : A -> P(Y) in the fiber over the target unit,
// search for a source object Â over A and a source arrow k̂ : Â -> Y over k in
// the fiber over the source unit such that every triangle below factors
// uniquely: given a source index e, a source object X, a target arrow
// u : P(X) -> A over p(e), and a source arrow v : X -> Y over e with
// P(v) = (k ▹ !) ∘ u, there is exactly one û : X -> Â over e with P(û) = u
// and (k̂ ▹ !_e) ∘ û = v. Lifts û are searched in the fiber over e itself;
// the report names that index for each successful lift.

struct FibrationResult {
  LindReport report;
  // informational: for each checked k, the chosen (Â, k̂) if any
  std::vector<std::string> log;
};

namespace detail {

// the unique index arrow c -> unit; error if absent or not unique
inline const std::string* bang(const FinCat& idx, const std::string& c,
                               const std::string& unit, LindReport& rep) {
  const std::string* found = nullptr;
  for (auto& a : idx.arrows) {
    if (a.dom == c && a.cod == unit) {
      if (found) {
        rep.violations.push_back("unit object " + unit +
                                 " is not terminal: multiple arrows from " + c);
        return nullptr;
      }
      found = &a.name;
    }
  }
  if (!found)
    rep.violations.push_back("unit object " + unit +
                             " is not terminal: no arrow from " + c);
  return found;
}

} // namespace detail

inline FibrationResult check_fibration_property(const FinLIndFunctor& F,
                                                const std::string& unit_source,
                                                const std::string& unit_target,
                                                std::size_t budget = 50'000'000) {
  FibrationResult out;
  LindReport& rep = out.report;
  const FinLInd& S = *F.source;
  const FinLInd& T = *F.target;

  if (!S.index.has_object(unit_source) || !T.index.has_object(unit_target)) {
    rep.violations.push_back("designated unit objects are missing");
    return out;
  }
  {
    auto it = F.p_obj.find(unit_source);
    if (it == F.p_obj.end() || it->second != unit_target) {
      rep.violations.push_back("p does not send the source unit to the target unit");
      return out;
    }
  }

  const HomCat& t_unit = T.homs_at.at(unit_target);
  const HomCat& s_unit = S.homs_at.at(unit_source);

  // precompute ! arrows in both index categories
  std::map<std::string, std::string> s_bang, t_bang;
  for (auto& e : S.index.objects) {
    const std::string* b = detail::bang(S.index, e, unit_source, rep);
    if (!b) return out;
    s_bang[e] = *b;
  }
  for (auto& c : T.index.objects) {
    const std::string* b = detail::bang(T.index, c, unit_target, rep);
    if (!b) return out;
    t_bang[c] = *b;
  }

  std::size_t cost = 0;
  auto spend = [&](std::size_t n) {
    cost += n;
    if (cost > budget)
      throw EvalError("fibration check exceeds the configured budget");
  };

  for (auto& Y : S.objects) {
    const std::string& PY = F.P_obj.at(Y);
    for (auto& A : T.objects) {
      for (const FinCat::Arrow* k : t_unit.homs(A, PY)) {
        ++rep.checked;
        // candidates (Â, k̂)
        bool ok = false;
        std::string chosen;
        for (auto& Ahat : S.objects) {
          if (F.P_obj.at(Ahat) != A) continue;
          for (const FinCat::Arrow* khat : s_unit.homs(Ahat, Y)) {
            if (F.P_arr.at(unit_source).at(khat->name) != k->name) continue;
            // verify the universal property of this candidate
            bool good = true;
            for (auto& e : S.index.objects) {
              const std::string& pe = F.p_obj.at(e);
              const HomCat& s_e = S.homs_at.at(e);
              const HomCat& t_pe = T.homs_at.at(pe);
              // k ▹ !_{p(e)} and k̂ ▹ !_e
              const std::string& k_re =
                  T.reindex.at(t_bang.at(pe)).at(k->name);
              const std::string& khat_re =
                  S.reindex.at(s_bang.at(e)).at(khat->name);
              for (auto& X : S.objects) {
                const std::string& PX = F.P_obj.at(X);
                for (const FinCat::Arrow* u : t_pe.homs(PX, A)) {
                  // (k ▹ !) ∘ u in the target fiber over p(e)
                  const std::string* ku = t_pe.compose(k_re, *&u->name);
                  if (!ku) { good = false; break; }
                  for (const FinCat::Arrow* v : s_e.homs(X, Y)) {
                    spend(1);
                    if (F.P_arr.at(e).at(v->name) != *ku) continue;
                    // count lifts û : X -> Â over e with P(û) = u and
                    // (k̂ ▹ !_e) ∘ û = v
                    std::size_t lifts = 0;
                    for (const FinCat::Arrow* uhat : s_e.homs(X, Ahat)) {
                      spend(1);
                      if (F.P_arr.at(e).at(uhat->name) != u->name) continue;
                      const std::string* comp2 =
                          s_e.compose(khat_re, uhat->name);
                      if (comp2 && *comp2 == v->name) ++lifts;
                    }
                    if (lifts != 1) { good = false; break; }
                  }
                  if (!good) break;
                }
                if (!good) break;
              }
              if (!good) break;
            }
            if (good) {
              ok = true;
              chosen = "k = " + k->name + " : " + A + " -> P(" + Y +
                       ") lifts via Â = " + Ahat + ", k̂ = " + khat->name +
                       " (lifts found fiberwise over each index e)";
              break;
            }
          }
          if (ok) break;
        }
        if (ok) {
          out.log.push_back(chosen);
        } else {
          rep.violations.push_back("no lifting for k = " + k->name + " : " + A +
                                   " -> P(" + Y + ")");
        }
      }
    }
  }
  return out;
}

} // namespace cbpv
