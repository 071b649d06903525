// Concrete finite instances for the locally indexed checkers: the
// sets-with-predicates category truncated to carriers of size ≤ 2, its plain
// underlying-set skeleton, the "self" locally indexed category of each, and
// the forgetful locally indexed functor between them.
//
// Objects are (size, subset) pairs; arrows are total functions encoded by
// their image digits, constrained to map the subset into the subset. The
// underlying-set skeleton is the special case where every subset is empty
// (the constraint is vacuous, leaving all functions).
#pragma once

#include "cbpv/lindcheck.hpp"

namespace cbpv {

struct PredObj {
  std::string name;
  int size = 0;
  std::set<int> mask; // the designated subset

  bool in_mask(int i) const { return mask.count(i) > 0; }
};

namespace detail {

inline std::string fun_digits(const std::vector<int>& f) {
  std::string s;
  for (int v : f) s += static_cast<char>('0' + v);
  return s;
}

// all functions from a domain of size n into the codomain, respecting
// dom_mask -> cod_mask (indices in dom_mask must land in cod_mask)
inline std::vector<std::vector<int>> functions_between(
    int n, const std::set<int>& dom_mask, int m, const std::set<int>& cod_mask) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out; // no functions into the empty set
  std::vector<int> f(n, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (dom_mask.count(i) && !cod_mask.count(f[i])) ok = false;
    if (ok) out.push_back(f);
    int i = 0;
    while (i < n && f[i] == m - 1) f[i++] = 0;
    if (i == n) break;
    ++f[i];
  }
  return out;
}

inline std::string index_arrow_name(const PredObj& d, const PredObj& c,
                                    const std::vector<int>& f) {
  return "r:" + d.name + ">" + c.name + ":" + fun_digits(f);
}

inline std::string fiber_arrow_name(const PredObj& idx, const PredObj& x,
                                    const PredObj& y, const std::vector<int>& f) {
  return "h" + idx.name + ":" + x.name + ">" + y.name + ":" + fun_digits(f);
}

// product mask on c × x, elements indexed as i*|x| + j
inline std::set<int> product_mask(const PredObj& c, const PredObj& x) {
  std::set<int> out;
  for (int i : c.mask)
    for (int j : x.mask) out.insert(i * x.size + j);
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The index category: objects as given, arrows all mask-respecting functions.

inline FinCat pred_index_cat(const std::vector<PredObj>& objs) {
  FinCat cat;
  std::map<std::string, std::vector<int>> decode;
  for (auto& o : objs) cat.objects.push_back(o.name);
  for (auto& d : objs)
    for (auto& c : objs)
      for (auto& f : detail::functions_between(d.size, d.mask, c.size, c.mask)) {
        std::string n = detail::index_arrow_name(d, c, f);
        cat.arrows.push_back({n, d.name, c.name});
        decode[n] = f;
      }
  for (auto& o : objs) {
    std::vector<int> id(o.size);
    for (int i = 0; i < o.size; ++i) id[i] = i;
    cat.identity[o.name] = detail::index_arrow_name(o, o, id);
  }
  // composition: (g ∘ f)(i) = g(f(i))
  std::map<std::string, const PredObj*> by_name;
  for (auto& o : objs) by_name[o.name] = &o;
  for (auto& f : cat.arrows)
    for (auto& g : cat.arrows) {
      if (f.cod != g.dom) continue;
      const auto& ft = decode[f.name];
      const auto& gt = decode[g.name];
      std::vector<int> gf(ft.size());
      for (std::size_t i = 0; i < ft.size(); ++i) gf[i] = gt[ft[i]];
      cat.comp[{g.name, f.name}] =
          detail::index_arrow_name(*by_name[f.dom], *by_name[g.cod], gf);
    }
  return cat;
}

// ---------------------------------------------------------------------------
// The "self" locally indexed category: fibers over c have homs all
// mask-respecting functions c × X -> Y, identity the second projection,
// composition g ∘ f = g ∘ ⟨π₁, f⟩, and reindexing by precomposition with
// ρ × id.

inline FinLInd self_lind(const std::vector<PredObj>& objs) {
  FinLInd l;
  l.index = pred_index_cat(objs);
  for (auto& o : objs) l.objects.push_back(o.name);

  std::map<std::string, const PredObj*> by_name;
  for (auto& o : objs) by_name[o.name] = &o;

  // fiber arrow decode tables, per index object
  std::map<std::string, std::map<std::string, std::vector<int>>> decode;

  for (auto& c : objs) {
    HomCat fib;
    auto pm = [&](const PredObj& x) { return detail::product_mask(c, x); };
    for (auto& x : objs)
      for (auto& y : objs)
        for (auto& f : detail::functions_between(c.size * x.size, pm(x), y.size,
                                                 y.mask)) {
          std::string n = detail::fiber_arrow_name(c, x, y, f);
          fib.arrows.push_back({n, x.name, y.name});
          decode[c.name][n] = f;
        }
    for (auto& x : objs) {
      // π₂ : c × X -> X, (i, j) ↦ j
      std::vector<int> pi2(c.size * x.size);
      for (int i = 0; i < c.size; ++i)
        for (int j = 0; j < x.size; ++j) pi2[i * x.size + j] = j;
      if (c.size * x.size == 0) pi2.clear();
      fib.identity[x.name] = detail::fiber_arrow_name(c, x, x, pi2);
    }
    // (g ∘ f)(i, j) = g(i, f(i, j))
    for (auto& f : fib.arrows)
      for (auto& g : fib.arrows) {
        if (f.cod != g.dom) continue;
        const PredObj& x = *by_name[f.dom];
        const PredObj& y = *by_name[f.cod];
        const PredObj& z = *by_name[g.cod];
        const auto& ft = decode[c.name][f.name];
        const auto& gt = decode[c.name][g.name];
        std::vector<int> gf(c.size * x.size);
        for (int i = 0; i < c.size; ++i)
          for (int j = 0; j < x.size; ++j)
            gf[i * x.size + j] = gt[i * y.size + ft[i * x.size + j]];
        if (gf.empty() && c.size * x.size == 0) gf.clear();
        fib.comp[{g.name, f.name}] = detail::fiber_arrow_name(c, x, z, gf);
      }
    l.homs_at[c.name] = std::move(fib);
  }

  // reindexing: for ρ : d -> c, (f ▹ ρ)(i, j) = f(ρ(i), j)
  for (auto& rho : l.index.arrows) {
    const PredObj& d = *by_name[rho.dom];
    const PredObj& c = *by_name[rho.cod];
    // decode the index arrow's digits
    std::string digits = rho.name.substr(rho.name.rfind(':') + 1);
    std::vector<int> rt;
    for (char ch : digits) rt.push_back(ch - '0');
    std::map<std::string, std::string> table;
    for (auto& f : l.homs_at[c.name].arrows) {
      const PredObj& x = *by_name[f.dom];
      const PredObj& y = *by_name[f.cod];
      const auto& ft = decode[c.name][f.name];
      std::vector<int> rf(d.size * x.size);
      for (int i = 0; i < d.size; ++i)
        for (int j = 0; j < x.size; ++j)
          rf[i * x.size + j] = ft[rt[i] * x.size + j];
      table[f.name] = detail::fiber_arrow_name(d, x, y, rf);
    }
    l.reindex[rho.name] = std::move(table);
  }
  return l;
}

// ---------------------------------------------------------------------------
// Standard object lists.

// plain finite sets of size ≤ 2 (empty masks: no constraint)
inline std::vector<PredObj> set_skeleton_objects() {
  return {{"S0", 0, {}}, {"S1", 1, {}}, {"S2", 2, {}}};
}

// sets of size ≤ 2 with every predicate
inline std::vector<PredObj> pred_truncation_objects() {
  return {{"P0", 0, {}},
          {"P1", 1, {}},
          {"P1f", 1, {0}},
          {"P2", 2, {}},
          {"P2a", 2, {0}},
          {"P2b", 2, {1}},
          {"P2ab", 2, {0, 1}}};
}

// ---------------------------------------------------------------------------
// The forgetful locally indexed functor from self(Pred) to self(Set): drop
// the predicate, keep the underlying function.

inline FinLIndFunctor forgetful_functor(const FinLInd& pred_self,
                                        const FinLInd& set_self,
                                        const std::vector<PredObj>& pred_objs,
                                        const std::vector<PredObj>& set_objs) {
  FinLIndFunctor F;
  F.source = &pred_self;
  F.target = &set_self;

  std::map<std::string, const PredObj*> pred_by_name, set_by_size;
  for (auto& o : pred_objs) pred_by_name[o.name] = &o;
  std::map<int, const PredObj*> set_of_size;
  for (auto& o : set_objs) set_of_size[o.size] = &o;

  auto forget = [&](const std::string& n) -> const PredObj& {
    return *set_of_size.at(pred_by_name.at(n)->size);
  };

  for (auto& o : pred_objs) {
    F.p_obj[o.name] = forget(o.name).name;
    F.P_obj[o.name] = forget(o.name).name;
  }
  for (auto& a : pred_self.index.arrows) {
    std::string digits = a.name.substr(a.name.rfind(':') + 1);
    std::vector<int> f;
    for (char ch : digits) f.push_back(ch - '0');
    F.p_arr[a.name] =
        detail::index_arrow_name(forget(a.dom), forget(a.cod), f);
  }
  for (auto& c : pred_objs) {
    std::map<std::string, std::string> table;
    for (auto& a : pred_self.homs_at.at(c.name).arrows) {
      std::string digits = a.name.substr(a.name.rfind(':') + 1);
      std::vector<int> f;
      for (char ch : digits) f.push_back(ch - '0');
      table[a.name] =
          detail::fiber_arrow_name(forget(c.name), forget(a.dom),
                                   forget(a.cod), f);
    }
    F.P_arr[c.name] = std::move(table);
  }
  return F;
}

// Identity locally indexed functor on any instance.
inline FinLIndFunctor identity_functor(const FinLInd& l) {
  FinLIndFunctor F;
  F.source = &l;
  F.target = &l;
  for (auto& o : l.index.objects) F.p_obj[o] = o;
  for (auto& a : l.index.arrows) F.p_arr[a.name] = a.name;
  for (auto& o : l.objects) F.P_obj[o] = o;
  for (auto& [c, fib] : l.homs_at) {
    std::map<std::string, std::string> table;
    for (auto& a : fib.arrows) table[a.name] = a.name;
    F.P_arr[c] = std::move(table);
  }
  return F;
}

} // namespace cbpv
