// JSON configuration loading: signatures, models (with constants), relation
// literals, gluing configurations, evaluation environments, and finite
// locally-indexed instances; plus a parser for the printed semantic-value
// syntax so configuration files can write denotations literally.
#pragma once

#include <fstream>

#include <json.hpp>

#include "cbpv/logrel.hpp"
#include "cbpv/lindcheck.hpp"

namespace cbpv {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Semantic-value literals, in the same syntax SemVal::str() prints:
//   atoms, (), (v, w), inl v, inr v, set{...}, list[...], ok(v), err(e),
//   st{s: (x, s'), ...}, ret(v), op(t; ...), op[p](t; ...)

namespace detail {

class SemValParser {
 public:
  explicit SemValParser(std::string_view s) : s_(s) {}

  SemVal parse() {
    SemVal v = value();
    skip();
    if (pos_ != s_.size())
      throw ConfigError("trailing input in value literal: '" +
                        std::string(s_.substr(pos_)) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ConfigError(std::string("expected '") + c + "' in value literal");
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
            s_[pos_] == '\''))
      ++pos_;
    if (start == pos_) throw ConfigError("expected an identifier in value literal");
    return std::string(s_.substr(start, pos_ - start));
  }
  bool peek_word(const std::string& w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    std::size_t after = pos_ + w.size();
    if (after < s_.size() &&
        (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_'))
      return false;
    return true;
  }

  SemVal value() {
    skip();
    if (pos_ >= s_.size()) throw ConfigError("empty value literal");
    if (s_[pos_] == '(') {
      ++pos_;
      skip();
      if (eat(')')) return SemVal::unit();
      SemVal a = value();
      if (eat(',')) {
        SemVal b = value();
        expect(')');
        return SemVal::pair(std::move(a), std::move(b));
      }
      expect(')');
      return a;
    }
    if (peek_word("inl")) {
      pos_ += 3;
      return SemVal::inl(value());
    }
    if (peek_word("inr")) {
      pos_ += 3;
      return SemVal::inr(value());
    }
    if (peek_word("set")) {
      pos_ += 3;
      expect('{');
      std::vector<SemVal> ms;
      skip();
      if (!eat('}')) {
        ms.push_back(value());
        while (eat(',')) ms.push_back(value());
        expect('}');
      }
      return SemVal::set(std::move(ms));
    }
    if (peek_word("list")) {
      pos_ += 4;
      expect('[');
      std::vector<SemVal> ms;
      skip();
      if (!eat(']')) {
        ms.push_back(value());
        while (eat(',')) ms.push_back(value());
        expect(']');
      }
      return SemVal::list(std::move(ms));
    }
    if (peek_word("ok")) {
      pos_ += 2;
      expect('(');
      SemVal v = value();
      expect(')');
      return SemVal::ok(std::move(v));
    }
    if (peek_word("err")) {
      pos_ += 3;
      expect('(');
      SemVal v = value();
      expect(')');
      return SemVal::err(std::move(v));
    }
    if (peek_word("st")) {
      pos_ += 2;
      expect('{');
      std::vector<std::pair<SemVal, SemVal>> table;
      skip();
      if (!eat('}')) {
        do {
          SemVal s = value();
          expect(':');
          SemVal x = value();
          table.emplace_back(std::move(s), std::move(x));
        } while (eat(','));
        expect('}');
      }
      return SemVal::state_table(std::move(table));
    }
    if (peek_word("ret")) {
      pos_ += 3;
      expect('(');
      SemVal v = value();
      expect(')');
      return SemVal::free_tree(FreeTree::ret(std::move(v)));
    }
    // identifier: an atom, or an operation node of a free tree
    std::string name = ident();
    skip();
    std::optional<SemVal> param;
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      param = value();
      expect(']');
      skip();
    }
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      std::vector<std::shared_ptr<const FreeTree>> kids;
      skip();
      if (!eat(')')) {
        kids.push_back(tree_arg());
        while (eat(';')) kids.push_back(tree_arg());
        expect(')');
      }
      return SemVal::free_tree(
          FreeTree::node(name, std::move(param), std::move(kids)));
    }
    if (param) throw ConfigError("parameter without an operation node");
    return SemVal::atom(name);
  }

  std::shared_ptr<const FreeTree> tree_arg() {
    SemVal v = value();
    if (v.kind() != SemVal::Kind::Free)
      throw ConfigError("operation-node argument is not a tree: " + v.str());
    return v.tree();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline SemVal parse_semval(std::string_view text) {
  return detail::SemValParser(text).parse();
}

// ---------------------------------------------------------------------------
// File and JSON helpers.

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline std::string load_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------
// Signatures:
// {"value_bases": [...], "comp_bases": [...],
//  "operations": [{"name": ..., "arity": n, "param": "typeText" | null}]}

inline Signature load_signature(const json& j) {
  Signature sig;
  for (auto& b : j.value("value_bases", json::array()))
    sig.value_bases.push_back(b.get<std::string>());
  for (auto& b : j.value("comp_bases", json::array()))
    sig.comp_bases.push_back(b.get<std::string>());
  for (auto& o : j.value("operations", json::array())) {
    OpDecl d;
    d.name = o.at("name").get<std::string>();
    d.arity = o.at("arity").get<std::size_t>();
    if (o.contains("param") && !o["param"].is_null())
      d.param = parse_vtype_text(o["param"].get<std::string>(), sig);
    sig.operations.push_back(std::move(d));
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Models:
// {"kind": "algebra" | "storage" | "product",
//  "signature": {...},            (top level only; shared by nested models)
//  "monad": {"kind": "pfin"|"list"|"exception"|"state"|"free",
//            "elements": ["e1", ...]},           (exception/state payload)
//  "states": ["s0", ...],                        (storage)
//  "bases": {"β": ["a", "b"]},
//  "consts": {"c": {"type": "typeText", "value": "semval literal",
//                   "comp": true?}},
//  "left": {...}, "right": {...}}                (product components)

struct LoadedModel {
  Model model;
  ConstEnv cenv;
  Signature sig;
};

namespace detail {

inline SemSet atoms_from(const json& arr) {
  std::vector<SemVal> out;
  for (auto& a : arr) out.push_back(SemVal::atom(a.get<std::string>()));
  return SemSet::of(std::move(out));
}

inline Model load_model_rec(const json& j, const Signature& sig, ConstEnv& cenv);

inline void load_consts(const json& j, const Signature& sig, ConstEnv& cenv,
                        std::map<std::string, SemVal>& interp) {
  for (auto& [name, c] : j.value("consts", json::object()).items()) {
    if (!c.contains("type") || !c.contains("value"))
      throw ConfigError("constant '" + name + "' needs \"type\" and \"value\"");
    interp[name] = parse_semval(c["value"].get<std::string>());
    bool comp = c.value("comp", false);
    if (comp)
      cenv.comps[name] = parse_ctype_text(c["type"].get<std::string>(), sig);
    else
      cenv.values[name] = parse_vtype_text(c["type"].get<std::string>(), sig);
  }
}

inline Model load_model_rec(const json& j, const Signature& sig, ConstEnv& cenv) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "product") {
    ConstEnv dummy; // component constants share the top-level typings
    Model l = load_model_rec(j.at("left"), sig, dummy);
    Model r = load_model_rec(j.at("right"), sig, dummy);
    // typings must agree; keep one copy
    cenv = dummy;
    return product_model(l, r);
  }

  std::map<std::string, SemSet> bases;
  for (auto& [name, arr] : j.value("bases", json::object()).items())
    bases[name] = atoms_from(arr);

  std::map<std::string, SemVal> interp;
  load_consts(j, sig, cenv, interp);

  if (kind == "storage") {
    if (!j.contains("states"))
      throw ConfigError("storage model needs a \"states\" list");
    return storage_model(atoms_from(j["states"]), std::move(bases),
                         std::move(interp));
  }
  if (kind != "algebra")
    throw ConfigError("unknown model kind '" + kind + "'");

  const json& mj = j.at("monad");
  std::string mkind = mj.at("kind").get<std::string>();
  SemSet payload;
  if (mj.contains("elements")) payload = atoms_from(mj["elements"]);
  Monad m = make_monad(mkind, payload, sig);
  return algebra_model(std::move(m), sig, std::move(bases), std::move(interp));
}

} // namespace detail

inline LoadedModel load_model(const json& j) {
  LoadedModel out;
  if (!j.contains("signature"))
    throw ConfigError("model configuration needs a top-level \"signature\"");
  out.sig = load_signature(j["signature"]);
  out.model = detail::load_model_rec(j, out.sig, out.cenv);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation environments: {"x": {"type": "typeText", "value": "literal"}}

inline Env load_env(const json& j, const Signature& sig) {
  Env env;
  for (auto& [name, e] : j.items()) {
    ValueType t = parse_vtype_text(e.at("type").get<std::string>(), sig);
    SemVal v = parse_semval(e.at("value").get<std::string>());
    env = env.extended(name, std::move(t), std::move(v));
  }
  return env;
}

// ---------------------------------------------------------------------------
// Relation literals:
//   unary  {"base": "β", "members": ["a"]}
//   binary {"left": "β", "right": "β", "pairs": [["a","a"]]}

inline Pred load_pred(const json& j, const Model& m) {
  std::string base = j.at("base").get<std::string>();
  auto it = m.base_vtype.find(base);
  if (it == m.base_vtype.end())
    throw ConfigError("relation names unknown base '" + base + "'");
  std::vector<SemVal> members;
  for (auto& a : j.at("members"))
    members.push_back(SemVal::atom(a.get<std::string>()));
  for (auto& v : members)
    if (!it->second.contains(v))
      throw ConfigError("relation member " + v.str() + " outside carrier of '" +
                        base + "'");
  return Pred::of(it->second, std::move(members));
}

inline BinRel load_binrel(const json& j, const Model& ml, const Model& mr) {
  std::string lbase = j.at("left").get<std::string>();
  std::string rbase = j.at("right").get<std::string>();
  auto li = ml.base_vtype.find(lbase);
  auto ri = mr.base_vtype.find(rbase);
  if (li == ml.base_vtype.end() || ri == mr.base_vtype.end())
    throw ConfigError("binary relation names an unknown base");
  std::vector<std::pair<SemVal, SemVal>> pairs;
  for (auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2)
      throw ConfigError("binary relation pairs must be 2-element arrays");
    pairs.emplace_back(SemVal::atom(p[0].get<std::string>()),
                       SemVal::atom(p[1].get<std::string>()));
  }
  return BinRel::of(li->second, ri->second, std::move(pairs));
}

// ---------------------------------------------------------------------------
// Gluing configurations:
// {"mode": "unary" | "binary",
//  "model": {...},                    (a model configuration, incl. signature)
//  "lifting": {"kind": "free" | "tt" | "exception" | "em", ...},
//  "base_rels": {"β": <relation literal>},
//  "comp_base_rels": {"b": <relation literal>}}
//
// Lifting parameters: exception → {"related": ["e1"]} (the subset Ē of the
// model's exception set); tt → {"param_carrier": ["0","1"],
// "param_pred": ["1"], "algebra": {"<T-literal>": "<element>"}}.

struct LoadedGlue {
  GluedModel glued;
  ConstEnv cenv;
  Signature sig;
};

inline LoadedGlue load_glue(const json& j) {
  LoadedGlue out;
  if (!j.contains("model"))
    throw ConfigError("gluing configuration needs a \"model\"");
  LoadedModel lm = load_model(j["model"]);
  out.cenv = lm.cenv;
  out.sig = lm.sig;
  GluedModel g;
  g.base = lm.model;
  std::string mode = j.value("mode", "unary");
  if (mode != "unary" && mode != "binary")
    throw ConfigError("mode must be \"unary\" or \"binary\"");
  g.binary = (mode == "binary");
  if (g.binary && !g.base.left)
    throw ConfigError("binary gluing requires a product model");

  const json& lj = j.at("lifting");
  std::string lkind = lj.at("kind").get<std::string>();
  if (lkind == "exception") {
    if (g.base.monad.kind != MonadKind::Exception)
      throw ConfigError("exception lifting requires an exception-monad model");
    std::vector<SemVal> rel;
    for (auto& e : lj.at("related"))
      rel.push_back(SemVal::atom(e.get<std::string>()));
    for (auto& e : rel)
      if (!g.base.monad.except_set.contains(e))
        throw ConfigError("related exception " + e.str() +
                          " outside the exception set");
    g.lifting = exception_lifting(Pred::of(g.base.monad.except_set, rel));
  } else if (lkind == "free") {
    if (g.base.monad.kind != MonadKind::Free)
      throw ConfigError("free lifting requires a free-monad model");
    g.lifting = free_lifting(g.base.monad.free_sig);
  } else if (lkind == "tt") {
    SemSet pc = detail::atoms_from(lj.at("param_carrier"));
    std::vector<SemVal> pm;
    for (auto& a : lj.at("param_pred"))
      pm.push_back(SemVal::atom(a.get<std::string>()));
    auto table = std::make_shared<std::vector<std::pair<SemVal, SemVal>>>();
    for (auto& [lit, img] : lj.at("algebra").items())
      table->emplace_back(parse_semval(lit),
                          parse_semval(img.get<std::string>()));
    auto alg = [table](const SemVal& t) -> SemVal {
      for (auto& [k, v] : *table)
        if (k == t) return v;
      throw ConfigError("algebra table has no entry for " + t.str());
    };
    g.lifting = tt_lifting(g.base.monad, pc, alg, Pred::of(pc, pm));
  } else if (lkind == "em") {
    if (!g.binary)
      throw ConfigError("the set/list simulation lifting is binary");
    g.lifting = em_lifting();
  } else {
    throw ConfigError("unknown lifting kind '" + lkind + "'");
  }

  for (auto& [name, rj] : j.value("base_rels", json::object()).items()) {
    if (g.binary)
      g.base_rel2.emplace(name, load_binrel(rj, *g.base.left, *g.base.right));
    else
      g.base_rel.emplace(name, load_pred(rj, g.base));
  }
  for (auto& [name, rj] : j.value("comp_base_rels", json::object()).items()) {
    CompType bt = CompType::mk_base(name);
    if (g.binary) {
      // listed as [ [leftLiteral, rightLiteral], ... ]
      std::vector<std::pair<SemVal, SemVal>> pairs;
      for (auto& p : rj) {
        if (!p.is_array() || p.size() != 2)
          throw ConfigError(
              "binary computation-base relations list 2-element arrays");
        pairs.emplace_back(parse_semval(p[0].get<std::string>()),
                           parse_semval(p[1].get<std::string>()));
      }
      g.comp_base_rel2.emplace(
          name, BinRel::of(interp_ctype(*g.base.left, bt).carrier,
                           interp_ctype(*g.base.right, bt).carrier,
                           std::move(pairs)));
    } else {
      // listed as related carrier elements, written as value literals
      std::vector<SemVal> members;
      for (auto& v : rj) members.push_back(parse_semval(v.get<std::string>()));
      g.comp_base_rel.emplace(
          name, Pred::of(interp_ctype(g.base, bt).carrier, members));
    }
  }
  out.glued = std::move(g);
  return out;
}

// ---------------------------------------------------------------------------
// Finite locally indexed instances:
// {"index": <cat>, "objects": [...], "homs_at": {c: <cat'>},
//  "reindex": {rho: {f: f'}}}
// where <cat> = {"objects": [...], "arrows": [{"name","dom","cod"}],
//                "identity": {obj: arrow}, "compose": {g: {f: "g∘f"}}}
// and <cat'> is the same without "objects".
// A functor file wraps two instances:
// {"functor": {"source": <lind>, "target": <lind>, "p_obj": {...},
//              "p_arr": {...}, "P_obj": {...}, "P_arr": {c: {...}},
//              "unit_source": "...", "unit_target": "..."}}

namespace detail {

inline void load_cat_tables(const json& j, std::vector<FinCat::Arrow>& arrows,
                            std::map<std::string, std::string>& identity,
                            std::map<std::pair<std::string, std::string>,
                                     std::string>& comp) {
  for (auto& a : j.value("arrows", json::array()))
    arrows.push_back({a.at("name").get<std::string>(),
                      a.at("dom").get<std::string>(),
                      a.at("cod").get<std::string>()});
  for (auto& [o, id] : j.value("identity", json::object()).items())
    identity[o] = id.get<std::string>();
  for (auto& [gname, row] : j.value("compose", json::object()).items())
    for (auto& [fname, gf] : row.items())
      comp[{gname, fname}] = gf.get<std::string>();
}

} // namespace detail

inline FinCat load_fincat(const json& j) {
  FinCat c;
  for (auto& o : j.value("objects", json::array()))
    c.objects.push_back(o.get<std::string>());
  detail::load_cat_tables(j, c.arrows, c.identity, c.comp);
  return c;
}

inline FinLInd load_finlind(const json& j) {
  FinLInd l;
  l.index = load_fincat(j.at("index"));
  for (auto& o : j.value("objects", json::array()))
    l.objects.push_back(o.get<std::string>());
  for (auto& [c, cj] : j.value("homs_at", json::object()).items()) {
    HomCat h;
    detail::load_cat_tables(cj, h.arrows, h.identity, h.comp);
    l.homs_at[c] = std::move(h);
  }
  for (auto& [rho, row] : j.value("reindex", json::object()).items()) {
    std::map<std::string, std::string> table;
    for (auto& [f, f2] : row.items()) table[f] = f2.get<std::string>();
    l.reindex[rho] = std::move(table);
  }
  return l;
}

struct LoadedLindFunctor {
  std::shared_ptr<FinLInd> source, target;
  FinLIndFunctor functor;
  std::string unit_source, unit_target;
};

inline LoadedLindFunctor load_lind_functor(const json& j) {
  LoadedLindFunctor out;
  out.source = std::make_shared<FinLInd>(load_finlind(j.at("source")));
  out.target = std::make_shared<FinLInd>(load_finlind(j.at("target")));
  out.functor.source = out.source.get();
  out.functor.target = out.target.get();
  for (auto& [k, v] : j.at("p_obj").items())
    out.functor.p_obj[k] = v.get<std::string>();
  for (auto& [k, v] : j.at("p_arr").items())
    out.functor.p_arr[k] = v.get<std::string>();
  for (auto& [k, v] : j.at("P_obj").items())
    out.functor.P_obj[k] = v.get<std::string>();
  for (auto& [c, row] : j.at("P_arr").items()) {
    std::map<std::string, std::string> table;
    for (auto& [f, f2] : row.items()) table[f] = f2.get<std::string>();
    out.functor.P_arr[c] = std::move(table);
  }
  out.unit_source = j.at("unit_source").get<std::string>();
  out.unit_target = j.at("unit_target").get<std::string>();
  return out;
}

} // namespace cbpv
