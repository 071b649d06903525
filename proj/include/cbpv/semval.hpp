// Semantic values and finite (or lazily enumerable) carriers.
//
// A single universal value type covers every model in the workbench: unit,
// pairs, injections, atoms for base-type elements, extensional functions, and
// monadic payloads (finite sets, lists, exception-tagged values, state
// transformer tables, free operation trees).
#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cbpv {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SemVal;
struct SemSet;

// Free-monad elements: finite operation trees with return leaves.
struct FreeTree;

struct SemSet {
  bool finite = true;
  std::vector<SemVal> elems; // populated when finite
  // for non-finite sets: optional indexed enumerator (lists); may be absent
  std::function<SemVal(std::size_t)> nth;

  std::size_t size() const;
  bool contains(const SemVal& v) const;

  static SemSet of(std::vector<SemVal> es);
  static SemSet lazy(std::function<SemVal(std::size_t)> f) {
    SemSet s;
    s.finite = false;
    s.nth = std::move(f);
    return s;
  }
  static SemSet opaque() { // non-finite, non-enumerable
    SemSet s;
    s.finite = false;
    return s;
  }
};

class SemVal {
 public:
  enum class Kind { Unit, Atom, Pair, Inl, Inr, Fun, Set, List, Ok, Err, State, Free };

  struct FunData {
    SemSet domain;
    std::function<SemVal(const SemVal&)> fn;
  };

  struct Node {
    Kind kind = Kind::Unit;
    std::string atom;                    // Atom
    std::vector<SemVal> kids;            // Pair (2), Inl/Inr (1), Set, List
    std::shared_ptr<FunData> fun;        // Fun
    std::vector<std::pair<SemVal, SemVal>> table; // State: s -> (x, s')
    std::shared_ptr<const FreeTree> tree;          // Free
  };

  SemVal() : node_(unit_node()) {}

  Kind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }

  // constructors ------------------------------------------------------------
  static SemVal unit() { return SemVal(); }
  static SemVal atom(std::string a) {
    Node n; n.kind = Kind::Atom; n.atom = std::move(a);
    return SemVal(std::move(n));
  }
  static SemVal pair(SemVal a, SemVal b) {
    Node n; n.kind = Kind::Pair; n.kids = {std::move(a), std::move(b)};
    return SemVal(std::move(n));
  }
  static SemVal inl(SemVal v) {
    Node n; n.kind = Kind::Inl; n.kids = {std::move(v)};
    return SemVal(std::move(n));
  }
  static SemVal inr(SemVal v) {
    Node n; n.kind = Kind::Inr; n.kids = {std::move(v)};
    return SemVal(std::move(n));
  }
  static SemVal fun(SemSet domain, std::function<SemVal(const SemVal&)> f) {
    Node n; n.kind = Kind::Fun;
    n.fun = std::make_shared<FunData>(FunData{std::move(domain), std::move(f)});
    return SemVal(std::move(n));
  }
  static SemVal set(std::vector<SemVal> members); // sorted, deduped
  static SemVal list(std::vector<SemVal> members) {
    Node n; n.kind = Kind::List; n.kids = std::move(members);
    return SemVal(std::move(n));
  }
  static SemVal ok(SemVal v) {
    Node n; n.kind = Kind::Ok; n.kids = {std::move(v)};
    return SemVal(std::move(n));
  }
  static SemVal err(SemVal e) {
    Node n; n.kind = Kind::Err; n.kids = {std::move(e)};
    return SemVal(std::move(n));
  }
  static SemVal state_table(std::vector<std::pair<SemVal, SemVal>> table) {
    Node n; n.kind = Kind::State; n.table = std::move(table);
    return SemVal(std::move(n));
  }
  static SemVal free_tree(std::shared_ptr<const FreeTree> t) {
    Node n; n.kind = Kind::Free; n.tree = std::move(t);
    return SemVal(std::move(n));
  }

  // accessors ---------------------------------------------------------------
  const std::string& atom_name() const { return node_->atom; }
  const SemVal& first() const { return node_->kids[0]; }
  const SemVal& second() const { return node_->kids[1]; }
  const std::vector<SemVal>& members() const { return node_->kids; }
  const FunData& fun_data() const { return *node_->fun; }
  const std::vector<std::pair<SemVal, SemVal>>& table() const { return node_->table; }
  const std::shared_ptr<const FreeTree>& tree() const { return node_->tree; }

  SemVal apply(const SemVal& arg) const {
    if (kind() != Kind::Fun) throw EvalError("applying a non-function value");
    return node_->fun->fn(arg);
  }

  // total order; throws for functions over non-finite domains
  int compare(const SemVal& o) const;
  bool operator==(const SemVal& o) const { return compare(o) == 0; }
  bool operator!=(const SemVal& o) const { return compare(o) != 0; }
  bool operator<(const SemVal& o) const { return compare(o) < 0; }

  std::string str() const;

 private:
  explicit SemVal(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  static std::shared_ptr<const Node> unit_node() {
    static const auto n = std::make_shared<const Node>();
    return n;
  }
  std::shared_ptr<const Node> node_;
};

struct FreeTree {
  bool is_ret = true;
  SemVal val;                      // when is_ret
  std::string op;                  // otherwise
  std::optional<SemVal> param;
  std::vector<std::shared_ptr<const FreeTree>> kids;

  static std::shared_ptr<const FreeTree> ret(SemVal v) {
    auto t = std::make_shared<FreeTree>();
    t->val = std::move(v);
    return t;
  }
  static std::shared_ptr<const FreeTree> node(
      std::string op, std::optional<SemVal> param,
      std::vector<std::shared_ptr<const FreeTree>> kids) {
    auto t = std::make_shared<FreeTree>();
    t->is_ret = false;
    t->op = std::move(op);
    t->param = std::move(param);
    t->kids = std::move(kids);
    return t;
  }
};

namespace detail {

inline int compare_free(const FreeTree& a, const FreeTree& b) {
  if (a.is_ret != b.is_ret) return a.is_ret ? -1 : 1;
  if (a.is_ret) return a.val.compare(b.val);
  if (int c = a.op.compare(b.op)) return c < 0 ? -1 : 1;
  if (a.param.has_value() != b.param.has_value()) return a.param ? 1 : -1;
  if (a.param) {
    if (int c = a.param->compare(*b.param)) return c;
  }
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (int c = compare_free(*a.kids[i], *b.kids[i])) return c;
  }
  return 0;
}

} // namespace detail

inline int SemVal::compare(const SemVal& o) const {
  if (node_ == o.node_) return 0;
  if (kind() != o.kind())
    return static_cast<int>(kind()) < static_cast<int>(o.kind()) ? -1 : 1;
  switch (kind()) {
    case Kind::Unit:
      return 0;
    case Kind::Atom: {
      int c = node_->atom.compare(o.node_->atom);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Pair:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Set:
    case Kind::List:
    case Kind::Ok:
    case Kind::Err: {
      const auto& xs = node_->kids;
      const auto& ys = o.node_->kids;
      if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (int c = xs[i].compare(ys[i])) return c;
      }
      return 0;
    }
    case Kind::Fun: {
      // extensional comparison over a finite domain
      const auto& fa = *node_->fun;
      const auto& fb = *o.node_->fun;
      if (!fa.domain.finite || !fb.domain.finite)
        throw EvalError("cannot compare functions over a non-finite domain");
      if (fa.domain.elems.size() != fb.domain.elems.size())
        return fa.domain.elems.size() < fb.domain.elems.size() ? -1 : 1;
      for (std::size_t i = 0; i < fa.domain.elems.size(); ++i) {
        if (int c = fa.domain.elems[i].compare(fb.domain.elems[i])) return c;
      }
      for (const auto& x : fa.domain.elems) {
        if (int c = fa.fn(x).compare(fb.fn(x))) return c;
      }
      return 0;
    }
    case Kind::State: {
      const auto& ta = node_->table;
      const auto& tb = o.node_->table;
      if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ta.size(); ++i) {
        if (int c = ta[i].first.compare(tb[i].first)) return c;
        if (int c = ta[i].second.compare(tb[i].second)) return c;
      }
      return 0;
    }
    case Kind::Free:
      return detail::compare_free(*node_->tree, *o.node_->tree);
  }
  return 0;
}

inline SemVal SemVal::set(std::vector<SemVal> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Node n;
  n.kind = Kind::Set;
  n.kids = std::move(members);
  return SemVal(std::move(n));
}

inline std::size_t SemSet::size() const {
  if (!finite) throw EvalError("size of a non-finite carrier");
  return elems.size();
}

inline bool SemSet::contains(const SemVal& v) const {
  if (!finite) throw EvalError("membership on a non-finite carrier");
  for (auto& e : elems)
    if (e == v) return true;
  return false;
}

inline SemSet SemSet::of(std::vector<SemVal> es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  SemSet s;
  s.elems = std::move(es);
  return s;
}

// -- printing ---------------------------------------------------------------

namespace detail {
inline void str_free(const FreeTree& t, std::ostream& os);
}

inline std::string SemVal::str() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Unit: os << "()"; break;
    case Kind::Atom: os << node_->atom; break;
    case Kind::Pair:
      os << "(" << first().str() << ", " << second().str() << ")";
      break;
    case Kind::Inl: os << "inl " << first().str(); break;
    case Kind::Inr: os << "inr " << first().str(); break;
    case Kind::Fun: {
      const auto& f = *node_->fun;
      if (!f.domain.finite) {
        os << "<fun>";
      } else {
        os << "{";
        bool sep = false;
        for (const auto& x : f.domain.elems) {
          if (sep) os << ", ";
          sep = true;
          os << x.str() << " -> " << f.fn(x).str();
        }
        os << "}";
      }
      break;
    }
    case Kind::Set: {
      os << "set{";
      for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (i) os << ", ";
        os << node_->kids[i].str();
      }
      os << "}";
      break;
    }
    case Kind::List: {
      os << "list[";
      for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (i) os << ", ";
        os << node_->kids[i].str();
      }
      os << "]";
      break;
    }
    case Kind::Ok: os << "ok(" << first().str() << ")"; break;
    case Kind::Err: os << "err(" << first().str() << ")"; break;
    case Kind::State: {
      os << "st{";
      for (std::size_t i = 0; i < node_->table.size(); ++i) {
        if (i) os << ", ";
        os << node_->table[i].first.str() << ": " << node_->table[i].second.str();
      }
      os << "}";
      break;
    }
    case Kind::Free:
      detail::str_free(*node_->tree, os);
      break;
  }
  return os.str();
}

namespace detail {
inline void str_free(const FreeTree& t, std::ostream& os) {
  if (t.is_ret) {
    os << "ret(" << t.val.str() << ")";
    return;
  }
  os << t.op;
  if (t.param) os << "[" << t.param->str() << "]";
  os << "(";
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    if (i) os << "; ";
    str_free(*t.kids[i], os);
  }
  os << ")";
}
} // namespace detail

// cartesian product / disjoint sum / function space builders -----------------

inline SemSet product_set(const SemSet& a, const SemSet& b) {
  if (!a.finite || !b.finite) return SemSet::opaque();
  std::vector<SemVal> out;
  out.reserve(a.elems.size() * b.elems.size());
  for (const auto& x : a.elems)
    for (const auto& y : b.elems) out.push_back(SemVal::pair(x, y));
  return SemSet::of(std::move(out));
}

inline SemSet sum_set(const SemSet& a, const SemSet& b) {
  if (!a.finite || !b.finite) return SemSet::opaque();
  std::vector<SemVal> out;
  out.reserve(a.elems.size() + b.elems.size());
  for (const auto& x : a.elems) out.push_back(SemVal::inl(x));
  for (const auto& y : b.elems) out.push_back(SemVal::inr(y));
  return SemSet::of(std::move(out));
}

// all functions dom -> cod, as extensional tables
inline SemSet function_set(const SemSet& dom, const SemSet& cod) {
  if (!dom.finite || !cod.finite) return SemSet::opaque();
  const std::size_t n = dom.elems.size();
  const std::size_t k = cod.elems.size();
  if (n == 0) {
    return SemSet::of({SemVal::fun(dom, [](const SemVal&) -> SemVal {
      throw EvalError("applying a function with empty domain");
    })});
  }
  if (k == 0) return SemSet::of({}); // no functions into the empty set
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > 1'000'000 / k)
      throw EvalError("function space too large to enumerate");
    count *= k;
  }
  std::vector<SemVal> out;
  out.reserve(count);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t c = 0; c < count; ++c) {
    auto table = std::make_shared<std::vector<std::pair<SemVal, SemVal>>>();
    std::size_t rem = c;
    for (std::size_t i = 0; i < n; ++i) {
      table->emplace_back(dom.elems[i], cod.elems[rem % k]);
      rem /= k;
    }
    out.push_back(SemVal::fun(dom, [table](const SemVal& x) -> SemVal {
      for (auto& [a, b] : *table)
        if (a == x) return b;
      throw EvalError("function applied outside its domain");
    }));
  }
  return SemSet::of(std::move(out));
}

// all subsets of a finite carrier
inline std::vector<std::vector<SemVal>> subsets_of(const std::vector<SemVal>& xs) {
  std::vector<std::vector<SemVal>> out;
  const std::size_t n = xs.size();
  if (n > 20) throw EvalError("power set too large to enumerate");
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<SemVal> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(xs[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

} // namespace cbpv
