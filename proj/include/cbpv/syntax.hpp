// Abstract syntax, concrete grammar, parser and printer for a small
// call-by-push-value language with finite sums/products, thunks and
// signature-declared algebraic operations.
#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <string_view>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbpv {

// ---------------------------------------------------------------------------
// Types

struct CompType;
using CompTypePtr = std::shared_ptr<const CompType>;

struct ValueType {
  enum class Kind { Base, Unit, Prod, Empty, Sum, Thunk };
  Kind kind = Kind::Unit;
  std::string base;                               // Base
  std::shared_ptr<const ValueType> fst, snd;      // Prod / Sum
  CompTypePtr comp;                               // Thunk

  static ValueType mk_base(std::string n) {
    ValueType t; t.kind = Kind::Base; t.base = std::move(n); return t;
  }
  static ValueType unit() { return ValueType{}; }
  static ValueType empty() { ValueType t; t.kind = Kind::Empty; return t; }
  static ValueType prod(ValueType a, ValueType b) {
    ValueType t; t.kind = Kind::Prod;
    t.fst = std::make_shared<ValueType>(std::move(a));
    t.snd = std::make_shared<ValueType>(std::move(b));
    return t;
  }
  static ValueType sum(ValueType a, ValueType b) {
    ValueType t; t.kind = Kind::Sum;
    t.fst = std::make_shared<ValueType>(std::move(a));
    t.snd = std::make_shared<ValueType>(std::move(b));
    return t;
  }
  static ValueType thunk(CompType b);
};

struct CompType {
  enum class Kind { Base, Free, Top, With, Arrow };
  Kind kind = Kind::Top;
  std::string base;                          // Base
  std::shared_ptr<const ValueType> val;      // Free / Arrow argument
  CompTypePtr fst, snd;                      // With
  CompTypePtr body;                          // Arrow result

  static CompType mk_base(std::string n) {
    CompType t; t.kind = Kind::Base; t.base = std::move(n); return t;
  }
  static CompType free(ValueType a) {
    CompType t; t.kind = Kind::Free;
    t.val = std::make_shared<ValueType>(std::move(a));
    return t;
  }
  static CompType top() { return CompType{}; }
  static CompType with(CompType a, CompType b) {
    CompType t; t.kind = Kind::With;
    t.fst = std::make_shared<CompType>(std::move(a));
    t.snd = std::make_shared<CompType>(std::move(b));
    return t;
  }
  static CompType arrow(ValueType a, CompType b) {
    CompType t; t.kind = Kind::Arrow;
    t.val = std::make_shared<ValueType>(std::move(a));
    t.body = std::make_shared<CompType>(std::move(b));
    return t;
  }
};

inline ValueType ValueType::thunk(CompType b) {
  ValueType t; t.kind = Kind::Thunk;
  t.comp = std::make_shared<CompType>(std::move(b));
  return t;
}

bool operator==(const ValueType& a, const ValueType& b);
bool operator==(const CompType& a, const CompType& b);

inline bool operator==(const ValueType& a, const ValueType& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ValueType::Kind::Base: return a.base == b.base;
    case ValueType::Kind::Unit:
    case ValueType::Kind::Empty: return true;
    case ValueType::Kind::Prod:
    case ValueType::Kind::Sum: return *a.fst == *b.fst && *a.snd == *b.snd;
    case ValueType::Kind::Thunk: return *a.comp == *b.comp;
  }
  return false;
}

inline bool operator==(const CompType& a, const CompType& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case CompType::Kind::Base: return a.base == b.base;
    case CompType::Kind::Top: return true;
    case CompType::Kind::Free: return *a.val == *b.val;
    case CompType::Kind::With: return *a.fst == *b.fst && *a.snd == *b.snd;
    case CompType::Kind::Arrow: return *a.val == *b.val && *a.body == *b.body;
  }
  return false;
}

inline bool operator!=(const ValueType& a, const ValueType& b) { return !(a == b); }
inline bool operator!=(const CompType& a, const CompType& b) { return !(a == b); }

std::string print_vtype(const ValueType& t);
std::string print_ctype(const CompType& t);

// ---------------------------------------------------------------------------
// Signatures

struct OpDecl {
  std::string name;
  std::size_t arity = 0;         // number of computation arguments
  std::optional<ValueType> param; // optional value parameter type
};

struct Signature {
  std::vector<std::string> value_bases;
  std::vector<std::string> comp_bases;
  std::vector<OpDecl> operations;

  bool has_value_base(const std::string& n) const {
    for (auto& b : value_bases)
      if (b == n) return true;
    return false;
  }
  bool has_comp_base(const std::string& n) const {
    for (auto& b : comp_bases)
      if (b == n) return true;
    return false;
  }
  const OpDecl* find_op(const std::string& n) const {
    for (auto& o : operations)
      if (o.name == n) return &o;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind {
    // value forms
    Var, UnitVal, Pair, Inl, Inr, Thunk,
    // computation forms
    Return, To, Force, Lambda, App, CPair, Proj1, Proj2,
    PmPair, Case, CaseEmpty, LetVal, Op,
    // either, resolved by the constant environment
    Const
  };

  Kind kind = Kind::UnitVal;
  std::string name;                    // Var / Const / Op
  std::vector<std::string> binders;    // To, Lambda, PmPair, Case, LetVal
  std::optional<ValueType> vannot;     // Lambda binder annotation
  std::optional<CompType> cannot_;     // CaseEmpty result annotation
  bool has_param = false;              // Op: kids[0] is the value parameter
  std::vector<TermPtr> kids;

  bool is_value_form() const {
    switch (kind) {
      case Kind::Var: case Kind::UnitVal: case Kind::Pair:
      case Kind::Inl: case Kind::Inr: case Kind::Thunk: case Kind::Const:
        return true;
      default:
        return false;
    }
  }
};

namespace mk {

inline TermPtr var(std::string n) {
  Term t; t.kind = Term::Kind::Var; t.name = std::move(n);
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr unitval() {
  Term t; t.kind = Term::Kind::UnitVal;
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr pair(TermPtr a, TermPtr b) {
  Term t; t.kind = Term::Kind::Pair; t.kids = {std::move(a), std::move(b)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr inl(TermPtr v) {
  Term t; t.kind = Term::Kind::Inl; t.kids = {std::move(v)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr inr(TermPtr v) {
  Term t; t.kind = Term::Kind::Inr; t.kids = {std::move(v)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr thunk(TermPtr m) {
  Term t; t.kind = Term::Kind::Thunk; t.kids = {std::move(m)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr constant(std::string n) {
  Term t; t.kind = Term::Kind::Const; t.name = std::move(n);
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr ret(TermPtr v) {
  Term t; t.kind = Term::Kind::Return; t.kids = {std::move(v)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr to(TermPtr m, std::string x, TermPtr n) {
  Term t; t.kind = Term::Kind::To; t.binders = {std::move(x)};
  t.kids = {std::move(m), std::move(n)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr force(TermPtr v) {
  Term t; t.kind = Term::Kind::Force; t.kids = {std::move(v)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr lambda(std::string x, std::optional<ValueType> a, TermPtr m) {
  Term t; t.kind = Term::Kind::Lambda; t.binders = {std::move(x)};
  t.vannot = std::move(a); t.kids = {std::move(m)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr app(TermPtr m, TermPtr v) {
  Term t; t.kind = Term::Kind::App; t.kids = {std::move(m), std::move(v)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr cpair(TermPtr m, TermPtr n) {
  Term t; t.kind = Term::Kind::CPair; t.kids = {std::move(m), std::move(n)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr proj1(TermPtr m) {
  Term t; t.kind = Term::Kind::Proj1; t.kids = {std::move(m)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr proj2(TermPtr m) {
  Term t; t.kind = Term::Kind::Proj2; t.kids = {std::move(m)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr pmpair(TermPtr v, std::string x, std::string y, TermPtr m) {
  Term t; t.kind = Term::Kind::PmPair; t.binders = {std::move(x), std::move(y)};
  t.kids = {std::move(v), std::move(m)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr case_of(TermPtr v, std::string x, TermPtr m, std::string y, TermPtr n) {
  Term t; t.kind = Term::Kind::Case; t.binders = {std::move(x), std::move(y)};
  t.kids = {std::move(v), std::move(m), std::move(n)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr case0(TermPtr v, CompType b) {
  Term t; t.kind = Term::Kind::CaseEmpty; t.cannot_ = std::move(b);
  t.kids = {std::move(v)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr letval(std::string x, TermPtr v, TermPtr m) {
  Term t; t.kind = Term::Kind::LetVal; t.binders = {std::move(x)};
  t.kids = {std::move(v), std::move(m)};
  return std::make_shared<Term>(std::move(t));
}
inline TermPtr op(std::string n, std::optional<TermPtr> param, std::vector<TermPtr> args) {
  Term t; t.kind = Term::Kind::Op; t.name = std::move(n);
  if (param) { t.has_param = true; t.kids.push_back(*param); }
  for (auto& a : args) t.kids.push_back(std::move(a));
  return std::make_shared<Term>(std::move(t));
}

} // namespace mk

// ---------------------------------------------------------------------------
// Errors

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(std::string msg, int ln, int cl)
      : std::runtime_error(msg + " at " + std::to_string(ln) + ":" + std::to_string(cl)),
        line(ln), col(cl) {}
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_vtype_rec(const ValueType& t, std::ostream& os, int prec);
inline void print_ctype_rec(const CompType& t, std::ostream& os, int prec);

// precedence: 0 = top, 1 = sum (+), 2 = product (*), 3 = atomic/prefix
inline void print_vtype_rec(const ValueType& t, std::ostream& os, int prec) {
  switch (t.kind) {
    case ValueType::Kind::Base: os << t.base; break;
    case ValueType::Kind::Unit: os << "1"; break;
    case ValueType::Kind::Empty: os << "0"; break;
    case ValueType::Kind::Sum:
      if (prec > 1) os << "(";
      print_vtype_rec(*t.fst, os, 2);
      os << " + ";
      print_vtype_rec(*t.snd, os, 2);
      if (prec > 1) os << ")";
      break;
    case ValueType::Kind::Prod:
      if (prec > 2) os << "(";
      print_vtype_rec(*t.fst, os, 3);
      os << " * ";
      print_vtype_rec(*t.snd, os, 3);
      if (prec > 2) os << ")";
      break;
    case ValueType::Kind::Thunk:
      os << "U ";
      print_ctype_rec(*t.comp, os, 3);
      break;
  }
}

// precedence: 0 = arrow, 1 = with (&), 2 = atomic/prefix
inline void print_ctype_rec(const CompType& t, std::ostream& os, int prec) {
  switch (t.kind) {
    case CompType::Kind::Base: os << t.base; break;
    case CompType::Kind::Top: os << "Top"; break;
    case CompType::Kind::Free:
      if (prec > 2) os << "(";
      os << "F ";
      print_vtype_rec(*t.val, os, 3);
      if (prec > 2) os << ")";
      break;
    case CompType::Kind::With:
      if (prec > 1) os << "(";
      print_ctype_rec(*t.fst, os, 2);
      os << " & ";
      print_ctype_rec(*t.snd, os, 2);
      if (prec > 1) os << ")";
      break;
    case CompType::Kind::Arrow:
      if (prec > 0) os << "(";
      print_vtype_rec(*t.val, os, 2);
      os << " -> ";
      print_ctype_rec(*t.body, os, 0);
      if (prec > 0) os << ")";
      break;
  }
}

} // namespace detail

inline std::string print_vtype(const ValueType& t) {
  std::ostringstream os;
  detail::print_vtype_rec(t, os, 0);
  return os.str();
}

inline std::string print_ctype(const CompType& t) {
  std::ostringstream os;
  detail::print_ctype_rec(t, os, 0);
  return os.str();
}

namespace detail {

// Terms are printed almost fully parenthesized; only unambiguous atoms go bare.
inline void print_term_rec(const Term& t, std::ostream& os);

inline void print_atom(const Term& t, std::ostream& os) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      os << t.name;
      break;
    case Term::Kind::UnitVal:
      os << "()";
      break;
    case Term::Kind::Pair:
      os << "(";
      print_term_rec(*t.kids[0], os);
      os << ", ";
      print_term_rec(*t.kids[1], os);
      os << ")";
      break;
    default:
      os << "(";
      print_term_rec(t, os);
      os << ")";
      break;
  }
}

inline void print_term_rec(const Term& t, std::ostream& os) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
    case Term::Kind::UnitVal:
    case Term::Kind::Pair:
      print_atom(t, os);
      break;
    case Term::Kind::Inl:
      os << "inl ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::Inr:
      os << "inr ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::Thunk:
      os << "thunk ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::Return:
      os << "return ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::To:
      print_atom(*t.kids[0], os);
      os << " to " << t.binders[0] << ". ";
      print_term_rec(*t.kids[1], os);
      break;
    case Term::Kind::Force:
      os << "force ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::Lambda:
      os << "\\" << t.binders[0];
      if (t.vannot) os << " : " << print_vtype(*t.vannot);
      os << ". ";
      print_term_rec(*t.kids[0], os);
      break;
    case Term::Kind::App:
      print_atom(*t.kids[0], os);
      os << " ";
      print_atom(*t.kids[1], os);
      break;
    case Term::Kind::CPair:
      os << "<";
      print_term_rec(*t.kids[0], os);
      os << ", ";
      print_term_rec(*t.kids[1], os);
      os << ">";
      break;
    case Term::Kind::Proj1:
      os << "fst ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::Proj2:
      os << "snd ";
      print_atom(*t.kids[0], os);
      break;
    case Term::Kind::PmPair:
      os << "pm ";
      print_atom(*t.kids[0], os);
      os << " as (" << t.binders[0] << ", " << t.binders[1] << "). ";
      print_term_rec(*t.kids[1], os);
      break;
    case Term::Kind::Case:
      os << "case ";
      print_atom(*t.kids[0], os);
      os << " of { inl " << t.binders[0] << ". ";
      print_term_rec(*t.kids[1], os);
      os << " | inr " << t.binders[1] << ". ";
      print_term_rec(*t.kids[2], os);
      os << " }";
      break;
    case Term::Kind::CaseEmpty:
      os << "case0 ";
      print_atom(*t.kids[0], os);
      os << " : " << print_ctype(*t.cannot_);
      break;
    case Term::Kind::LetVal:
      os << "let " << t.binders[0] << " = ";
      print_term_rec(*t.kids[0], os);
      os << " in ";
      print_term_rec(*t.kids[1], os);
      break;
    case Term::Kind::Op: {
      os << t.name;
      std::size_t first = 0;
      if (t.has_param) {
        os << "[";
        print_term_rec(*t.kids[0], os);
        os << "]";
        first = 1;
      }
      if (t.kids.size() > first) {
        os << "(";
        for (std::size_t i = first; i < t.kids.size(); ++i) {
          if (i > first) os << "; ";
          print_term_rec(*t.kids[i], os);
        }
        os << ")";
      }
      break;
    }
  }
}

} // namespace detail

inline std::string print_term(const Term& t) {
  std::ostringstream os;
  detail::print_term_rec(t, os);
  return os.str();
}

inline std::string print_term(const TermPtr& t) { return print_term(*t); }

// ---------------------------------------------------------------------------
// Lexer / parser

namespace detail {

struct Token {
  enum class Kind { Ident, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_' || src_[pos_] == '\''))
        bump();
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    // multi-char symbols
    static const char* two[] = {"->", "()"};
    for (auto* s : two) {
      if (src_.substr(pos_, 2) == s) {
        tok_.kind = Token::Kind::Sym;
        tok_.text = s;
        bump(); bump();
        return;
      }
    }
    static const std::string singles = "\\.(){}<>,;:|=[]*+&01";
    if (singles.find(c) != std::string::npos) {
      tok_.kind = Token::Kind::Sym;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    // UTF-8 lambda
    if (src_.substr(pos_, 2) == "\xce\xbb") {
      tok_.kind = Token::Kind::Sym;
      tok_.text = "\\";
      bump(); bump();
      return;
    }
    throw ParseError("lexical error: unexpected character '" + std::string(1, c) + "'",
                     line_, col_);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig) : lex_(src), sig_(sig) {}

  TermPtr parse_comp_top() {
    TermPtr t = parse_comp();
    expect_end();
    return t;
  }

  ValueType parse_vtype_top() {
    ValueType t = parse_vtype();
    expect_end();
    return t;
  }

  CompType parse_ctype_top() {
    CompType t = parse_ctype();
    expect_end();
    return t;
  }

  // -- types ---------------------------------------------------------------

  // vtype ::= vsum; vsum ::= vprod ('+' vprod)*; vprod ::= vatom ('*' vatom)*
  ValueType parse_vtype() {
    ValueType t = parse_vprod();
    while (is_sym("+")) {
      lex_.next();
      t = ValueType::sum(std::move(t), parse_vprod());
    }
    return t;
  }

  ValueType parse_vprod() {
    ValueType t = parse_vatom();
    while (is_sym("*")) {
      lex_.next();
      t = ValueType::prod(std::move(t), parse_vatom());
    }
    return t;
  }

  ValueType parse_vatom() {
    const Token& p = lex_.peek();
    if (is_sym("1")) { lex_.next(); return ValueType::unit(); }
    if (is_sym("0")) { lex_.next(); return ValueType::empty(); }
    if (is_sym("(")) {
      lex_.next();
      ValueType t = parse_vtype();
      expect_sym(")");
      return t;
    }
    if (p.kind == Token::Kind::Ident) {
      if (p.text == "U") {
        lex_.next();
        return ValueType::thunk(parse_catom());
      }
      if (sig_.has_value_base(p.text)) {
        Token t = lex_.next();
        return ValueType::mk_base(t.text);
      }
      throw ParseError("unknown value base type '" + p.text + "'", p.line, p.col);
    }
    throw ParseError("expected a value type", p.line, p.col);
  }

  // ctype ::= vtype '->' ctype | catom ('&' catom)*
  CompType parse_ctype() { return parse_ctype_inner(); }

  CompType parse_catom() {
    const Token& p = lex_.peek();
    if (is_sym("(")) {
      lex_.next();
      CompType t = parse_ctype_inner();
      expect_sym(")");
      return t;
    }
    if (p.kind == Token::Kind::Ident) {
      if (p.text == "F") {
        lex_.next();
        return CompType::free(parse_vatom());
      }
      if (p.text == "Top") {
        lex_.next();
        return CompType::top();
      }
      if (sig_.has_comp_base(p.text)) {
        Token t = lex_.next();
        return CompType::mk_base(t.text);
      }
      throw ParseError("unknown computation base type '" + p.text + "'", p.line, p.col);
    }
    throw ParseError("expected a computation type", p.line, p.col);
  }

 private:
  // `A -> B` binds weakest; `B & B` next. An arrow domain shares its leading
  // tokens with the ctype grammar (parenthesized types, base names), so try a
  // value-type prefix first and fall back on failure or missing '->'.
  CompType parse_ctype_inner() {
    Lexer saved = lex_;
    bool have_arrow_domain = false;
    ValueType dom;
    try {
      dom = parse_vtype();
      have_arrow_domain = is_sym("->");
    } catch (const ParseError&) {
      have_arrow_domain = false;
    }
    if (have_arrow_domain) {
      lex_.next(); // '->'
      return CompType::arrow(std::move(dom), parse_ctype_inner());
    }
    lex_ = saved;
    CompType t = parse_catom();
    while (is_sym("&")) {
      lex_.next();
      t = CompType::with(std::move(t), parse_catom());
    }
    return t;
  }

 public:
  // -- terms ---------------------------------------------------------------

  // comp ::= appcomp ('to' x '.' comp)?
  TermPtr parse_comp() {
    TermPtr m = parse_app_comp();
    while (peek_ident("to")) {
      lex_.next();
      std::string x = expect_ident();
      expect_sym(".");
      TermPtr n = parse_comp();
      m = mk::to(std::move(m), std::move(x), std::move(n));
    }
    return m;
  }

  // appcomp ::= acomp avalue*
  TermPtr parse_app_comp() {
    TermPtr m = parse_acomp();
    while (starts_avalue()) {
      m = mk::app(std::move(m), parse_avalue());
    }
    return m;
  }

  TermPtr parse_acomp() {
    const Token& p = lex_.peek();
    if (p.kind == Token::Kind::Ident) {
      if (p.text == "return") {
        lex_.next();
        return mk::ret(parse_value());
      }
      if (p.text == "force") {
        lex_.next();
        return mk::force(parse_avalue());
      }
      if (p.text == "fst") {
        lex_.next();
        return mk::proj1(parse_acomp());
      }
      if (p.text == "snd") {
        lex_.next();
        return mk::proj2(parse_acomp());
      }
      if (p.text == "pm") {
        lex_.next();
        TermPtr v = parse_avalue();
        expect_keyword("as");
        expect_sym("(");
        std::string x = expect_ident();
        expect_sym(",");
        std::string y = expect_ident();
        expect_sym(")");
        expect_sym(".");
        TermPtr m = parse_comp();
        return mk::pmpair(std::move(v), std::move(x), std::move(y), std::move(m));
      }
      if (p.text == "case") {
        lex_.next();
        TermPtr v = parse_avalue();
        expect_keyword("of");
        expect_sym("{");
        expect_keyword("inl");
        std::string x = expect_ident();
        expect_sym(".");
        TermPtr m = parse_comp();
        expect_sym("|");
        expect_keyword("inr");
        std::string y = expect_ident();
        expect_sym(".");
        TermPtr n = parse_comp();
        expect_sym("}");
        return mk::case_of(std::move(v), std::move(x), std::move(m), std::move(y),
                           std::move(n));
      }
      if (p.text == "case0") {
        lex_.next();
        TermPtr v = parse_avalue();
        expect_sym(":");
        CompType b = parse_ctype();
        return mk::case0(std::move(v), std::move(b));
      }
      if (p.text == "let") {
        lex_.next();
        std::string x = expect_ident();
        expect_sym("=");
        TermPtr v = parse_value();
        expect_keyword("in");
        TermPtr m = parse_comp();
        return mk::letval(std::move(x), std::move(v), std::move(m));
      }
      if (sig_.find_op(p.text)) {
        Token optok = lex_.next();
        const OpDecl* decl = sig_.find_op(optok.text);
        std::optional<TermPtr> param;
        if (is_sym("[")) {
          lex_.next();
          param = parse_value();
          expect_sym("]");
        }
        std::vector<TermPtr> args;
        if (is_sym("()")) {
          lex_.next(); // nullary written with empty parens
        } else if (is_sym("(")) {
          lex_.next();
          args.push_back(parse_comp());
          while (is_sym(";")) {
            lex_.next();
            args.push_back(parse_comp());
          }
          expect_sym(")");
        }
        if (args.size() != decl->arity)
          throw ParseError("operation '" + optok.text + "' expects " +
                               std::to_string(decl->arity) + " arguments, got " +
                               std::to_string(args.size()),
                           optok.line, optok.col);
        return mk::op(optok.text, std::move(param), std::move(args));
      }
      // a bare identifier in computation position is a constant
      Token t = lex_.next();
      return mk::constant(t.text);
    }
    if (is_sym("\\")) {
      lex_.next();
      std::string x = expect_ident();
      std::optional<ValueType> a;
      if (is_sym(":")) {
        lex_.next();
        a = parse_vtype();
      }
      expect_sym(".");
      TermPtr m = parse_comp();
      return mk::lambda(std::move(x), std::move(a), std::move(m));
    }
    if (is_sym("<")) {
      lex_.next();
      TermPtr m = parse_comp();
      expect_sym(",");
      TermPtr n = parse_comp();
      expect_sym(">");
      return mk::cpair(std::move(m), std::move(n));
    }
    if (is_sym("(")) {
      lex_.next();
      TermPtr m = parse_comp();
      expect_sym(")");
      return m;
    }
    throw ParseError("expected a computation", p.line, p.col);
  }

  // value ::= 'inl' value | 'inr' value | 'thunk' acomp-atom | avalue
  TermPtr parse_value() {
    const Token& p = lex_.peek();
    if (p.kind == Token::Kind::Ident) {
      if (p.text == "inl") {
        lex_.next();
        return mk::inl(parse_value());
      }
      if (p.text == "inr") {
        lex_.next();
        return mk::inr(parse_value());
      }
      if (p.text == "thunk") {
        lex_.next();
        return mk::thunk(parse_thunk_body());
      }
    }
    return parse_avalue();
  }

  TermPtr parse_thunk_body() {
    if (is_sym("(")) {
      lex_.next();
      TermPtr m = parse_comp();
      expect_sym(")");
      return m;
    }
    return parse_acomp();
  }

  bool starts_avalue() {
    const Token& p = lex_.peek();
    if (is_sym("()") || is_sym("(")) return true;
    if (p.kind == Token::Kind::Ident) {
      // keywords never start a value argument
      static const char* kw[] = {"to", "of", "as", "in", "inl", "inr", "thunk",
                                 "return", "force", "fst", "snd", "pm", "case",
                                 "case0", "let"};
      for (auto* k : kw)
        if (p.text == k) return false;
      if (sig_.find_op(p.text)) return false;
      return true;
    }
    return false;
  }

  TermPtr parse_avalue() {
    const Token& p = lex_.peek();
    if (is_sym("()")) {
      lex_.next();
      return mk::unitval();
    }
    if (is_sym("(")) {
      lex_.next();
      TermPtr v = parse_value();
      if (is_sym(",")) {
        lex_.next();
        TermPtr w = parse_value();
        expect_sym(")");
        return mk::pair(std::move(v), std::move(w));
      }
      expect_sym(")");
      return v;
    }
    if (p.kind == Token::Kind::Ident) {
      Token t = lex_.next();
      return mk::var(t.text); // Var vs Const resolved by the typechecker
    }
    throw ParseError("expected a value", p.line, p.col);
  }

  void expect_end() {
    const Token& p = lex_.peek();
    if (p.kind != Token::Kind::End)
      throw ParseError("trailing input '" + p.text + "'", p.line, p.col);
  }

 private:
  bool is_sym(const std::string& s) const {
    return lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == s;
  }
  bool peek_ident(const std::string& s) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s;
  }
  void expect_sym(const std::string& s) {
    const Token& p = lex_.peek();
    if (!is_sym(s))
      throw ParseError("expected '" + s + "', got '" + p.text + "'", p.line, p.col);
    lex_.next();
  }
  void expect_keyword(const std::string& s) {
    const Token& p = lex_.peek();
    if (!peek_ident(s))
      throw ParseError("expected '" + s + "', got '" + p.text + "'", p.line, p.col);
    lex_.next();
  }
  std::string expect_ident() {
    const Token& p = lex_.peek();
    if (p.kind != Token::Kind::Ident)
      throw ParseError("expected an identifier, got '" + p.text + "'", p.line, p.col);
    return lex_.next().text;
  }

  Lexer lex_;
  const Signature& sig_;
};

} // namespace detail

inline TermPtr parse_program(std::string_view text, const Signature& sig) {
  detail::Parser p(text, sig);
  return p.parse_comp_top();
}

inline TermPtr parse_value_text(std::string_view text, const Signature& sig) {
  detail::Parser p(text, sig);
  TermPtr v = p.parse_value();
  p.expect_end();
  return v;
}

inline ValueType parse_vtype_text(std::string_view text, const Signature& sig) {
  detail::Parser p(text, sig);
  return p.parse_vtype_top();
}

inline CompType parse_ctype_text(std::string_view text, const Signature& sig) {
  detail::Parser p(text, sig);
  return p.parse_ctype_top();
}

// ---------------------------------------------------------------------------
// Alpha-equivalence via canonical de Bruijn conversion.

namespace detail {

inline int debruijn_index(const std::vector<std::string>& stack, const std::string& n) {
  for (std::size_t i = stack.size(); i-- > 0;) {
    if (stack[i] == n) return static_cast<int>(stack.size() - 1 - i);
  }
  return -1;
}

inline bool alpha_eq_rec(const Term& a, const Term& b, std::vector<std::string>& sa,
                         std::vector<std::string>& sb) {
  // A free identifier parses as Var but may denote a constant; treat Var and
  // Const interchangeably when unbound.
  auto ident_kind = [](const Term& t, const std::vector<std::string>& s) {
    if ((t.kind == Term::Kind::Var || t.kind == Term::Kind::Const)) {
      int i = t.kind == Term::Kind::Var ? debruijn_index(s, t.name) : -1;
      return std::pair<bool, int>(true, i);
    }
    return std::pair<bool, int>(false, 0);
  };
  auto [aid, ai] = ident_kind(a, sa);
  auto [bid, bi] = ident_kind(b, sb);
  if (aid || bid) {
    if (!(aid && bid)) return false;
    if (ai >= 0 || bi >= 0) return ai == bi;
    return a.name == b.name; // both free: constants
  }
  if (a.kind != b.kind) return false;
  if (a.kind == Term::Kind::Op && (a.name != b.name || a.has_param != b.has_param))
    return false;
  if (a.vannot.has_value() != b.vannot.has_value()) return false;
  if (a.vannot && !(*a.vannot == *b.vannot)) return false;
  if (a.cannot_.has_value() != b.cannot_.has_value()) return false;
  if (a.cannot_ && !(*a.cannot_ == *b.cannot_)) return false;
  if (a.kids.size() != b.kids.size() || a.binders.size() != b.binders.size())
    return false;

  // which child indices are under which binders, per term kind
  auto child_binders = [](const Term& t, std::size_t i) -> int {
    // returns number of binders pushed for child i (binders are pushed in
    // declaration order)
    switch (t.kind) {
      case Term::Kind::To: return i == 1 ? 1 : 0;
      case Term::Kind::Lambda: return 1;
      case Term::Kind::PmPair: return i == 1 ? 2 : 0;
      case Term::Kind::Case: return i >= 1 ? 1 : 0;
      case Term::Kind::LetVal: return i == 1 ? 1 : 0;
      default: return 0;
    }
  };

  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    int nb = child_binders(a, i);
    std::size_t pushed = 0;
    if (nb == 1) {
      // Case has two binders but each branch sees exactly one
      std::size_t bidx = (a.kind == Term::Kind::Case && i == 2) ? 1 : 0;
      sa.push_back(a.binders[bidx]);
      sb.push_back(b.binders[bidx == 1 ? 1 : 0]);
      // names come from each term separately
      sb.back() = b.binders[(a.kind == Term::Kind::Case && i == 2) ? 1 : 0];
      pushed = 1;
    } else if (nb == 2) {
      sa.push_back(a.binders[0]);
      sa.push_back(a.binders[1]);
      sb.push_back(b.binders[0]);
      sb.push_back(b.binders[1]);
      pushed = 2;
    }
    bool ok = alpha_eq_rec(*a.kids[i], *b.kids[i], sa, sb);
    for (std::size_t k = 0; k < pushed; ++k) {
      sa.pop_back();
      sb.pop_back();
    }
    if (!ok) return false;
  }
  return true;
}

} // namespace detail

inline bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::string> sa, sb;
  return detail::alpha_eq_rec(a, b, sa, sb);
}

inline bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  return alpha_equal(*a, *b);
}

} // namespace cbpv
