#include "modex/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace modex {

ExprPtr ProblemSpec::goal() const {
  for (const auto& [name, e] : exprs)
    if (name == goal_name) return e;
  if (interp.defs.count(goal_name)) return atomic(goal_name);
  throw std::invalid_argument("goal does not resolve: " + goal_name);
}

namespace {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
        continue;
      }
      break;
    }
    if (pos_ >= text_.size()) {
      tok_ = {Token::Kind::End, "", line_, col_};
      return;
    }
    int line = line_, col = col_;
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      tok_ = {Token::Kind::Ident, text_.substr(start, pos_ - start), line, col};
      return;
    }
    for (const char* two : {":=", "==", "!="}) {
      if (text_.compare(pos_, 2, two) == 0) {
        pos_ += 2;
        col_ += 2;
        tok_ = {Token::Kind::Punct, two, line, col};
        return;
      }
    }
    static const std::string singles = ";,/{}()[]*+-|!&=";
    if (singles.find(c) != std::string::npos) {
      ++pos_;
      ++col_;
      tok_ = {Token::Kind::Punct, std::string(1, c), line, col};
      return;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_{Token::Kind::End, "", 1, 1};
};

struct RawModule {
  enum class Kind { Clause, Table, Builtin };
  Kind kind;
  Token name_tok;
  std::vector<std::string> voc;
  // clause body: literals as (atom text, positive)
  std::vector<std::vector<std::pair<std::string, bool>>> clauses;
  // table body: rows of (atom text, value)
  std::vector<std::vector<std::pair<std::string, bool>>> rows;
  std::string builtin_kind;
  std::vector<std::string> builtin_args;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ProblemSpec parse() {
    while (lex_.peek().kind != Token::Kind::End) statement();
    return assemble();
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  Token expect_ident(const std::string& what) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident) fail(t, "expected " + what);
    return t;
  }

  void expect_punct(const std::string& p) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Punct || t.text != p)
      fail(t, "expected '" + p + "'");
  }

  bool try_punct(const std::string& p) {
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p) {
      lex_.next();
      return true;
    }
    return false;
  }

  bool peek_ident(const std::string& word) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == word;
  }

  void statement() {
    Token t = expect_ident("a statement keyword");
    if (t.text == "domain") {
      do {
        domain_.push_back(expect_ident("a domain element").text);
      } while (lex_.peek().kind == Token::Kind::Ident);
      expect_punct(";");
    } else if (t.text == "vocab") {
      do {
        Token name = expect_ident("a predicate name");
        expect_punct("/");
        Token arity = expect_ident("an arity");
        for (char c : arity.text)
          if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(arity, "arity must be a number");
        preds_.push_back({name.text, std::stoi(arity.text)});
      } while (try_punct(","));
      expect_punct(";");
    } else if (t.text == "module") {
      modules_.push_back(parse_module());
    } else if (t.text == "expr") {
      Token name = expect_ident("an expression name");
      expect_punct(":=");
      ExprPtr e = parse_expr();
      expect_punct(";");
      exprs_.emplace_back(name, e);
    } else if (t.text == "solve") {
      Token name = expect_ident("a goal name");
      if (!goal_.text.empty()) fail(name, "duplicate solve statement");
      goal_ = name;
      expect_punct(";");
    } else {
      fail(t, "unknown statement '" + t.text + "'");
    }
  }

  std::string parse_atom_text() {
    Token name = expect_ident("an atom");
    std::string out = name.text;
    if (try_punct("(")) {
      out += "(";
      bool first = true;
      while (!try_punct(")")) {
        if (!first) expect_punct(",");
        if (!first) out += ",";
        out += expect_ident("a domain element").text;
        first = false;
      }
      out += ")";
    }
    return out;
  }

  RawModule parse_module() {
    RawModule m;
    m.name_tok = expect_ident("a module name");
    expect_punct(":=");
    Token kind = expect_ident("a module body (clause, table or builtin)");
    if (kind.text == "clause") {
      m.kind = RawModule::Kind::Clause;
      expect_punct("{");
      if (!try_punct("}")) {
        do {
          std::vector<std::pair<std::string, bool>> clause;
          do {
            bool positive = !try_punct("-");
            clause.emplace_back(parse_atom_text(), positive);
          } while (try_punct("|"));
          m.clauses.push_back(std::move(clause));
        } while (try_punct(";"));
        expect_punct("}");
      }
    } else if (kind.text == "table") {
      m.kind = RawModule::Kind::Table;
      expect_punct("{");
      if (!try_punct("}")) {
        do {
          std::vector<std::pair<std::string, bool>> row;
          while (lex_.peek().kind == Token::Kind::Ident) {
            std::string atom = parse_atom_text();
            expect_punct("=");
            Token v = expect_ident("t or f");
            if (v.text != "t" && v.text != "f") fail(v, "expected t or f");
            row.emplace_back(std::move(atom), v.text == "t");
          }
          m.rows.push_back(std::move(row));
        } while (try_punct(";"));
        expect_punct("}");
      }
    } else if (kind.text == "builtin") {
      m.kind = RawModule::Kind::Builtin;
      Token bk = expect_ident("a builtin kind");
      m.builtin_kind = bk.text;
      expect_punct("(");
      do {
        m.builtin_args.push_back(expect_ident("a predicate name").text);
      } while (try_punct(","));
      expect_punct(")");
    } else {
      fail(kind, "expected clause, table or builtin");
    }
    Token w = expect_ident("with");
    if (w.text != "with") fail(w, "expected 'with voc'");
    Token v = expect_ident("voc");
    if (v.text != "voc") fail(v, "expected 'voc'");
    expect_punct("{");
    do {
      m.voc.push_back(expect_ident("a predicate name").text);
    } while (try_punct(","));
    expect_punct("}");
    expect_punct(";");
    return m;
  }

  ExprPtr parse_expr() { return parse_sum(); }

  ExprPtr parse_sum() {
    ExprPtr e = parse_prod();
    while (try_punct("+")) e = plus(e, parse_prod());
    return e;
  }

  ExprPtr parse_prod() {
    ExprPtr e = parse_unary();
    while (try_punct("*")) e = product(e, parse_unary());
    return e;
  }

  ExprPtr parse_unary() {
    if (try_punct("-")) return complement(parse_unary());
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (try_punct("(")) {
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    Token t = expect_ident("an expression");
    if (t.text == "bot") return bot();
    if (t.text == "project") {
      expect_punct("{");
      std::vector<std::string> delta;
      do {
        delta.push_back(expect_ident("a predicate name").text);
      } while (try_punct(","));
      expect_punct("}");
      expect_punct("(");
      ExprPtr e = parse_expr();
      expect_punct(")");
      return project(std::move(delta), e);
    }
    if (t.text == "select") {
      if (try_punct("[")) {
        ThetaFormula theta = parse_theta();
        expect_punct("]");
        expect_punct("(");
        ExprPtr e = parse_expr();
        expect_punct(")");
        return select_theta(std::move(theta), e);
      }
      Token q = expect_ident("a predicate name");
      expect_punct("==");
      Token r = expect_ident("a predicate name");
      expect_punct("(");
      ExprPtr e = parse_expr();
      expect_punct(")");
      return select(q.text, r.text, e);
    }
    return atomic(t.text);  // expression or module reference, resolved later
  }

  ThetaFormula parse_theta() { return parse_theta_or(); }

  ThetaFormula parse_theta_or() {
    ThetaFormula t = parse_theta_and();
    while (try_punct("|")) t = ThetaFormula::disj(t, parse_theta_and());
    return t;
  }

  ThetaFormula parse_theta_and() {
    ThetaFormula t = parse_theta_unary();
    while (try_punct("&")) t = ThetaFormula::conj(t, parse_theta_unary());
    return t;
  }

  ThetaFormula parse_theta_unary() {
    if (try_punct("!")) return ThetaFormula::neg(parse_theta_unary());
    if (try_punct("(")) {
      ThetaFormula t = parse_theta();
      expect_punct(")");
      return t;
    }
    Token q = expect_ident("a predicate name");
    Token op = lex_.next();
    if (op.kind != Token::Kind::Punct || (op.text != "==" && op.text != "!="))
      fail(op, "expected == or !=");
    Token r = expect_ident("a predicate name");
    return op.text == "==" ? ThetaFormula::eq(q.text, r.text)
                           : ThetaFormula::neq(q.text, r.text);
  }

  // -- assembly -------------------------------------------------------------

  int resolve_atom(const std::string& text, const Token& where) {
    auto atom = sig_->parse_atom(text);
    if (!atom) fail(where, "unknown atom '" + text + "'");
    return *atom;
  }

  /// Replaces Atomic references to named expressions by their definitions.
  ExprPtr resolve_refs(const ExprPtr& e,
                       const std::vector<std::pair<std::string, ExprPtr>>& resolved,
                       const Token& where) {
    switch (e->kind) {
      case ModuleExpr::Kind::Bot: return e;
      case ModuleExpr::Kind::Atomic: {
        for (const auto& [n, def] : resolved)
          if (n == e->name) return def;
        if (!interp_.defs.count(e->name))
          fail(where, "unknown module or expression '" + e->name + "'");
        return e;
      }
      case ModuleExpr::Kind::Product:
        return product(resolve_refs(e->lhs, resolved, where),
                       resolve_refs(e->rhs, resolved, where));
      case ModuleExpr::Kind::Plus:
        return plus(resolve_refs(e->lhs, resolved, where),
                    resolve_refs(e->rhs, resolved, where));
      case ModuleExpr::Kind::Complement:
        return complement(resolve_refs(e->lhs, resolved, where));
      case ModuleExpr::Kind::Project:
        return project(e->delta, resolve_refs(e->lhs, resolved, where));
      case ModuleExpr::Kind::Select:
        return select(e->sel_q, e->sel_r, resolve_refs(e->lhs, resolved, where));
      case ModuleExpr::Kind::SelectTheta:
        return select_theta(e->theta, resolve_refs(e->lhs, resolved, where));
    }
    throw std::logic_error("unreachable");
  }

  ProblemSpec assemble() {
    ProblemSpec spec;
    if (domain_.empty()) throw ParseError(1, 1, "missing domain declaration");
    sig_ = Signature::make(Domain(domain_), preds_);
    spec.sig = sig_;
    interp_.sig = sig_;

    for (const auto& m : modules_) {
      if (interp_.defs.count(m.name_tok.text))
        fail(m.name_tok, "duplicate module '" + m.name_tok.text + "'");
      SymbolSet voc(sig_);
      for (const auto& n : m.voc) {
        int p = sig_->pred_index(n);
        if (p < 0) fail(m.name_tok, "unknown predicate '" + n + "' in voc");
        voc.add(p);
      }
      AtomicModuleDef def{voc, ClauseBody{}};
      switch (m.kind) {
        case RawModule::Kind::Clause: {
          std::vector<Clause> clauses;
          for (const auto& raw : m.clauses) {
            std::vector<Literal> lits;
            for (const auto& [atom, pos] : raw)
              lits.push_back({resolve_atom(atom, m.name_tok), pos});
            auto c = Clause::make(std::move(lits));
            if (!c) {
              spec.warnings.push_back("module " + m.name_tok.text +
                                      ": dropped tautological clause");
              continue;
            }
            clauses.push_back(std::move(*c));
          }
          def = make_clause_module(sig_, voc, std::move(clauses));
          break;
        }
        case RawModule::Kind::Table: {
          std::vector<PartialStructure> rows;
          for (const auto& raw : m.rows) {
            PartialStructure row = PartialStructure::bottom(sig_);
            for (const auto& [atom, val] : raw)
              row.set(resolve_atom(atom, m.name_tok),
                      val ? TruthValue::True : TruthValue::False);
            // Unassigned voc atoms default to false.
            for (int p : voc.members())
              for (int a = sig_->pred_begin(p); a < sig_->pred_end(p); ++a)
                if (row.value(a) == TruthValue::Unknown) row.set(a, TruthValue::False);
            rows.push_back(std::move(row));
          }
          def = make_table_module(sig_, voc, std::move(rows));
          break;
        }
        case RawModule::Kind::Builtin: {
          try {
            if (m.builtin_kind == "transitive_closure" && m.builtin_args.size() == 2)
              def = make_transitive_closure(sig_, voc, m.builtin_args[0], m.builtin_args[1]);
            else if (m.builtin_kind == "full_relation" && m.builtin_args.size() == 1)
              def = make_full_relation(sig_, voc, m.builtin_args[0]);
            else if (m.builtin_kind == "bounds_leq" && m.builtin_args.size() == 2)
              def = make_bounds_leq(sig_, voc, m.builtin_args[0], m.builtin_args[1]);
            else
              fail(m.name_tok, "unknown builtin '" + m.builtin_kind + "'");
          } catch (const std::invalid_argument& e) {
            fail(m.name_tok, e.what());
          }
          break;
        }
      }
      interp_.defs.emplace(m.name_tok.text, std::move(def));
    }
    spec.interp = interp_;

    std::vector<std::pair<std::string, ExprPtr>> resolved;
    for (const auto& [name_tok, raw] : exprs_) {
      for (const auto& [n, unused] : resolved) {
        (void)unused;
        if (n == name_tok.text) fail(name_tok, "duplicate expression '" + n + "'");
      }
      if (interp_.defs.count(name_tok.text))
        fail(name_tok, "name '" + name_tok.text + "' already names a module");
      ExprPtr e = resolve_refs(raw, resolved, name_tok);
      try {
        validate_expr(e, interp_);
      } catch (const std::invalid_argument& err) {
        fail(name_tok, err.what());
      }
      resolved.emplace_back(name_tok.text, e);
    }
    spec.exprs = resolved;

    if (goal_.text.empty()) throw ParseError(1, 1, "missing solve statement");
    spec.goal_name = goal_.text;
    try {
      spec.goal();
    } catch (const std::invalid_argument& err) {
      fail(goal_, err.what());
    }
    return spec;
  }

  Lexer lex_;
  std::vector<std::string> domain_;
  std::vector<Predicate> preds_;
  std::vector<RawModule> modules_;
  std::vector<std::pair<Token, ExprPtr>> exprs_;
  Token goal_{Token::Kind::Ident, "", 0, 0};
  SignaturePtr sig_;
  ModuleInterpretation interp_;
};

}  // namespace

ProblemSpec parse_problem(const std::string& text) { return Parser(text).parse(); }

namespace {

void print_module(std::ostream& os, const std::string& name, const AtomicModuleDef& def,
                  const SignaturePtr& sig) {
  os << "module " << name << " := ";
  if (std::holds_alternative<ClauseBody>(def.body)) {
    os << "clause { ";
    const auto& clauses = std::get<ClauseBody>(def.body).clauses;
    for (size_t i = 0; i < clauses.size(); ++i) {
      if (i) os << " ; ";
      const auto& lits = clauses[i].lits();
      for (size_t k = 0; k < lits.size(); ++k) {
        if (k) os << " | ";
        if (!lits[k].positive) os << "-";
        os << sig->atom_name(lits[k].atom);
      }
    }
    os << " }";
  } else if (std::holds_alternative<TableBody>(def.body)) {
    const auto& t = std::get<TableBody>(def.body);
    os << "table { ";
    for (size_t i = 0; i < t.rows.size(); ++i) {
      if (i) os << " ; ";
      for (size_t k = 0; k < t.voc_atoms.size(); ++k) {
        if (k) os << " ";
        os << sig->atom_name(t.voc_atoms[k]) << "=" << (t.rows[i][k] ? 't' : 'f');
      }
    }
    os << " }";
  } else {
    const auto& b = std::get<BuiltinBody>(def.body);
    switch (b.kind) {
      case BuiltinBody::Kind::TransitiveClosure:
        os << "builtin transitive_closure(" << sig->pred(b.preds[0]).name << ", "
           << sig->pred(b.preds[1]).name << ")";
        break;
      case BuiltinBody::Kind::FullRelation:
        os << "builtin full_relation(" << sig->pred(b.preds[0]).name << ")";
        break;
      case BuiltinBody::Kind::BoundsLeq:
        os << "builtin bounds_leq(" << sig->pred(b.preds[0]).name << ", "
           << sig->pred(b.preds[1]).name << ")";
        break;
    }
  }
  os << " with voc {";
  auto names = def.voc.names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) os << ", ";
    os << names[i];
  }
  os << "} ;\n";
}

}  // namespace

std::string print_problem(const ProblemSpec& spec) {
  std::ostringstream os;
  os << "domain";
  for (const auto& e : spec.sig->domain().elements()) os << " " << e;
  os << " ;\n";
  if (spec.sig->pred_count() > 0) {
    os << "vocab ";
    for (int p = 0; p < spec.sig->pred_count(); ++p) {
      if (p) os << ", ";
      os << spec.sig->pred(p).name << "/" << spec.sig->pred(p).arity;
    }
    os << " ;\n";
  }
  for (const auto& [name, def] : spec.interp.defs)
    print_module(os, name, def, spec.sig);
  for (const auto& [name, e] : spec.exprs)
    os << "expr " << name << " := " << e->to_string() << " ;\n";
  os << "solve " << spec.goal_name << " ;\n";
  return os.str();
}

}  // namespace modex
