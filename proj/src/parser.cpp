#include "slp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

namespace slp {

namespace {

enum class Tok {
  Ident,
  Number,
  Punct,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw = {
      "MODEL",    "SETS",      "CONSTANTS", "AXIOMS",  "VARIABLES",   "INVARIANTS", "INVARIANT",
      "THEOREM",  "INITIALISATION", "ENVIRONMENT", "PROCESS", "RELY", "GUARANTEE", "BODY",
      "IF",       "THEN",      "ELSIF",     "ELSE",    "END",         "WHILE",      "VARIANT",
      "BEGIN",    "ASSERT",    "STOP",      "MACHINE", "EVENT",       "WHEN",       "CHECK",
      "REFMAP",   "BOUND",     "SET",       "CONST",   "ATOMIC",      "REFINES",    "WITH",
      "or",       "not",       "mod",       "bool",    "TRUE",        "FALSE",      "INT",
      "NAT",      "NAT1",      "BOOL"};
  return kw;
}

// Longest match first.
const std::vector<std::string>& puncts() {
  static const std::vector<std::string> p = {
      "&&&", "<=>", "|->", ":=", "::", ":|", "/=", "/:", "/\\", "\\/", "\\\\", "<=", "<:", ">=",
      "=>",  "||",  "..",  "->", ":",  "/",  "=",  "<",  ">",   "&",   "(",    ")",  "{",  "}",
      ",",   ";",   ".",   "'",  "+",  "-",  "*",  "!",  "#",   "\\"};
  return p;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span.begin = pos_;
      if (pos_.offset >= text_.size()) {
        t.kind = Tok::End;
        t.span.end = pos_;
        out.push_back(std::move(t));
        return out;
      }
      char c = text_[pos_.offset];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_.offset;
        while (pos_.offset < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_.offset])) ||
                text_[pos_.offset] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(start, pos_.offset - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_.offset;
        while (pos_.offset < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_.offset])))
          advance();
        t.kind = Tok::Number;
        t.text = std::string(text_.substr(start, pos_.offset - start));
      } else {
        bool matched = false;
        for (const auto& p : puncts()) {
          if (text_.substr(pos_.offset, p.size()) == p) {
            for (std::size_t i = 0; i < p.size(); ++i) advance();
            t.kind = Tok::Punct;
            t.text = p;
            matched = true;
            break;
          }
        }
        if (!matched) {
          SourceSpan sp{pos_, pos_};
          advance();
          sp.end = pos_;
          throw ParseError("unexpected character '" + std::string(1, c) + "'", sp, {});
        }
      }
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_.offset] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++pos_.offset;
  }

  void skip_space() {
    while (pos_.offset < text_.size()) {
      char c = text_[pos_.offset];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_.offset + 1 < text_.size() && text_[pos_.offset + 1] == '/') {
        while (pos_.offset < text_.size() && text_[pos_.offset] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  SourcePos pos_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  SlpModel model();
  ExprPtr predicate_entry() {
    auto e = pred();
    expect_end();
    return e;
  }
  StmtPtr block_entry(const std::set<std::string>& declared) {
    scope_.push_back(declared);
    auto b = block();
    expect_end();
    return b;
  }

 private:
  // -- token helpers -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_punct(const char* p, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::Punct && t.text == p;
  }
  bool at_kw(const char* k, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::Ident && t.text == k;
  }
  bool at_ident(std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::Ident && !keywords().count(t.text);
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    last_end_ = t.span.end;
    return t;
  }
  bool accept_punct(const char* p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }
  bool accept_kw(const char* k) {
    if (!at_kw(k)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    throw ParseError(msg, t.span, std::move(expected));
  }

  void expect_punct(const char* p) {
    if (!accept_punct(p)) fail({std::string("'") + p + "'"});
  }
  void expect_kw(const char* k) {
    if (!accept_kw(k)) fail({k});
  }
  std::string expect_ident(const char* what = "identifier") {
    if (!at_ident()) fail({what});
    return next().text;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  SourceSpan span_from(SourcePos begin) const { return SourceSpan{begin, last_end_}; }
  SourcePos here() const { return peek().span.begin; }

  bool declared(const std::string& n) const {
    return std::any_of(scope_.begin(), scope_.end(),
                       [&](const std::set<std::string>& s) { return s.count(n) > 0; });
  }

  // -- expressions ----------------------------------------------------------
  ExprPtr pred() { return iff(); }

  ExprPtr iff() {
    auto b = here();
    auto lhs = implies();
    while (accept_punct("<=>")) lhs = ex::binary(Op::Iff, lhs, implies(), span_from(b));
    return lhs;
  }

  ExprPtr implies() {
    auto b = here();
    auto lhs = disj();
    if (accept_punct("=>")) return ex::binary(Op::Implies, lhs, implies(), span_from(b));
    return lhs;
  }

  ExprPtr disj() {
    auto b = here();
    auto lhs = conj();
    while (accept_kw("or")) lhs = ex::binary(Op::Or, lhs, conj(), span_from(b));
    return lhs;
  }

  ExprPtr conj() {
    auto b = here();
    auto lhs = negation();
    while (at_punct("&")) {
      next();
      lhs = ex::binary(Op::And, lhs, negation(), span_from(b));
    }
    return lhs;
  }

  ExprPtr negation() {
    auto b = here();
    if (accept_kw("not")) return ex::unary(Op::Not, negation(), span_from(b));
    return comparison();
  }

  ExprPtr comparison() {
    auto b = here();
    auto lhs = maplet();
    static const std::vector<std::pair<const char*, Op>> ops = {
        {"=", Op::Eq},  {"/=", Op::Neq}, {"<", Op::Lt},    {"<=", Op::Le},    {">", Op::Gt},
        {">=", Op::Ge}, {":", Op::In},   {"/:", Op::NotIn}, {"<:", Op::Subset}};
    for (const auto& [p, op] : ops) {
      if (at_punct(p)) {
        next();
        return ex::binary(op, lhs, maplet(), span_from(b));
      }
    }
    return lhs;
  }

  ExprPtr maplet() {
    auto b = here();
    auto lhs = setop();
    while (accept_punct("|->")) lhs = ex::binary(Op::Maplet, lhs, setop(), span_from(b));
    return lhs;
  }

  ExprPtr setop() {
    auto b = here();
    auto lhs = range();
    for (;;) {
      Op op;
      if (at_punct("\\/")) op = Op::Union;
      else if (at_punct("/\\")) op = Op::Inter;
      else if (at_punct("\\\\") || at_punct("\\")) op = Op::Diff;
      else break;
      next();
      lhs = ex::binary(op, lhs, range(), span_from(b));
    }
    return lhs;
  }

  ExprPtr range() {
    auto b = here();
    auto lhs = additive();
    if (accept_punct("..")) return ex::binary(Op::Range, lhs, additive(), span_from(b));
    return lhs;
  }

  ExprPtr additive() {
    auto b = here();
    auto lhs = multiplicative();
    for (;;) {
      if (accept_punct("+")) lhs = ex::binary(Op::Add, lhs, multiplicative(), span_from(b));
      else if (accept_punct("-")) lhs = ex::binary(Op::Sub, lhs, multiplicative(), span_from(b));
      else return lhs;
    }
  }

  ExprPtr multiplicative() {
    auto b = here();
    auto lhs = unary();
    for (;;) {
      if (accept_punct("*")) lhs = ex::binary(Op::Mul, lhs, unary(), span_from(b));
      else if (accept_punct("/")) lhs = ex::binary(Op::Div, lhs, unary(), span_from(b));
      else if (accept_kw("mod")) lhs = ex::binary(Op::Mod, lhs, unary(), span_from(b));
      else return lhs;
    }
  }

  ExprPtr unary() {
    auto b = here();
    if (accept_punct("-")) {
      if (peek().kind == Tok::Number) {
        auto lit = number();
        return ex::integer(-lit->number, span_from(b));
      }
      return ex::unary(Op::Neg, unary(), span_from(b));
    }
    return postfix();
  }

  ExprPtr postfix() {
    auto b = here();
    auto e = atom();
    while (at_punct("(")) {
      next();
      auto arg = pred();
      expect_punct(")");
      e = ex::binary(Op::Apply, e, arg, span_from(b));
    }
    return e;
  }

  ExprPtr number() {
    auto b = here();
    const auto& t = next();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) throw ParseError("integer literal out of range", t.span, {});
    return ex::integer(v, span_from(b));
  }

  ExprPtr atom() {
    auto b = here();
    const auto& t = peek();
    if (t.kind == Tok::Number) return number();
    if (accept_kw("TRUE")) return ex::boolean(true, span_from(b));
    if (accept_kw("FALSE")) return ex::boolean(false, span_from(b));
    if (accept_kw("INT")) return ex::nary(Op::BaseInt, {}, span_from(b));
    if (accept_kw("NAT1")) return ex::nary(Op::BaseNat1, {}, span_from(b));
    if (accept_kw("NAT")) return ex::nary(Op::BaseNat, {}, span_from(b));
    if (accept_kw("BOOL")) return ex::nary(Op::BaseBool, {}, span_from(b));
    if (accept_kw("bool")) {
      expect_punct("(");
      auto p = pred();
      expect_punct(")");
      return ex::unary(Op::BoolOf, p, span_from(b));
    }
    if (at_punct("!") || at_punct("#")) {
      Op op = at_punct("!") ? Op::Forall : Op::Exists;
      next();
      std::vector<std::string> vars{expect_ident("bound variable")};
      while (accept_punct(",")) vars.push_back(expect_ident("bound variable"));
      expect_punct(".");
      expect_punct("(");
      scope_.push_back(std::set<std::string>(vars.begin(), vars.end()));
      auto body = pred();
      scope_.pop_back();
      expect_punct(")");
      return ex::quant(op, std::move(vars), body, span_from(b));
    }
    if (accept_punct("(")) {
      auto e = pred();
      expect_punct(")");
      return e;
    }
    if (accept_punct("{")) {
      if (accept_punct("}")) return ex::nary(Op::EmptySet, {}, span_from(b));
      std::vector<ExprPtr> elems{maplet()};
      while (accept_punct(",")) elems.push_back(maplet());
      expect_punct("}");
      return ex::nary(Op::SetLit, std::move(elems), span_from(b));
    }
    if (at_ident()) {
      std::string n = next().text;
      bool primed = accept_punct("'");
      return ex::name(std::move(n), primed, span_from(b));
    }
    fail({"expression"});
  }

  // -- statements -----------------------------------------------------------
  StmtPtr block() {
    auto b = here();
    std::vector<StmtPtr> items{action()};
    while (accept_punct(";")) items.push_back(action());
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Seq;
    s->children = std::move(items);
    s->span = span_from(b);
    return s;
  }

  bool at_label() const { return at_ident() && at_punct(":", 1); }

  StmtPtr action() {
    auto b = here();
    std::optional<std::string> label;
    // A label on a substitution belongs to its first part (see simple()).
    bool label_here = at_label() && !(peek(2).kind == Tok::Ident && !keywords().count(peek(2).text));
    if (label_here) {
      label = next().text;
      next();
    }
    auto s = std::const_pointer_cast<Stmt>(statement());
    if (label) s->label = label;
    if (accept_kw("ATOMIC")) s->annotations.atomic = true;
    if (accept_kw("REFINES")) {
      s->annotations.refines.push_back(expect_ident("event label"));
      while (accept_punct(",")) s->annotations.refines.push_back(expect_ident("event label"));
    }
    if (accept_kw("WITH")) s->annotations.with = pred();
    s->span = span_from(b);
    return s;
  }

  std::shared_ptr<Stmt> statement() {
    auto b = here();
    if (at_kw("IF")) return if_stmt();
    if (at_kw("WHILE")) return while_stmt();
    if (at_kw("BEGIN")) return begin_stmt();
    if (at_kw("ASSERT")) return assert_stmt();
    if (accept_kw("STOP")) {
      auto s = std::make_shared<Stmt>();
      s->kind = Stmt::Kind::Stop;
      s->span = span_from(b);
      return s;
    }
    if (at_ident()) return substitution();
    fail({"statement"});
  }

  std::shared_ptr<Stmt> substitution() {
    auto b = here();
    std::vector<StmtPtr> parts{simple()};
    while (accept_punct("||")) parts.push_back(simple());
    if (parts.size() == 1) return std::const_pointer_cast<Stmt>(parts.front());
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Parallel;
    s->children = std::move(parts);
    s->span = span_from(b);
    return s;
  }

  StmtPtr simple() {
    auto b = here();
    auto s = std::make_shared<Stmt>();
    if (at_label()) {
      s->label = next().text;
      next();
    }
    s->targets.push_back(expect_ident("assignment target"));
    while (accept_punct(",")) s->targets.push_back(expect_ident("assignment target"));
    if (s->targets.size() == 1 && accept_punct(":=")) {
      s->kind = Stmt::Kind::Assign;
      s->expr = pred();
    } else if (s->targets.size() == 1 && accept_punct("::")) {
      s->kind = Stmt::Kind::BecomesIn;
      s->expr = pred();
    } else if (accept_punct(":|")) {
      s->kind = Stmt::Kind::BecomesSuchThat;
      s->expr = pred();
    } else {
      fail(s->targets.size() == 1 ? std::vector<std::string>{"':='", "'::'", "':|'"}
                                  : std::vector<std::string>{"':|'"});
    }
    s->span = span_from(b);
    return s;
  }

  std::shared_ptr<Stmt> if_stmt() {
    auto b = here();
    expect_kw("IF");
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::If;
    s->guards.push_back(pred());
    expect_kw("THEN");
    s->children.push_back(block());
    while (accept_kw("ELSIF")) {
      s->guards.push_back(pred());
      expect_kw("THEN");
      s->children.push_back(block());
    }
    if (accept_kw("ELSE")) {
      s->has_else = true;
      s->children.push_back(block());
    }
    expect_kw("END");
    s->span = span_from(b);
    return s;
  }

  std::shared_ptr<Stmt> while_stmt() {
    auto b = here();
    expect_kw("WHILE");
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::While;
    s->expr = pred();
    if (accept_kw("INVARIANT") || accept_kw("INVARIANTS")) s->invariants = invariant_items();
    if (!accept_kw("VARIANT")) fail({"VARIANT"});
    s->variant = pred();
    expect_kw("THEN");
    s->children.push_back(block());
    expect_kw("END");
    s->span = span_from(b);
    return s;
  }

  std::shared_ptr<Stmt> begin_stmt() {
    auto b = here();
    expect_kw("BEGIN");
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Begin;
    bool decls = false;
    if (accept_kw("VARIABLES")) {
      s->locals = decl_list();
      decls = true;
    }
    std::set<std::string> names;
    for (const auto& l : s->locals) names.insert(l.name);
    scope_.push_back(names);
    if (accept_kw("INVARIANTS") || accept_kw("INVARIANT")) {
      s->invariants = invariant_items();
      decls = true;
    }
    if (decls) expect_kw("BODY");
    else accept_kw("BODY");
    s->children.push_back(block());
    scope_.pop_back();
    expect_kw("END");
    s->span = span_from(b);
    return s;
  }

  std::shared_ptr<Stmt> assert_stmt() {
    auto b = here();
    expect_kw("ASSERT");
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Assert;
    do {
      auto cb = here();
      LabeledPredicate lp;
      if (at_label() && !declared(peek().text)) {
        lp.label = next().text;
        next();
      }
      lp.pred = pred();
      lp.span = span_from(cb);
      s->conjuncts.push_back(std::move(lp));
    } while (accept_punct("&&&"));
    s->span = span_from(b);
    return s;
  }

  // -- declarations ---------------------------------------------------------
  std::vector<VarDecl> decl_list() {
    std::vector<VarDecl> out;
    do {
      auto b = here();
      auto n = expect_ident("name");
      out.push_back({std::move(n), span_from(b)});
    } while (accept_punct(","));
    return out;
  }

  bool at_invariant_item() const { return at_kw("THEOREM") || at_label(); }

  std::vector<InvariantDef> invariant_items() {
    std::vector<InvariantDef> out;
    while (at_invariant_item()) {
      auto b = here();
      InvariantDef d;
      if (accept_kw("THEOREM")) d.kind = InvariantDef::Kind::Theorem;
      d.label = expect_ident("label");
      expect_punct(":");
      d.pred = pred();
      accept_punct(";");
      d.span = span_from(b);
      out.push_back(std::move(d));
    }
    return out;
  }

  LabeledPredicate labeled_item() {
    auto b = here();
    LabeledPredicate lp;
    lp.label = expect_ident("label");
    expect_punct(":");
    lp.pred = pred();
    accept_punct(";");
    lp.span = span_from(b);
    return lp;
  }

  void rely_guarantee(std::vector<LabeledPredicate>& relies, std::vector<LabeledPredicate>& guars) {
    while (at_kw("RELY") || at_kw("GUARANTEE")) {
      bool rely = at_kw("RELY");
      next();
      auto item = labeled_item();
      (rely ? relies : guars).push_back(std::move(item));
    }
  }

  EnvironmentDef environment() {
    auto b = here();
    expect_kw("ENVIRONMENT");
    EnvironmentDef env;
    env.label = expect_ident("environment label");
    rely_guarantee(env.relies, env.guarantees);
    expect_kw("END");
    env.span = span_from(b);
    return env;
  }

  ProcessDef process() {
    auto b = here();
    expect_kw("PROCESS");
    ProcessDef p;
    p.label = expect_ident("process label");
    if (accept_kw("VARIABLES")) p.locals = decl_list();
    std::set<std::string> names;
    for (const auto& l : p.locals) names.insert(l.name);
    scope_.push_back(names);
    rely_guarantee(p.relies, p.guarantees);
    if (accept_kw("INVARIANTS") || accept_kw("INVARIANT")) p.invariants = invariant_items();
    if (accept_kw("BODY")) p.body = block();
    scope_.pop_back();
    if (!at_kw("END")) {
      if (p.body) fail({"';'", "END"});
      fail({"RELY", "GUARANTEE", "INVARIANTS", "BODY", "END"});
    }
    next();
    p.span = span_from(b);
    return p;
  }

  EventBMachine machine() {
    auto b = here();
    expect_kw("MACHINE");
    EventBMachine m;
    m.name = expect_ident("machine name");
    if (accept_kw("VARIABLES")) m.variables = decl_list();
    std::set<std::string> names;
    for (const auto& v : m.variables) names.insert(v.name);
    scope_.push_back(names);
    if (accept_kw("INVARIANTS")) m.invariants = invariant_items();
    if (accept_kw("INITIALISATION")) m.initialisation = substitution();
    while (at_kw("EVENT")) {
      auto eb = here();
      next();
      Event e;
      e.label = expect_ident("event label");
      if (accept_kw("WHEN")) e.guard = pred();
      else e.guard = ex::boolean(true);
      expect_kw("THEN");
      e.action = substitution();
      expect_kw("END");
      e.span = span_from(eb);
      m.events.push_back(std::move(e));
    }
    scope_.pop_back();
    expect_kw("END");
    m.span = span_from(b);
    return m;
  }

  RefMap refmap() {
    auto b = here();
    expect_kw("REFMAP");
    RefMap r;
    r.unit = expect_ident("unit label");
    expect_punct("{");
    if (!at_punct("}")) {
      do {
        if (at_punct("}")) break;
        auto from = expect_ident("label");
        expect_punct("->");
        auto to = expect_ident("event label");
        r.entries.emplace_back(std::move(from), std::move(to));
      } while (accept_punct(";"));
    }
    expect_punct("}");
    r.span = span_from(b);
    return r;
  }

  CheckSection check() {
    auto b = here();
    expect_kw("CHECK");
    CheckSection c;
    for (;;) {
      auto ib = here();
      if (accept_kw("BOUND")) {
        expect_kw("INT");
        expect_punct("=");
        auto lo = additive();
        expect_punct("..");
        auto hi = additive();
        auto literal = [&](const ExprPtr& e) -> std::int64_t {
          if (e->op == Op::IntLit) return e->number;
          throw ParseError("integer bound must be a literal", e->span, {"integer"});
        };
        c.int_bound = std::make_pair(literal(lo), literal(hi));
      } else if (accept_kw("SET")) {
        CheckSet s;
        s.name = expect_ident("set name");
        expect_punct("=");
        expect_punct("{");
        if (!at_punct("}")) {
          s.atoms.push_back(expect_ident("atom"));
          while (accept_punct(",")) s.atoms.push_back(expect_ident("atom"));
        }
        expect_punct("}");
        s.span = span_from(ib);
        c.sets.push_back(std::move(s));
      } else if (accept_kw("CONST")) {
        CheckConst k;
        k.name = expect_ident("constant name");
        expect_punct("=");
        k.value = pred();
        k.span = span_from(ib);
        c.constants.push_back(std::move(k));
      } else {
        break;
      }
      if (!accept_punct(";")) break;
    }
    if (!at_kw("END")) fail({"BOUND", "SET", "CONST", "END"});
    next();
    c.span = span_from(b);
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourcePos last_end_;
  std::vector<std::set<std::string>> scope_;
};

SlpModel Parser::model() {
  auto b = here();
  SlpModel m;
  expect_kw("MODEL");
  m.name = expect_ident("model name");
  std::set<std::string> top;
  if (accept_kw("SETS")) m.context.sets = decl_list();
  if (accept_kw("CONSTANTS")) m.context.constants = decl_list();
  if (accept_kw("AXIOMS")) m.context.axioms = invariant_items();
  if (accept_kw("VARIABLES")) m.globals = decl_list();
  for (const auto* list : {&m.context.sets, &m.context.constants, &m.globals})
    for (const auto& d : *list) top.insert(d.name);
  scope_.push_back(top);
  if (accept_kw("INVARIANTS")) m.invariants = invariant_items();
  if (accept_kw("INITIALISATION")) m.initialisation = substitution();
  while (at_kw("ENVIRONMENT")) m.environments.push_back(environment());
  while (at_kw("PROCESS")) m.processes.push_back(process());
  if (at_kw("MACHINE")) m.machine = machine();
  while (at_kw("REFMAP")) m.refmaps.push_back(refmap());
  if (at_kw("CHECK")) m.check = check();
  scope_.pop_back();
  if (!at_kw("END")) {
    std::vector<std::string> expected;
    if (m.machine) expected = {"REFMAP", "CHECK", "END"};
    else expected = {"ENVIRONMENT", "PROCESS", "MACHINE", "REFMAP", "CHECK", "END"};
    fail(expected);
  }
  next();
  expect_end();
  m.span = span_from(b);
  return m;
}

}  // namespace

SlpModel parse_model(std::string_view text) { return Parser(text).model(); }

ExprPtr parse_predicate(std::string_view text) { return Parser(text).predicate_entry(); }

ExprPtr parse_expression(std::string_view text) { return Parser(text).predicate_entry(); }

StmtPtr parse_block(std::string_view text, const std::set<std::string>& declared) {
  return Parser(text).block_entry(declared);
}

}  // namespace slp
