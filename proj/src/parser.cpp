#include "dvlg/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "dvlg/error.hpp"

namespace dvlg::logic {

namespace {

enum class Tok {
  Ident, Int, LParen, RParen, Dot, Colon, Comma, Plus, Minus, Star, Slash,
  Leq, Below, Eq, Lt, Arrow, Iff, Tilde, Amp, Bar, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Int, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto two = s.substr(i, 2);
    auto three = s.substr(i, 3);
    if (three == "<->") {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (two == "<=") {
      out.push_back({Tok::Leq, "<=", start});
      i += 2;
    } else if (two == "<<") {
      out.push_back({Tok::Below, "<<", start});
      i += 2;
    } else if (two == "->") {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '.': k = Tok::Dot; break;
        case ':': k = Tok::Colon; break;
        case ',': k = Tok::Comma; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '=': k = Tok::Eq; break;
        case '<': k = Tok::Lt; break;
        case '~': k = Tok::Tilde; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Bar; break;
        default:
          throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", start);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& w) {
  static const char* kw[] = {"forall", "exists", "meet", "join", "cap", "cup", "compl",
                             "bot", "top", "true", "false", "P"};
  for (const char* k : kw)
    if (w == k) return true;
  return false;
}

// Untyped syntax tree; sorts are assigned during elaboration.
enum class Op {
  Var, Zero, Add, Sub, Neg, Meet, Join, Scale, Bot, Top, Cap, Cup, Compl, Val,
  Leq, Below, Eq, Lt, Not, And, Or, Implies, Iff, Forall, Exists, True, False,
};

struct Raw {
  Op op;
  std::string name;
  Rational n;
  Sort sort = Sort::G;
  std::vector<Raw> kids;
  std::size_t begin = 0, end = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(tokenize(src)) {}

  Raw formula_top() {
    Raw f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Raw term_top() {
    Raw t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::SyntaxError, msg + ", found " + found, t.pos);
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    next();
  }

  std::size_t last_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].pos + toks_[pos_ - 1].text.size(); }

  Raw node(Op op, std::vector<Raw> kids, std::size_t begin) {
    Raw r{op, {}, Rational(0), Sort::G, std::move(kids), begin, 0};
    r.end = last_end();
    return r;
  }

  bool at_quantifier() const { return at_word("forall") || at_word("exists"); }

  Raw formula() {
    if (at_quantifier()) return quantified();
    return implication();
  }

  Raw quantified() {
    std::size_t begin = peek().pos;
    Op op = next().text == "forall" ? Op::Forall : Op::Exists;
    std::vector<std::pair<std::string, Sort>> binders;
    std::vector<std::size_t> starts;
    do {
      starts.push_back(peek().pos);
      if (!at(Tok::Ident) || is_keyword(peek().text)) fail("expected a variable name");
      std::string v = next().text;
      expect(Tok::Colon, "':'");
      if (!at(Tok::Ident) || (peek().text != "G" && peek().text != "L")) fail("expected sort G or L");
      Sort s = next().text == "G" ? Sort::G : Sort::L;
      binders.emplace_back(v, s);
    } while (at(Tok::Comma) && (next(), true));
    expect(Tok::Dot, "'.' after quantifier binders");
    Raw body = formula();
    for (std::size_t i = binders.size(); i-- > 0;) {
      Raw q = node(op, {std::move(body)}, i == 0 ? begin : starts[i]);
      q.name = binders[i].first;
      q.sort = binders[i].second;
      body = std::move(q);
    }
    return body;
  }

  // Right operands of binary connectives may be quantifiers, which extend to the end.
  Raw operand(Raw (Parser::*level)()) {
    if (at_quantifier()) return quantified();
    return (this->*level)();
  }

  Raw implication() {
    std::size_t begin = peek().pos;
    Raw lhs = disjunction();
    if (at(Tok::Arrow) || at(Tok::Iff)) {
      Op op = next().kind == Tok::Arrow ? Op::Implies : Op::Iff;
      Raw rhs = operand(&Parser::implication);
      return node(op, {std::move(lhs), std::move(rhs)}, begin);
    }
    return lhs;
  }

  Raw disjunction() {
    std::size_t begin = peek().pos;
    Raw lhs = conjunction();
    while (at(Tok::Bar)) {
      next();
      Raw rhs = operand(&Parser::conjunction);
      lhs = node(Op::Or, {std::move(lhs), std::move(rhs)}, begin);
    }
    return lhs;
  }

  Raw conjunction() {
    std::size_t begin = peek().pos;
    Raw lhs = unary_formula();
    while (at(Tok::Amp)) {
      next();
      Raw rhs = operand(&Parser::unary_formula);
      lhs = node(Op::And, {std::move(lhs), std::move(rhs)}, begin);
    }
    return lhs;
  }

  Raw unary_formula() {
    std::size_t begin = peek().pos;
    if (at(Tok::Tilde)) {
      next();
      Raw kid = operand(&Parser::unary_formula);
      return node(Op::Not, {std::move(kid)}, begin);
    }
    if (at_word("true") || at_word("false")) {
      Op op = next().text == "true" ? Op::True : Op::False;
      return node(op, {}, begin);
    }
    if (at(Tok::LParen)) {
      std::size_t save = pos_;
      try {
        return relation();
      } catch (const Error&) {
        pos_ = save;
      }
      next();
      Raw inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return relation();
  }

  Raw relation() {
    std::size_t begin = peek().pos;
    Raw lhs = term();
    Op op;
    switch (peek().kind) {
      case Tok::Leq: op = Op::Leq; break;
      case Tok::Below: op = Op::Below; break;
      case Tok::Eq: op = Op::Eq; break;
      case Tok::Lt: op = Op::Lt; break;
      default: fail("expected a relation (<=, <<, =, <)");
    }
    next();
    Raw rhs = term();
    return node(op, {std::move(lhs), std::move(rhs)}, begin);
  }

  Raw term() {
    std::size_t begin = peek().pos;
    Raw lhs = lattice_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Op op = next().kind == Tok::Plus ? Op::Add : Op::Sub;
      Raw rhs = lattice_term();
      lhs = node(op, {std::move(lhs), std::move(rhs)}, begin);
    }
    return lhs;
  }

  Raw lattice_term() {
    std::size_t begin = peek().pos;
    Raw lhs = scale_term();
    while (at_word("meet") || at_word("join") || at_word("cap") || at_word("cup")) {
      const std::string& w = next().text;
      Op op = w == "meet" ? Op::Meet : w == "join" ? Op::Join : w == "cap" ? Op::Cap : Op::Cup;
      Raw rhs = scale_term();
      lhs = node(op, {std::move(lhs), std::move(rhs)}, begin);
    }
    return lhs;
  }

  Raw scale_term() {
    std::size_t begin = peek().pos;
    const std::size_t off = at(Tok::Minus) ? 1 : 0;
    const bool fraction = peek(off).kind == Tok::Int && peek(off + 1).kind == Tok::Slash &&
                          peek(off + 2).kind == Tok::Int && peek(off + 3).kind == Tok::Star;
    const bool integer = peek(off).kind == Tok::Int && peek(off + 1).kind == Tok::Star;
    if (fraction || integer) {
      const bool negative = off == 1;
      if (negative) next();
      Rational n = Rational::parse(next().text);
      if (fraction) {
        next();  // '/'
        const Token& d = next();
        if (d.text == "0") fail("zero denominator");
        n = n / Rational::parse(d.text);
      }
      next();  // '*'
      Raw kid = scale_term();
      Raw r = node(Op::Scale, {std::move(kid)}, begin);
      r.n = negative ? -n : n;
      return r;
    }
    return unary_term();
  }

  Raw unary_term() {
    std::size_t begin = peek().pos;
    if (at(Tok::Minus)) {
      next();
      Raw kid = unary_term();
      return node(Op::Neg, {std::move(kid)}, begin);
    }
    return primary();
  }

  Raw primary() {
    std::size_t begin = peek().pos;
    if (at(Tok::Int)) {
      if (peek().text != "0") fail("integer literals other than 0 may only appear as scalars 'n*t'");
      next();
      return node(Op::Zero, {}, begin);
    }
    if (at(Tok::LParen)) {
      next();
      Raw inner = term();
      expect(Tok::RParen, "')'");
      inner.begin = begin;
      inner.end = last_end();
      return inner;
    }
    if (!at(Tok::Ident)) fail("expected a term");
    const std::string w = peek().text;
    if (w == "bot" || w == "top") {
      next();
      return node(w == "bot" ? Op::Bot : Op::Top, {}, begin);
    }
    if (w == "P" || w == "compl") {
      next();
      expect(Tok::LParen, "'('");
      Raw inner = term();
      expect(Tok::RParen, "')'");
      return node(w == "P" ? Op::Val : Op::Compl, {std::move(inner)}, begin);
    }
    if (is_keyword(w)) fail("unexpected keyword");
    next();
    Raw v = node(Op::Var, {}, begin);
    v.name = w;
    return v;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

class Elaborator {
 public:
  Elaborator(std::string_view src, const SortContext& context) : src_(src), free_(context) {}

  Formula formula(const Raw& r) {
    switch (r.op) {
      case Op::True: return truef();
      case Op::False: return falsef();
      case Op::Not: return negation(formula(r.kids[0]));
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff: {
        // Left to right, so sorts inferred on the left are visible on the right.
        Formula a = formula(r.kids[0]);
        Formula b = formula(r.kids[1]);
        if (r.op == Op::And) return conj(a, b);
        if (r.op == Op::Or) return disj(a, b);
        if (r.op == Op::Implies) return implies(a, b);
        return conj(implies(a, b), implies(b, a));
      }
      case Op::Forall:
      case Op::Exists: {
        scope_.emplace_back(r.name, r.sort);
        Formula body = formula(r.kids[0]);
        scope_.pop_back();
        return quantifier(r.op == Op::Forall ? FormulaKind::Forall : FormulaKind::Exists, r.name, r.sort, body);
      }
      case Op::Leq:
      case Op::Below: {
        const Sort s = r.op == Op::Leq ? Sort::G : Sort::L;
        Term a = term(r.kids[0], s);
        Term b = term(r.kids[1], s);
        return r.op == Op::Leq ? gleq(a, b) : lbelow(a, b);
      }
      case Op::Eq:
      case Op::Lt: {
        std::optional<Sort> s = infer(r.kids[0]);
        if (!s) s = infer(r.kids[1]);
        if (!s) sort_error(r, "cannot infer the sort of both sides");
        Term a = term(r.kids[0], *s);
        Term b = term(r.kids[1], *s);
        return r.op == Op::Eq ? equals(a, b) : strictly_below(a, b);
      }
      default:
        sort_error(r, "expected a formula");
    }
  }

  Term term(const Raw& r, Sort expected) {
    Sort actual = natural_sort(r).value_or(expected);
    if (actual != expected)
      sort_error(r, std::string("has sort ") + to_string(actual) + " where " + to_string(expected) + " is required");
    switch (r.op) {
      case Op::Var: {
        if (!lookup(r.name)) free_[r.name] = expected;
        return var(r.name, expected);
      }
      case Op::Zero: return zero();
      case Op::Add: return binary(r, &add, Sort::G);
      case Op::Sub: return binary(r, &sub, Sort::G);
      case Op::Neg: return neg(term(r.kids[0], Sort::G));
      case Op::Meet: return binary(r, &gmeet, Sort::G);
      case Op::Join: return binary(r, &gjoin, Sort::G);
      case Op::Scale: return r.n.is_integer() ? int_scale(r.n, term(r.kids[0], Sort::G)) : rat_scale(r.n, term(r.kids[0], Sort::G));
      case Op::Bot: return bot();
      case Op::Top: return top();
      case Op::Cap: return binary(r, &lmeet, Sort::L);
      case Op::Cup: return binary(r, &ljoin, Sort::L);
      case Op::Compl: return lcompl(term(r.kids[0], Sort::L));
      case Op::Val: return val(term(r.kids[0], Sort::G));
      default: sort_error(r, "expected a term");
    }
  }

 private:
  Term binary(const Raw& r, Term (*make)(Term, Term), Sort s) {
    Term a = term(r.kids[0], s);
    Term b = term(r.kids[1], s);
    return make(a, b);
  }

  std::optional<Sort> lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    auto f = free_.find(name);
    if (f != free_.end()) return f->second;
    return std::nullopt;
  }

  std::optional<Sort> natural_sort(const Raw& r) const {
    switch (r.op) {
      case Op::Var: return lookup(r.name);
      case Op::Zero: case Op::Add: case Op::Sub: case Op::Neg: case Op::Meet: case Op::Join: case Op::Scale:
        return Sort::G;
      default:
        return Sort::L;
    }
  }

  std::optional<Sort> infer(const Raw& r) const { return natural_sort(r); }

  [[noreturn]] void sort_error(const Raw& r, const std::string& msg) const {
    std::string snippet(src_.substr(r.begin, r.end > r.begin ? r.end - r.begin : 0));
    throw Error(ErrorKind::SortError, "'" + snippet + "' " + msg);
  }

  std::string_view src_;
  SortContext free_;
  std::vector<std::pair<std::string, Sort>> scope_;
};

// Binding strengths for printing; larger binds tighter.
int term_prec(const Term& t) {
  switch (t.kind()) {
    case TermKind::Add: return 2;
    case TermKind::GMeet: case TermKind::GJoin: case TermKind::LMeet: case TermKind::LJoin: return 3;
    case TermKind::IntScale: case TermKind::RatScale: return 4;
    case TermKind::Neg: return 5;
    default: return 6;
  }
}

void print_term(std::ostream& os, const Term& t, int min_prec) {
  const int p = term_prec(t);
  const bool parens = p < min_prec;
  if (parens) os << '(';
  switch (t.kind()) {
    case TermKind::GVar: case TermKind::LVar: os << t.name(); break;
    case TermKind::Zero: os << '0'; break;
    case TermKind::Bot: os << "bot"; break;
    case TermKind::Top: os << "top"; break;
    case TermKind::Add:
      print_term(os, t.kid(0), 2);
      if (t.kid(1).kind() == TermKind::Neg) {
        os << " - ";
        print_term(os, t.kid(1).kid(0), 3);
      } else {
        os << " + ";
        print_term(os, t.kid(1), 3);
      }
      break;
    case TermKind::Neg:
      os << '-';
      print_term(os, t.kid(0), 5);
      break;
    case TermKind::GMeet: case TermKind::GJoin: case TermKind::LMeet: case TermKind::LJoin: {
      const char* op = t.kind() == TermKind::GMeet ? " meet " : t.kind() == TermKind::GJoin ? " join "
                     : t.kind() == TermKind::LMeet ? " cap " : " cup ";
      print_term(os, t.kid(0), 3);
      os << op;
      print_term(os, t.kid(1), 4);
      break;
    }
    case TermKind::IntScale:
    case TermKind::RatScale:
      os << t.scalar() << '*';
      print_term(os, t.kid(0), 4);
      break;
    case TermKind::Compl:
      os << "compl(";
      print_term(os, t.kid(0), 0);
      os << ')';
      break;
    case TermKind::Val:
      os << "P(";
      print_term(os, t.kid(0), 0);
      os << ')';
      break;
  }
  if (parens) os << ')';
}

int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Exists: case FormulaKind::Forall: return 0;
    case FormulaKind::Implies: return 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    case FormulaKind::Not: return 4;
    default: return 5;
  }
}

void print_formula(std::ostream& os, const Formula& f, int min_prec) {
  const int p = formula_prec(f);
  const bool parens = p < min_prec;
  if (parens) os << '(';
  switch (f.kind()) {
    case FormulaKind::True: os << "true"; break;
    case FormulaKind::False: os << "false"; break;
    case FormulaKind::GLeq: case FormulaKind::GEq: case FormulaKind::LBelow: case FormulaKind::LEq: {
      const char* rel = f.kind() == FormulaKind::GLeq ? " <= " : f.kind() == FormulaKind::LBelow ? " << " : " = ";
      print_term(os, f.lhs(), 0);
      os << rel;
      print_term(os, f.rhs(), 0);
      break;
    }
    case FormulaKind::Not:
      os << '~';
      print_formula(os, f.kid(0), 4);
      break;
    case FormulaKind::And:
      print_formula(os, f.kid(0), 3);
      os << " & ";
      print_formula(os, f.kid(1), 4);
      break;
    case FormulaKind::Or:
      print_formula(os, f.kid(0), 2);
      os << " | ";
      print_formula(os, f.kid(1), 3);
      break;
    case FormulaKind::Implies:
      print_formula(os, f.kid(0), 2);
      os << " -> ";
      print_formula(os, f.kid(1), 1);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      os << (f.kind() == FormulaKind::Exists ? "exists " : "forall ") << f.var() << ':' << to_string(f.var_sort())
         << ". ";
      print_formula(os, f.body(), 0);
      break;
  }
  if (parens) os << ')';
}

}  // namespace

Formula parse(std::string_view text, const SortContext& context) {
  Raw raw = Parser(text).formula_top();
  return Elaborator(text, context).formula(raw);
}

Term parse_term(std::string_view text, const SortContext& context) {
  Raw raw = Parser(text).term_top();
  Elaborator e(text, context);
  Sort s = Sort::L;
  switch (raw.op) {
    case Op::Zero: case Op::Add: case Op::Sub: case Op::Neg: case Op::Meet: case Op::Join: case Op::Scale:
      s = Sort::G;
      break;
    case Op::Var: {
      auto it = context.find(raw.name);
      if (it == context.end()) throw Error(ErrorKind::SortError, "unknown sort for variable " + raw.name);
      s = it->second;
      break;
    }
    default:
      break;
  }
  return e.term(raw, s);
}

std::vector<Formula> parse_many(std::string_view text, const SortContext& context) {
  std::string cleaned;
  std::istringstream in{std::string(text)};
  std::string line;
  bool has_semicolon = text.find(';') != std::string_view::npos;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') continue;
    cleaned += line;
    cleaned += has_semicolon ? ' ' : '\n';
  }
  std::vector<Formula> out;
  const char sep = has_semicolon ? ';' : '\n';
  std::size_t start = 0;
  while (start <= cleaned.size()) {
    auto stop = cleaned.find(sep, start);
    if (stop == std::string::npos) stop = cleaned.size();
    std::string chunk = cleaned.substr(start, stop - start);
    if (chunk.find_first_not_of(" \t\r\n") != std::string::npos) out.push_back(parse(chunk, context));
    start = stop + 1;
  }
  return out;
}

std::string print(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

std::string print(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

void sort_check(const Formula& f, const SortContext& context) {
  SortContext seen = context;
  std::vector<std::pair<std::string, Sort>> scope;
  std::function<void(const Term&)> check_term = [&](const Term& t) {
    if (t.is_var()) {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == t.name()) {
          if (it->second != t.sort())
            throw Error(ErrorKind::SortError, "variable " + t.name() + " bound at sort " + to_string(it->second) +
                                                  " used at sort " + to_string(t.sort()));
          return;
        }
      }
      auto [it, fresh] = seen.emplace(t.name(), t.sort());
      if (!fresh && it->second != t.sort())
        throw Error(ErrorKind::SortError, "variable " + t.name() + " used at sorts G and L");
      return;
    }
    for (const auto& k : t.kids()) check_term(k);
  };
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g.is_atom()) {
      check_term(g.lhs());
      check_term(g.rhs());
      return;
    }
    if (g.is_quantifier()) {
      scope.emplace_back(g.var(), g.var_sort());
      go(g.body());
      scope.pop_back();
      return;
    }
    for (const auto& k : g.kids()) go(k);
  };
  go(f);
}

}  // namespace dvlg::logic
