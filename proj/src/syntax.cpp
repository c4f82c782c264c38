#include "flam/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <vector>

#include "flam/error.hpp"

namespace flam {

namespace {

enum class Tok {
  Ident,
  Int,
  Backslash,
  LParen,
  RParen,
  Colon,
  Dot,
  Comma,
  Less,
  Greater,
  Star,
  Plus,
  Minus,
  Arrow,
  Equals,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Backslash: return "'\\'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view src, std::size_t first_line = 1) {
  std::vector<Token> out;
  std::size_t line = first_line, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    Tok k;
    std::size_t len = 1;
    switch (c) {
      case '\\': k = Tok::Backslash; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ':': k = Tok::Colon; break;
      case '.': k = Tok::Dot; break;
      case ',': k = Tok::Comma; break;
      case '<': k = Tok::Less; break;
      case '>': k = Tok::Greater; break;
      case '*': k = Tok::Star; break;
      case '+': k = Tok::Plus; break;
      case '=': k = Tok::Equals; break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          k = Tok::Arrow;
          len = 2;
        } else {
          k = Tok::Minus;
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(src.substr(i, len)), l, cl});
    advance(len);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  static const char* const kws[] = {"if", "then", "else", "let", "in", "fst", "snd", "tt", "ff", "Bool"};
  return std::any_of(std::begin(kws), std::end(kws), [&](const char* k) { return s == k; });
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::optional<Field>& field) : toks_(std::move(toks)), field_(field) {}

  void bind_context(const Context& ctx) {
    for (const auto& b : ctx) names_.push_back(b.name);
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::Ident) && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  Token expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + describe(k) + ", found " + found());
    return toks_[pos_++];
  }
  void expect_word(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "', found " + found());
    ++pos_;
  }
  std::string found() const {
    return at(Tok::End) ? std::string("end of input") : "'" + peek().text + "'";
  }

  void expect_end() {
    if (!at(Tok::End)) fail("unexpected " + found() + " after complete input");
  }

  // ---- types ----
  TypePtr type() {
    TypePtr t = prod_type();
    if (at(Tok::Arrow)) {
      ++pos_;
      return Type::arrow(t, type());
    }
    return t;
  }

  TypePtr prod_type() {
    TypePtr t = atom_type();
    if (at(Tok::Star)) {
      ++pos_;
      return Type::prod(t, prod_type());
    }
    return t;
  }

  TypePtr atom_type() {
    if (at(Tok::Int) && peek().text == "1") {
      ++pos_;
      return Type::unit();
    }
    if (at_word("Bool")) {
      ++pos_;
      return Type::boolean();
    }
    if (at(Tok::LParen)) {
      ++pos_;
      TypePtr t = type();
      expect(Tok::RParen);
      return t;
    }
    fail("expected a type, found " + found());
  }

  // ---- context ----
  Context context() {
    Context ctx;
    if (at(Tok::End)) return ctx;
    while (true) {
      Token name = expect(Tok::Ident);
      if (is_keyword(name.text)) throw ParseError("keyword used as variable name", name.line, name.column);
      expect(Tok::Colon);
      ctx.push_back({name.text, type()});
      if (!at(Tok::Comma)) break;
      ++pos_;
    }
    return ctx;
  }

  // ---- terms ----
  bool at_binder_form() const { return at(Tok::Backslash) || at_word("if") || at_word("let"); }

  TermPtr term() {
    if (at_binder_form()) return binder_form();
    return sum_expr();
  }

  TermPtr binder_form() {
    if (at(Tok::Backslash)) {
      ++pos_;
      expect(Tok::LParen);
      Token name = expect(Tok::Ident);
      if (is_keyword(name.text)) throw ParseError("keyword used as variable name", name.line, name.column);
      expect(Tok::Colon);
      TypePtr a = type();
      expect(Tok::RParen);
      expect(Tok::Dot);
      names_.push_back(name.text);
      TermPtr body = term();
      names_.pop_back();
      return lam(a, body, name.text);
    }
    if (at_word("if")) {
      ++pos_;
      TermPtr c = term();
      expect_word("then");
      TermPtr a = term();
      expect_word("else");
      TermPtr b = term();
      return ite(c, a, b);
    }
    expect_word("let");
    expect(Tok::Star);
    expect(Tok::Equals);
    TermPtr m = term();
    expect_word("in");
    TermPtr n = term();
    return let_star(m, n);
  }

  TermPtr sum_expr() {
    TermPtr t = operand();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = at(Tok::Minus);
      Token op = toks_[pos_++];
      TermPtr r = operand();
      if (minus) {
        if (!field_) throw ParseError("subtraction requires a field (--field)", op.line, op.column);
        r = scale(field_->modulus() - 1, r);
      }
      t = sum(t, r);
    }
    return t;
  }

  // A binder form as an operand extends to the end of the enclosing term.
  TermPtr operand() {
    if (at_binder_form()) return binder_form();
    return scaled();
  }

  TermPtr scaled() {
    if (at(Tok::Int) && peek(1).kind == Tok::Dot) {
      Token lit = toks_[pos_];
      pos_ += 2;
      if (!field_) throw ParseError("scalar literal requires a field (--field)", lit.line, lit.column);
      Residue k = field_->reduce(literal(lit));
      TermPtr inner = operand();
      return scale(k, inner);
    }
    return application();
  }

  std::int64_t literal(const Token& lit) const {
    if (lit.text.size() > 12) throw ParseError("integer literal too large", lit.line, lit.column);
    return std::stoll(lit.text);
  }

  bool at_atom_start() const {
    switch (peek().kind) {
      case Tok::Ident:
        return !is_keyword(peek().text) || peek().text == "tt" || peek().text == "ff" ||
               peek().text == "fst" || peek().text == "snd";
      case Tok::Star:
      case Tok::Less:
      case Tok::LParen:
        return true;
      case Tok::Int:
        return peek(1).kind == Tok::Colon;
      default:
        return false;
    }
  }

  TermPtr application() {
    TermPtr t = prefix();
    while (true) {
      if (at_atom_start()) {
        t = app(t, prefix());
      } else if (at_binder_form()) {
        t = app(t, binder_form());
        break;
      } else {
        break;
      }
    }
    return t;
  }

  TermPtr prefix() {
    if (at_word("fst")) {
      ++pos_;
      return proj_l(prefix());
    }
    if (at_word("snd")) {
      ++pos_;
      return proj_r(prefix());
    }
    return atom();
  }

  TermPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Star:
        ++pos_;
        return star();
      case Tok::Less: {
        ++pos_;
        TermPtr l = term();
        expect(Tok::Comma);
        TermPtr r = term();
        expect(Tok::Greater);
        return pair(l, r);
      }
      case Tok::LParen: {
        ++pos_;
        TermPtr inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Int: {
        if (t.text != "0" || peek(1).kind != Tok::Colon) {
          fail("integer literal must be '0 : T' or a scalar 'k . M'");
        }
        pos_ += 2;
        return zero(type());
      }
      case Tok::Ident: {
        if (t.text == "tt") {
          ++pos_;
          return tt();
        }
        if (t.text == "ff") {
          ++pos_;
          return ff();
        }
        if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
        for (std::size_t k = names_.size(); k-- > 0;) {
          if (names_[k] == t.text) {
            ++pos_;
            return var(names_.size() - 1 - k);
          }
        }
        fail("unbound variable '" + t.text + "'");
      }
      default:
        fail("expected a term, found " + found());
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::optional<Field>& field_;
  std::vector<std::string> names_;
};

// ---- printing ----

enum Level { kTop = 0, kSum = 1, kScale = 2, kApp = 3, kAtom = 4 };

class Printer {
 public:
  explicit Printer(const Context& ctx) {
    for (const auto& b : ctx) names_.push_back(b.name);
  }

  void print(const Term& t, int level, std::string& out) {
    switch (t.kind()) {
      case TermKind::Var:
        if (t.index() < names_.size()) {
          out += names_[names_.size() - 1 - t.index()];
        } else {
          out += "#" + std::to_string(t.index());
        }
        return;
      case TermKind::Lam: {
        open(level > kTop, out);
        std::string name = fresh(t.name_hint());
        out += "\\(" + name + ":" + to_string(t.annotation()) + "). ";
        names_.push_back(name);
        print(*t.child(0), kTop, out);
        names_.pop_back();
        close(level > kTop, out);
        return;
      }
      case TermKind::If:
        open(level > kTop, out);
        out += "if ";
        print(*t.child(0), kTop, out);
        out += " then ";
        print(*t.child(1), kTop, out);
        out += " else ";
        print(*t.child(2), kTop, out);
        close(level > kTop, out);
        return;
      case TermKind::LetStar:
        open(level > kTop, out);
        out += "let * = ";
        print(*t.child(0), kTop, out);
        out += " in ";
        print(*t.child(1), kTop, out);
        close(level > kTop, out);
        return;
      case TermKind::Zero:
        open(level > kTop, out);
        out += "0 : " + to_string(t.annotation());
        close(level > kTop, out);
        return;
      case TermKind::Sum:
        open(level > kSum, out);
        print(*t.child(0), kSum, out);
        out += " + ";
        print(*t.child(1), kScale, out);
        close(level > kSum, out);
        return;
      case TermKind::Scale:
        open(level > kScale, out);
        out += std::to_string(t.coeff()) + ".";
        print(*t.child(0), kScale, out);
        close(level > kScale, out);
        return;
      case TermKind::App:
        open(level > kApp, out);
        print(*t.child(0), kApp, out);
        out += " ";
        print(*t.child(1), kAtom, out);
        close(level > kApp, out);
        return;
      case TermKind::ProjL:
      case TermKind::ProjR:
        open(level > kApp, out);
        out += t.is(TermKind::ProjL) ? "fst " : "snd ";
        print(*t.child(0), kAtom, out);
        close(level > kApp, out);
        return;
      case TermKind::Pair:
        out += "<";
        print(*t.child(0), kTop, out);
        out += ", ";
        print(*t.child(1), kTop, out);
        out += ">";
        return;
      case TermKind::Star:
        out += "*";
        return;
      case TermKind::True:
        out += "tt";
        return;
      case TermKind::False:
        out += "ff";
        return;
    }
  }

 private:
  static void open(bool paren, std::string& out) {
    if (paren) out += "(";
  }
  static void close(bool paren, std::string& out) {
    if (paren) out += ")";
  }

  std::string fresh(const std::string& hint) const {
    std::string base = hint.empty() || is_keyword(hint) ? "x" : hint;
    auto taken = [&](const std::string& n) { return std::find(names_.begin(), names_.end(), n) != names_.end(); };
    if (!taken(base)) return base;
    for (std::size_t k = 1;; ++k) {
      std::string candidate = base + std::to_string(k);
      if (!taken(candidate)) return candidate;
    }
  }

  std::vector<std::string> names_;
};

}  // namespace

TypePtr parse_type(std::string_view text) {
  Parser p(lex(text), std::nullopt);
  TypePtr t = p.type();
  p.expect_end();
  return t;
}

TermPtr parse_term(std::string_view text, const std::optional<Field>& field, const Context& ctx) {
  Parser p(lex(text), field);
  p.bind_context(ctx);
  TermPtr t = p.term();
  p.expect_end();
  return t;
}

Context parse_context(std::string_view text) {
  Parser p(lex(text), std::nullopt);
  Context ctx = p.context();
  p.expect_end();
  return ctx;
}

Program parse_program(std::string_view text, const std::optional<Field>& field) {
  // Locate the first line that is neither blank nor a comment.
  std::size_t pos = 0, line = 1;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view row = text.substr(pos, eol - pos);
    std::size_t first = row.find_first_not_of(" \t\r");
    bool skip = first == std::string_view::npos || row.substr(first, 2) == "--";
    if (!skip) break;
    pos = eol + 1;
    ++line;
  }
  Program prog;
  std::string_view rest = pos < text.size() ? text.substr(pos) : std::string_view();
  std::size_t first = rest.find_first_not_of(" \t\r");
  if (first != std::string_view::npos && rest.substr(first, 4) == "ctx:") {
    std::size_t eol = rest.find('\n');
    std::string_view header = rest.substr(first + 4, (eol == std::string_view::npos ? rest.size() : eol) - first - 4);
    std::size_t cut = header.find("--");
    if (cut != std::string_view::npos) header = header.substr(0, cut);
    Parser hp(lex(header, line), std::nullopt);
    prog.context = hp.context();
    hp.expect_end();
    rest = eol == std::string_view::npos ? std::string_view() : rest.substr(eol + 1);
    ++line;
  }
  Parser p(lex(rest, line), field);
  p.bind_context(prog.context);
  prog.term = p.term();
  p.expect_end();
  return prog;
}

std::string print_term(const TermPtr& t, const Context& ctx) {
  std::string out;
  Printer(ctx).print(*t, kTop, out);
  return out;
}

std::string print_judgment(const Judgment& j) {
  return context_to_string(j.context) + (j.context.empty() ? "" : " ") + "|- " + print_term(j.term, j.context) +
         " : " + to_string(j.type);
}

}  // namespace flam
