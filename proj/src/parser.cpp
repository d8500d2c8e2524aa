#include "infinialg/parser.hpp"

#include <cctype>
#include <optional>

namespace infinialg {
namespace {

struct Token {
  enum Kind { Ident, Nat, Punct, End } kind;
  std::string text;
  int line, column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::End;
      current_.text = "<end of input>";
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        s += text_[pos_];
        bump();
      }
      current_.kind = Token::Ident;
      current_.text = std::move(s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        bump();
      }
      current_.kind = Token::Nat;
      current_.text = std::move(s);
      return;
    }
    if (std::string("();,=/[]").find(c) != std::string::npos) {
      current_.kind = Token::Punct;
      current_.text = std::string(1, c);
      bump();
      return;
    }
    throw SyntaxError(line_, column_, std::string("unexpected character '") + c + "'");
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, column_ = 1;
  Token current_{Token::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Presentation parse() {
    Presentation p;
    expect_keyword("theory");
    p.name = expect(Token::Ident, "theory name").text;
    expect_punct(";");
    while (lex_.peek().kind != Token::End) {
      Token t = lex_.peek();
      if (t.kind != Token::Ident || (t.text != "op" && t.text != "eq"))
        throw SyntaxError(t.line, t.column, "expected declaration, got '" + t.text + "'",
                          {"op", "eq"});
      if (t.text == "op")
        parse_op(p);
      else
        parse_eq(p);
    }
    return p;
  }

 private:
  static bool is_var_name(const std::string& s) {
    return s.size() > 1 && s[0] == 'x' &&
           s.find_first_not_of("0123456789", 1) == std::string::npos;
  }

  void parse_op(Presentation& p) {
    lex_.take();  // op
    Token name = expect(Token::Ident, "operation name");
    if (p.signature.has(name.text))
      throw SyntaxError(name.line, name.column, "duplicate symbol '" + name.text + "'");
    if (is_var_name(name.text))
      throw SyntaxError(name.line, name.column,
                        "'" + name.text + "' is reserved for variables");
    expect_punct("/");
    Token nat = expect(Token::Nat, "arity");
    expect_punct(";");
    int arity = std::stoi(nat.text);
    if (arity > kMaxDeclaredArity)
      throw SyntaxError(nat.line, nat.column,
                        "arity " + nat.text + " exceeds the supported bound " +
                            std::to_string(kMaxDeclaredArity));
    p.signature.symbols.emplace_back(name.text, arity);
  }

  void parse_eq(Presentation& p) {
    lex_.take();  // eq
    expect_punct("[");
    Token nat = expect(Token::Nat, "variable count");
    expect_punct("]");
    Equation eq;
    eq.nvars = std::stoi(nat.text);
    Token at = lex_.peek();
    eq.lhs = parse_term();
    expect_punct("=");
    eq.rhs = parse_term();
    expect_punct(";");
    try {
      check_term(eq.lhs, p.signature, eq.nvars);
      check_term(eq.rhs, p.signature, eq.nvars);
    } catch (const DomainError& e) {
      throw SyntaxError(at.line, at.column, e.what());
    }
    p.equations.push_back(std::move(eq));
  }

  Term parse_term() {
    Token t = expect(Token::Ident, "term");
    // x<NAT> is a positional variable; any other identifier is a symbol.
    if (is_var_name(t.text)) {
      int idx = std::stoi(t.text.substr(1));
      if (idx == 0) throw SyntaxError(t.line, t.column, "variable indices start at x1");
      return Term::make_var(idx);
    }
    Term out = Term::make_app(t.text);
    if (lex_.peek().kind == Token::Punct && lex_.peek().text == "(") {
      lex_.take();
      out.args.push_back(parse_term());
      while (lex_.peek().kind == Token::Punct && lex_.peek().text == ",") {
        lex_.take();
        out.args.push_back(parse_term());
      }
      expect_punct(")");
    }
    return out;
  }

  Token expect(Token::Kind kind, const std::string& what) {
    Token t = lex_.take();
    if (t.kind != kind)
      throw SyntaxError(t.line, t.column, "expected " + what + ", got '" + t.text + "'", {what});
    return t;
  }

  void expect_punct(const std::string& text) {
    Token t = lex_.take();
    if (t.kind != Token::Punct || t.text != text)
      throw SyntaxError(t.line, t.column, "expected '" + text + "', got '" + t.text + "'",
                        {text});
  }

  void expect_keyword(const std::string& kw) {
    Token t = lex_.take();
    if (t.kind != Token::Ident || t.text != kw)
      throw SyntaxError(t.line, t.column, "expected '" + kw + "', got '" + t.text + "'", {kw});
  }

  Lexer lex_;
};

}  // namespace

Presentation parse_presentation(const std::string& text) {
  // Equation bodies are checked against the signature during the parse; an
  // arity misuse surfaces as ArityError rather than a syntax error.
  Parser parser(text);
  return parser.parse();
}

std::string print_presentation(const Presentation& p) {
  std::string out = "theory " + p.name + ";\n";
  for (const auto& [sym, arity] : p.signature.symbols)
    out += "op " + sym + "/" + std::to_string(arity) + ";\n";
  for (const auto& eq : p.equations)
    out += "eq[" + std::to_string(eq.nvars) + "] " + eq.lhs.print() + "=" + eq.rhs.print() + ";\n";
  return out;
}

}  // namespace infinialg
