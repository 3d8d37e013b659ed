#include "announce/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace announce {

namespace {

enum class Tok {
  lparen, rparen, lbrack, rbrack, lt, gt, lbrace, rbrace,
  comma, amp, pipe, tilde, arrow, bang,
  kw_true, kw_false, kw_know, kw_know_dual,
  ident, end,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

private:
  void tokenize() {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string text) {
      toks_.push_back({k, std::move(text), line, col});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col;
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
          ++j;
        std::string word = src_.substr(i, j - i);
        if (word == "true")
          push(Tok::kw_true, word);
        else if (word == "false")
          push(Tok::kw_false, word);
        else if (word == "K")
          push(Tok::kw_know, word);
        else if (word == "Kh")
          push(Tok::kw_know_dual, word);
        else
          push(Tok::ident, word);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      switch (c) {
        case '(': push(Tok::lparen, "("); break;
        case ')': push(Tok::rparen, ")"); break;
        case '[': push(Tok::lbrack, "["); break;
        case ']': push(Tok::rbrack, "]"); break;
        case '<': push(Tok::lt, "<"); break;
        case '>': push(Tok::gt, ">"); break;
        case '{': push(Tok::lbrace, "{"); break;
        case '}': push(Tok::rbrace, "}"); break;
        case ',': push(Tok::comma, ","); break;
        case '&': push(Tok::amp, "&"); break;
        case '|': push(Tok::pipe, "|"); break;
        case '~': push(Tok::tilde, "~"); break;
        case '!': push(Tok::bang, "!"); break;
        case '-':
          if (i + 1 < src_.size() && src_[i + 1] == '>') {
            push(Tok::arrow, "->");
            ++i;
            ++col;
            break;
          }
          [[fallthrough]];
        default:
          fail(Errc::syntax_error, "unexpected character '" + std::string(1, c) + "' at " +
                                       std::to_string(line) + ":" + std::to_string(col));
      }
      ++col;
      ++i;
    }
    toks_.push_back({Tok::end, "", line, col});
  }

  const std::string& src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Formula parse() {
    Formula f = imp();
    expect(Tok::end, "end of input");
    return f;
  }

private:
  [[noreturn]] void bail(const Token& t, const std::string& what) {
    std::string got = t.kind == Tok::end ? "end of input" : "\"" + t.text + "\"";
    fail(Errc::syntax_error, "expected " + what + ", got " + got + " at " +
                                 std::to_string(t.line) + ":" + std::to_string(t.col));
  }

  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k) bail(lex_.peek(), what);
    return lex_.next();
  }

  Formula imp() {
    Formula lhs = disj();
    if (lex_.peek().kind == Tok::arrow) {
      lex_.next();
      return Formula::impl(std::move(lhs), imp());
    }
    return lhs;
  }

  Formula disj() {
    Formula f = conj();
    while (lex_.peek().kind == Tok::pipe) {
      lex_.next();
      f = Formula::disj(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (lex_.peek().kind == Tok::amp) {
      lex_.next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  std::vector<std::string> group() {
    expect(Tok::lbrace, "\"{\"");
    std::vector<std::string> agents;
    if (lex_.peek().kind != Tok::rbrace) {
      agents.push_back(expect(Tok::ident, "agent name").text);
      while (lex_.peek().kind == Tok::comma) {
        lex_.next();
        agents.push_back(expect(Tok::ident, "agent name").text);
      }
    }
    expect(Tok::rbrace, "\"}\"");
    return agents;
  }

  // Box or diamond head after '[' or '<' was consumed; `close` is the
  // matching closer. Builds the box (is_box) or its dual.
  Formula boxlike(Tok close, const char* closer, bool is_box) {
    if (lex_.peek().kind == Tok::bang) {
      lex_.next();
      expect(close, closer);
      Formula body = unary();
      return is_box ? Formula::apal(std::move(body)) : Formula::apal_dual(std::move(body));
    }
    if (lex_.peek().kind == Tok::ident && lex_.peek(1).kind == Tok::lbrace) {
      const std::string& head = lex_.peek().text;
      if (head == "G" || head == "C") {
        bool is_gal = head == "G";
        lex_.next();
        std::vector<std::string> g = group();
        expect(close, closer);
        Formula body = unary();
        if (is_gal)
          return is_box ? Formula::gal(std::move(g), std::move(body))
                        : Formula::gal_dual(std::move(g), std::move(body));
        return is_box ? Formula::cal(std::move(g), std::move(body))
                      : Formula::cal_dual(std::move(g), std::move(body));
      }
      fail(Errc::unknown_operator,
           "unknown quantifier \"" + head + "\" at " + std::to_string(lex_.peek().line) + ":" +
               std::to_string(lex_.peek().col) + " (expected G or C)");
    }
    Formula psi = imp();
    expect(close, closer);
    Formula body = unary();
    return is_box ? Formula::ann(std::move(psi), std::move(body))
                  : Formula::ann_dual(std::move(psi), std::move(body));
  }

  Formula unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::tilde:
        lex_.next();
        return Formula::neg(unary());
      case Tok::kw_know: {
        lex_.next();
        std::string agent = expect(Tok::ident, "agent name").text;
        return Formula::know(std::move(agent), unary());
      }
      case Tok::kw_know_dual: {
        lex_.next();
        std::string agent = expect(Tok::ident, "agent name").text;
        return Formula::know_dual(std::move(agent), unary());
      }
      case Tok::lbrack:
        lex_.next();
        return boxlike(Tok::rbrack, "\"]\"", true);
      case Tok::lt:
        lex_.next();
        return boxlike(Tok::gt, "\">\"", false);
      case Tok::kw_true:
        lex_.next();
        return Formula::top();
      case Tok::kw_false:
        lex_.next();
        return Formula::bottom();
      case Tok::ident: {
        return Formula::atom(lex_.next().text);
      }
      case Tok::lparen: {
        lex_.next();
        Formula f = imp();
        expect(Tok::rparen, "\")\"");
        return f;
      }
      default:
        bail(t, "a formula");
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

}  // namespace announce
