#include "epsilon/parser.hpp"

#include <array>
#include <cctype>
#include <string>
#include <vector>

namespace epsilon {

namespace {

constexpr std::array<std::string_view, 7> kKeywords = {"all", "ex", "eps", "not", "and", "or", "S"};

enum class Tok { ident, number, lparen, rparen, comma, dot, equals, less, arrow, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({Tok::ident, text.substr(start, i - start), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::number, text.substr(start, i - start), start});
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      i += 2;
      out.push_back({Tok::arrow, text.substr(start, 2), start});
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case ',': k = Tok::comma; break;
        case '.': k = Tok::dot; break;
        case '=': k = Tok::equals; break;
        case '<': k = Tok::less; break;
        default:
          throw ParseError(ParseError::Kind::syntax, start, std::string("unexpected character '") + c + "'");
      }
      ++i;
      out.push_back({k, text.substr(start, 1), start});
    }
  }
  out.push_back({Tok::end, {}, text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

  Term whole_term() {
    Term t = term();
    expect(Tok::end, "end of input");
    return t;
  }

  Formula whole_formula() {
    Formula f = implication();
    expect(Tok::end, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::ident) && peek().text == w; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + std::string(t.text) + "'";
    throw ParseError(ParseError::Kind::syntax, t.offset, "expected " + what + ", found " + found);
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(what);
    advance();
  }

  std::string binder_name() {
    if (!at(Tok::ident) || is_keyword(peek().text)) fail("variable name");
    const Token& tok = advance();
    std::string name(tok.text);
    for (const auto& s : scope_) {
      if (s == name) {
        throw ParseError(ParseError::Kind::shadowing, tok.offset, "bound variable '" + name + "' shadows an enclosing binder");
      }
    }
    return name;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (at(Tok::arrow)) {
      advance();
      Formula rhs = implication();
      return make_implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (at_word("or")) {
      advance();
      lhs = make_or(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (at_word("and")) {
      advance();
      lhs = make_and(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    if (at_word("not")) {
      advance();
      return make_not(unary());
    }
    if (at_word("all") || at_word("ex")) return quantifier();
    if (at(Tok::lparen)) {
      // "(" opens either a parenthesized term of an equation or a
      // parenthesized formula; try the equation reading first.
      std::size_t saved = pos_;
      std::size_t saved_scope = scope_.size();
      try {
        return equation();
      } catch (const ParseError& as_term) {
        pos_ = saved;
        scope_.resize(saved_scope);
        try {
          advance();
          Formula f = implication();
          expect(Tok::rparen, "')'");
          return f;
        } catch (const ParseError& as_formula) {
          if (as_term.position() > as_formula.position()) throw as_term;
          throw;
        }
      }
    }
    return equation();
  }

  Formula equation() {
    Term lhs = term();
    expect(Tok::equals, "'='");
    Term rhs = term();
    return make_eq(std::move(lhs), std::move(rhs));
  }

  Formula quantifier() {
    bool universal = advance().text == "all";
    std::string name = binder_name();
    std::optional<Term> bound;
    if (at(Tok::less)) {
      advance();
      bound = term();
    }
    expect(Tok::dot, "'.'");
    scope_.push_back(name);
    Formula body = implication();
    scope_.pop_back();
    Formula::Kind kind = bound ? (universal ? Formula::Kind::bounded_forall : Formula::Kind::bounded_exists)
                               : (universal ? Formula::Kind::forall : Formula::Kind::exists);
    return make_binder_raw(kind, std::move(name), std::move(body), std::move(bound));
  }

  Term term() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::number:
        advance();
        return make_numeral(parse_natural(tok.text));
      case Tok::lparen: {
        advance();
        Term t = term();
        expect(Tok::rparen, "')'");
        return t;
      }
      case Tok::ident:
        break;
      default:
        fail("term");
    }
    if (tok.text == "S") {
      advance();
      expect(Tok::lparen, "'(' after S");
      Term inner = term();
      expect(Tok::rparen, "')'");
      return make_succ(std::move(inner));
    }
    if (tok.text == "eps") {
      advance();
      std::string name = binder_name();
      expect(Tok::dot, "'.'");
      scope_.push_back(name);
      Formula body = implication();
      scope_.pop_back();
      return make_eps_raw(std::move(name), std::move(body));
    }
    if (is_keyword(tok.text)) fail("term");
    advance();
    std::string name(tok.text);
    if (at(Tok::lparen)) {
      const SymbolDef* def = sig_.find(name);
      if (!def) throw ParseError(ParseError::Kind::unknown_symbol, tok.offset, "unknown function symbol '" + name + "'");
      advance();
      std::vector<Term> args;
      args.push_back(term());
      while (at(Tok::comma)) {
        advance();
        args.push_back(term());
      }
      expect(Tok::rparen, "')' or ','");
      if (args.size() != def->arity) {
        throw ParseError(ParseError::Kind::arity_mismatch, tok.offset,
                         "'" + name + "' expects " + std::to_string(def->arity) + " argument(s), got " +
                             std::to_string(args.size()));
      }
      return make_app(std::move(name), std::move(args));
    }
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == name) return make_bound(scope_.size() - 1 - i);
    }
    return make_var(std::move(name));
  }

  std::vector<Token> tokens_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool is_identifier(std::string_view word) {
  if (word.empty() || is_keyword(word)) return false;
  if (!std::isalpha(static_cast<unsigned char>(word[0])) && word[0] != '_') return false;
  for (char c : word) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  }
  return true;
}

Term parse_term(std::string_view text, const Signature& sig) { return Parser(text, sig).whole_term(); }

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).whole_formula(); }

}  // namespace epsilon
