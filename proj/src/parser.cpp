#include <cctype>
#include <string>

#include "gevrey/ode.hpp"

namespace gevrey {

namespace {

constexpr unsigned kMaxDerivativeIndex = 32;

struct Token {
  enum Kind { Num, Imag, Zvar, Uvar, Dop, LParen, RParen, Caret, Star, Plus, Minus, Comma, Slash, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

const char* token_name(Token::Kind k) {
  switch (k) {
    case Token::Num: return "number";
    case Token::Imag: return "i";
    case Token::Zvar: return "z";
    case Token::Uvar: return "u";
    case Token::Dop: return "D";
    case Token::LParen: return "'('";
    case Token::RParen: return "')'";
    case Token::Caret: return "'^'";
    case Token::Star: return "'*'";
    case Token::Plus: return "'+'";
    case Token::Minus: return "'-'";
    case Token::Comma: return "','";
    case Token::Slash: return "'/'";
    case Token::End: return "end of input";
  }
  return "?";
}

class Parser {
public:
  Parser(const std::string& text, int declared) : text_(text), declared_(declared) { advance(); }

  PolyODE run() {
    PolyVal p = expr();
    if (cur_.kind != Token::End)
      fail("unexpected " + std::string(token_name(cur_.kind)) + " after end of expression");
    if (!saw_u_) raise(Errc::InvalidInput, "equation does not involve u");
    unsigned m;
    if (declared_ >= 0) {
      m = static_cast<unsigned>(declared_);
    } else {
      m = max_index_;
      if (m == 0)
        raise(Errc::InvalidInput, "equation has no derivative of u (order would be 0)");
    }
    if (m == 0) raise(Errc::InvalidInput, "order must be at least 1");
    return PolyODE(m, std::move(p));
  }

private:
  [[noreturn]] void fail(const std::string& what) {
    raise(Errc::SyntaxError, what, "offset=" + std::to_string(cur_.pos));
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    cur_.pos = pos_;
    if (pos_ >= text_.size()) {
      cur_ = {Token::End, "", pos_};
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      cur_ = {Token::Num, text_.substr(start, pos_ - start), start};
      return;
    }
    Token::Kind k;
    switch (c) {
      case 'i': k = Token::Imag; break;
      case 'z': k = Token::Zvar; break;
      case 'u': k = Token::Uvar; break;
      case 'D': k = Token::Dop; break;
      case '(': k = Token::LParen; break;
      case ')': k = Token::RParen; break;
      case '^': k = Token::Caret; break;
      case '*': k = Token::Star; break;
      case '+': k = Token::Plus; break;
      case '-': k = Token::Minus; break;
      case ',': k = Token::Comma; break;
      case '/': k = Token::Slash; break;
      default:
        cur_ = {Token::End, std::string(1, c), pos_};
        fail("unexpected character '" + std::string(1, c) + "'");
    }
    cur_ = {k, std::string(1, c), pos_};
    ++pos_;
  }

  bool accept(Token::Kind k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }

  Token expect(Token::Kind k, const char* where) {
    if (cur_.kind != k)
      fail("expected " + std::string(token_name(k)) + " in " + where + ", found " +
           token_name(cur_.kind));
    Token t = cur_;
    advance();
    return t;
  }

  // NUM ['/' NUM]; the leading NUM token is already current.
  Rational rational_tail() {
    Token num = expect(Token::Num, "number");
    Rational r(num.text);
    if (cur_.kind == Token::Slash) {
      advance();
      Token den = expect(Token::Num, "denominator");
      Rational d(den.text);
      if (sgn(d) == 0) raise(Errc::NonPolynomial, "zero denominator in rational literal");
      r /= d;
    }
    r.canonicalize();
    return r;
  }

  static PolyVal constant(GaussianRational c) {
    if (c.is_zero()) return {};
    return {OdeMonomial{std::move(c), Rational(0), {}}};
  }

  PolyVal expr() {
    bool neg = accept(Token::Minus);
    PolyVal acc = term();
    if (neg) acc = poly_neg(acc);
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      bool minus = cur_.kind == Token::Minus;
      advance();
      PolyVal rhs = term();
      acc = poly_add(acc, minus ? poly_neg(rhs) : rhs);
    }
    return acc;
  }

  PolyVal term() {
    PolyVal acc = factor();
    while (accept(Token::Star)) acc = poly_mul(acc, factor());
    return acc;
  }

  // Power suffix for a non-z base: a nonnegative integer, optionally in parens.
  unsigned integer_power(const char* base) {
    bool parens = accept(Token::LParen);
    if (cur_.kind == Token::Minus || cur_.kind == Token::Imag)
      raise(Errc::NonPolynomial,
            std::string("power of ") + base + " must be a nonnegative integer");
    Token num = expect(Token::Num, "power");
    if (cur_.kind == Token::Slash)
      raise(Errc::NonPolynomial,
            std::string("power of ") + base + " must be an integer, not a fraction");
    if (parens) expect(Token::RParen, "power");
    if (num.text.size() > 6) raise(Errc::NonPolynomial, "power too large");
    unsigned long v = std::stoul(num.text);
    if (v > 64) raise(Errc::NonPolynomial, "power too large");
    return static_cast<unsigned>(v);
  }

  // Power suffix for z: a nonnegative rational, optionally in parens.
  Rational z_power() {
    bool parens = accept(Token::LParen);
    if (cur_.kind == Token::Imag) raise(Errc::NonPolynomial, "complex power of z");
    bool neg = accept(Token::Minus);
    Rational r = rational_tail();
    if (parens) expect(Token::RParen, "power of z");
    if (neg || sgn(r) < 0) raise(Errc::NonPolynomial, "negative power of z");
    return r;
  }

  PolyVal jet_variable(unsigned index) {
    saw_u_ = true;
    if (declared_ >= 0 && index > static_cast<unsigned>(declared_))
      raise(Errc::IndexOutOfRange, "derivative index " + std::to_string(index) +
                                       " exceeds the declared order " + std::to_string(declared_));
    if (index > kMaxDerivativeIndex)
      raise(Errc::IndexOutOfRange, "derivative index " + std::to_string(index) + " too large");
    if (index > max_index_) max_index_ = index;
    OdeMonomial m{GaussianRational::from_long(1), Rational(0), std::vector<unsigned>(index + 1, 0)};
    m.q[index] = 1;
    return {std::move(m)};
  }

  PolyVal factor() {
    switch (cur_.kind) {
      case Token::Num: {
        Rational r = rational_tail();
        PolyVal base = constant(GaussianRational(std::move(r)));
        if (accept(Token::Caret)) return poly_pow(base, integer_power("a constant"));
        return base;
      }
      case Token::Imag: {
        advance();
        PolyVal base = constant(GaussianRational(Rational(0), Rational(1)));
        if (accept(Token::Caret)) return poly_pow(base, integer_power("i"));
        return base;
      }
      case Token::Zvar: {
        advance();
        Rational beta(1);
        if (accept(Token::Caret)) beta = z_power();
        if (sgn(beta) == 0) return constant(GaussianRational::from_long(1));
        return {OdeMonomial{GaussianRational::from_long(1), std::move(beta), {}}};
      }
      case Token::Uvar: {
        advance();
        PolyVal base = jet_variable(0);
        if (accept(Token::Caret)) return poly_pow(base, integer_power("u"));
        return base;
      }
      case Token::Dop: {
        advance();
        expect(Token::LParen, "derivative");
        expect(Token::Uvar, "derivative");
        expect(Token::Comma, "derivative");
        Token num = expect(Token::Num, "derivative index");
        expect(Token::RParen, "derivative");
        if (num.text.size() > 6)
          raise(Errc::IndexOutOfRange, "derivative index too large");
        unsigned long idx = std::stoul(num.text);
        PolyVal base = jet_variable(static_cast<unsigned>(idx));
        if (accept(Token::Caret)) return poly_pow(base, integer_power("a derivative"));
        return base;
      }
      case Token::LParen: {
        advance();
        PolyVal inner = expr();
        expect(Token::RParen, "parenthesized expression");
        if (accept(Token::Caret)) return poly_pow(inner, integer_power("a parenthesized expression"));
        return inner;
      }
      default:
        fail("expected a factor, found " + std::string(token_name(cur_.kind)));
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token cur_{Token::End, "", 0};
  int declared_;
  unsigned max_index_ = 0;
  bool saw_u_ = false;
};

}  // namespace

PolyODE parse_equation(const std::string& text, int declared_order) {
  Parser p(text, declared_order);
  return p.run();
}

}  // namespace gevrey
