#ifndef FROBRIG_PARSE_HPP
#define FROBRIG_PARSE_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "lpoly.hpp"
#include "perfection.hpp"

namespace frobrig {

namespace detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  std::uint64_t uinteger() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::uint64_t{1} << 62)) fail("number too large");
      ++pos_;
    }
    return v;
  }
  std::int64_t integer() {
    skip_ws();
    bool neg = accept('-');
    std::uint64_t v = uinteger();
    return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError(why + " at position " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Field literals: GF(p), GF(p^e), GF(p^e; m=[c0,...,ce]) with the modulus
/// coefficients listed low to high.
inline FieldCtxPtr parse_field(std::string_view text) {
  detail::Scanner s(text);
  if (!s.accept_word("GF")) s.fail("expected GF(...)");
  s.expect('(');
  std::uint64_t p = s.uinteger();
  if (p < 2 || p > 0xffffffffu || !detail::is_prime_u32(static_cast<std::uint32_t>(p)))
    s.fail("base must be a prime (composite orders use GF(p^e))");
  std::uint64_t e = 1;
  if (s.accept('^')) {
    e = s.uinteger();
    if (e == 0 || e > 4096) s.fail("extension degree out of range");
  }
  std::optional<std::vector<std::uint32_t>> modulus;
  if (s.accept(';')) {
    if (!s.accept_word("m")) s.fail("expected m=[...] after ';'");
    s.expect('=');
    s.expect('[');
    std::vector<std::uint32_t> coeffs;
    for (;;) {
      std::int64_t c = s.integer();
      std::int64_t pp = static_cast<std::int64_t>(p);
      coeffs.push_back(static_cast<std::uint32_t>(((c % pp) + pp) % pp));
      if (!s.accept(',')) break;
    }
    s.expect(']');
    modulus = std::move(coeffs);
  }
  s.expect(')');
  if (!s.done()) s.fail("trailing input after field literal");
  return FieldCtx::create(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e),
                          std::move(modulus));
}

namespace detail {

// watom := 'w' ('^' uint)?
inline FieldElem parse_watom(Scanner& s, const FieldCtxPtr& F) {
  if (!s.accept('w')) s.fail("expected w");
  if (F->e() < 2)
    throw CoefficientOutOfField("w is only defined for extension fields (degree >= 2)");
  std::uint64_t j = 1;
  if (s.accept('^')) j = s.uinteger();
  return pow(F->gen(), static_cast<std::int64_t>(j));
}

// wpoly := [sign] wmono (sign wmono)*, wmono := uint ('*' watom)? | watom
inline FieldElem parse_wpoly(Scanner& s, const FieldCtxPtr& F) {
  FieldElem acc = F->zero();
  bool first = true;
  for (;;) {
    s.skip_ws();
    bool neg = false;
    if (s.accept('-'))
      neg = true;
    else if (s.accept('+')) {
    } else if (!first) {
      break;
    }
    FieldElem term = F->one();
    char c = s.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      term = F->from_int(static_cast<std::int64_t>(s.uinteger()));
      if (s.accept('*')) term *= parse_watom(s, F);
    } else if (c == 'w') {
      term = parse_watom(s, F);
    } else {
      s.fail("expected a coefficient term");
    }
    acc += neg ? -term : term;
    first = false;
    char nxt = s.peek();
    if (nxt != '+' && nxt != '-') break;
  }
  return acc;
}

}  // namespace detail

/// Polynomial text: signed sum of `c`, `t^k`, `c*t^k` with k a possibly
/// negative integer and c an integer, `w`-power, or parenthesized
/// `w`-polynomial. Examples: "t^2+t", "(w+1)*t^-3 + w*t^2 + 2".
inline LPoly parse_poly(std::string_view text, const FieldCtxPtr& F) {
  detail::Scanner s(text);
  LPoly out(F);
  bool first = true;
  for (;;) {
    s.skip_ws();
    bool neg = false;
    bool signed_term = false;
    if (s.accept('-')) {
      neg = true;
      signed_term = true;
    } else if (s.accept('+')) {
      if (first) s.fail("unexpected '+'");
      signed_term = true;
    } else if (!first && !s.done()) {
      s.fail("expected '+' or '-' between terms");
    }
    if (s.done()) {
      if (first || signed_term) s.fail("expected a term");
      break;
    }

    FieldElem coeff = F->one();
    bool have_coeff = false;
    char c = s.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff = F->from_int(static_cast<std::int64_t>(s.uinteger()));
      have_coeff = true;
    } else if (c == 'w') {
      coeff = detail::parse_watom(s, F);
      have_coeff = true;
    } else if (c == '(') {
      s.expect('(');
      coeff = detail::parse_wpoly(s, F);
      s.expect(')');
      if (F->e() < 2) throw CoefficientOutOfField("parenthesized coefficients need w");
      have_coeff = true;
    }

    std::int64_t exp = 0;
    bool have_mono = false;
    if (have_coeff) {
      if (s.accept('*')) {
        if (!s.accept('t')) s.fail("expected t after '*'");
        have_mono = true;
      }
    } else if (s.accept('t')) {
      have_mono = true;
    } else {
      s.fail("expected a term");
    }
    if (have_mono) {
      exp = 1;
      if (s.accept('^')) exp = s.integer();
    }

    out.add_term(exp, neg ? -coeff : coeff);
    first = false;
    if (s.done()) break;
  }
  return out;
}

/// Rational function text: "num / den" with polynomial parts, or a bare
/// polynomial.
inline RationalFn parse_rational(std::string_view text, const FieldCtxPtr& F) {
  std::size_t slash = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      slash = i;
      break;
    }
  }
  if (slash == std::string_view::npos) return RationalFn(parse_poly(text, F));
  return RationalFn(parse_poly(text.substr(0, slash), F),
                    parse_poly(text.substr(slash + 1), F));
}

/// "<poly> over <field>" convenience form.
inline std::pair<LPoly, FieldCtxPtr> parse_poly_over(std::string_view text) {
  const std::string_view kw = " over ";
  std::size_t at = text.find(kw);
  if (at == std::string_view::npos) throw ParseError("expected \"<poly> over <field>\"");
  FieldCtxPtr F = parse_field(text.substr(at + kw.size()));
  return {parse_poly(text.substr(0, at), F), F};
}

}  // namespace frobrig

#endif
