#include "pegg/parse.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <vector>

namespace pegg {

namespace {

struct RawTerm {
  Word coef = 1, base = 0, exp = 0;
  Natural value() const { return to_natural(coef) * pow_word(base, exp); }
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char ch) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == ch) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }
  Word number() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    const Natural n(s_.substr(start, i_ - start), 10);
    if (!fits_word(n)) fail("number exceeds 64 bits");
    return to_word(n);
  }
  bool done() {
    skip_ws();
    return i_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(i_ + 1) + " in '" + s_ + "'");
  }

  RawTerm term() {
    RawTerm t;
    const Word first = number();
    if (eat('*')) {
      t.coef = first;
      t.base = number();
    } else {
      t.base = first;
    }
    expect('^');
    t.exp = number();
    return t;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

OriginalEquation parse_equation(const std::string& text) {
  Lexer lx(text);
  std::array<RawTerm, 3> t;
  t[0] = lx.term();
  lx.expect('+');
  t[1] = lx.term();
  lx.expect('=');
  t[2] = lx.term();
  if (!lx.done()) lx.fail("trailing input");

  std::optional<int> c_idx;
  int with_coef = 0;
  for (int i = 0; i < 3; ++i)
    if (t[i].coef > 1) {
      ++with_coef;
      c_idx = i;
    }
  if (with_coef != 1) {
    c_idx.reset();
    for (int i = 0; i < 3 && !c_idx; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      if (t[j].exp == t[k].exp && t[i].exp != t[j].exp) c_idx = i;
    }
    if (!c_idx) c_idx = 2;
  }

  OriginalEquation eq;
  auto place = [&](Term where, const RawTerm& r) {
    switch (where) {
      case Term::a: eq.d = r.coef, eq.a = r.base, eq.exps.x = r.exp; break;
      case Term::b: eq.e = r.coef, eq.b = r.base, eq.exps.y = r.exp; break;
      case Term::c: eq.f = r.coef, eq.c = r.base, eq.exps.z = r.exp; break;
    }
  };
  place(Term::c, t[*c_idx]);
  if (*c_idx == 2) {
    eq.perm = Permutation::cz_minus_ax;
    const bool first_larger = t[0].value() >= t[1].value();
    place(Term::a, first_larger ? t[0] : t[1]);
    place(Term::b, first_larger ? t[1] : t[0]);
  } else {
    eq.perm = Permutation::ax_minus_cz;
    place(Term::a, t[2]);
    place(Term::b, t[1 - *c_idx]);
  }
  return eq;
}

}  // namespace pegg
