#include "mfrag/partial_field.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mfrag {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail("ArithmeticOverflow", "integer overflow in polynomial arithmetic");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail("ArithmeticOverflow", "integer overflow in polynomial arithmetic");
  return r;
}

uint16_t pack(int e1, int e2) {
  if (e1 < 0 || e2 < 0 || e1 > 255 || e2 > 255) fail("ArithmeticOverflow", "exponent out of range");
  return static_cast<uint16_t>((e1 << 8) | e2);
}

int exp1(uint16_t k) { return k >> 8; }
int exp2(uint16_t k) { return k & 0xff; }

}  // namespace

Poly Poly::constant(long long c) {
  Poly p;
  if (c != 0) p.terms.push_back({0, c});
  return p;
}

Poly Poly::variable(int var) {
  Poly p;
  p.terms.push_back({pack(var == 0 ? 1 : 0, var == 0 ? 0 : 1), 1});
  return p;
}

bool Poly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms[0].first == 0);
}

long long Poly::constant_value() const {
  return terms.empty() ? 0 : terms[0].second;
}

std::pair<uint16_t, long long> Poly::leading() const { return terms.back(); }

Poly poly_add(const Poly& p, const Poly& q) {
  Poly r;
  size_t i = 0, j = 0;
  while (i < p.terms.size() || j < q.terms.size()) {
    if (j == q.terms.size() || (i < p.terms.size() && p.terms[i].first < q.terms[j].first)) {
      r.terms.push_back(p.terms[i++]);
    } else if (i == p.terms.size() || q.terms[j].first < p.terms[i].first) {
      r.terms.push_back(q.terms[j++]);
    } else {
      long long c = checked_add(p.terms[i].second, q.terms[j].second);
      if (c != 0) r.terms.push_back({p.terms[i].first, c});
      ++i, ++j;
    }
  }
  return r;
}

Poly poly_neg(const Poly& p) {
  Poly r = p;
  for (auto& t : r.terms) t.second = -t.second;
  return r;
}

Poly poly_sub(const Poly& p, const Poly& q) { return poly_add(p, poly_neg(q)); }

Poly poly_scale(const Poly& p, long long c) {
  if (c == 0) return Poly{};
  Poly r = p;
  for (auto& t : r.terms) t.second = checked_mul(t.second, c);
  return r;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r;
  for (const auto& [kp, cp] : p.terms) {
    Poly shifted;
    shifted.terms.reserve(q.terms.size());
    for (const auto& [kq, cq] : q.terms) {
      shifted.terms.push_back({pack(exp1(kp) + exp1(kq), exp2(kp) + exp2(kq)), checked_mul(cp, cq)});
    }
    r = poly_add(r, shifted);
  }
  return r;
}

std::optional<Poly> poly_div_exact(const Poly& p, const Poly& q) {
  if (q.is_zero()) fail("InternalError", "division by zero polynomial");
  Poly quot, rem = p;
  auto [kq, cq] = q.leading();
  while (!rem.is_zero()) {
    auto [kr, cr] = rem.leading();
    int d1 = exp1(kr) - exp1(kq), d2 = exp2(kr) - exp2(kq);
    if (d1 < 0 || d2 < 0 || cr % cq != 0) return std::nullopt;
    Poly t;
    t.terms.push_back({pack(d1, d2), cr / cq});
    quot = poly_add(quot, t);
    rem = poly_sub(rem, poly_mul(t, q));
  }
  return quot;
}

long long poly_content(const Poly& p) {
  long long g = 0;
  for (const auto& [k, c] : p.terms) g = std::gcd(g, c < 0 ? -c : c);
  return g;
}

// ---------------------------------------------------------------------------

PartialField PartialField::make(const std::string& name) {
  if (name == "regular") return PartialField(FieldKind::Regular, 0);
  if (name == "dyadic") return PartialField(FieldKind::Dyadic, 0);
  if (name == "near-regular") return PartialField(FieldKind::NearRegular, 0);
  if (name == "2-regular") return PartialField(FieldKind::TwoRegular, 0);
  if (name.size() >= 5 && name.substr(0, 3) == "GF(" && name.back() == ')') {
    std::string inner = name.substr(3, name.size() - 4);
    bool digits = !inner.empty() && std::all_of(inner.begin(), inner.end(), [](unsigned char c) { return std::isdigit(c); });
    if (digits) {
      long q = std::stol(inner);
      if (q == 4) return PartialField(FieldKind::GF4, 0);
      for (int p : {2, 3, 5, 7, 11, 13})
        if (q == p) return PartialField(FieldKind::FinitePrime, p);
    }
  }
  fail("UnknownField", "unsupported partial field '" + name + "'");
}

std::string PartialField::name() const {
  switch (kind_) {
    case FieldKind::FinitePrime: return "GF(" + std::to_string(prime_) + ")";
    case FieldKind::GF4: return "GF(4)";
    case FieldKind::Regular: return "regular";
    case FieldKind::Dyadic: return "dyadic";
    case FieldKind::NearRegular: return "near-regular";
    case FieldKind::TwoRegular: return "2-regular";
  }
  return "?";
}

int PartialField::num_vars() const {
  if (kind_ == FieldKind::NearRegular) return 1;
  if (kind_ == FieldKind::TwoRegular) return 2;
  return 0;
}

std::vector<std::string> PartialField::generator_names() const {
  switch (kind_) {
    case FieldKind::Regular: return {"-1"};
    case FieldKind::Dyadic: return {"-1", "2"};
    case FieldKind::NearRegular: return {"-1", "a", "(1-a)"};
    case FieldKind::TwoRegular: return {"-1", "a1", "a2", "(1-a1)", "(1-a2)", "(a1-a2)"};
    case FieldKind::GF4: return {"-1", "w", "w+1"};
    case FieldKind::FinitePrime: {
      std::vector<std::string> g = {"-1"};
      for (int v = 2; v < prime_; ++v) g.push_back(std::to_string(v));
      return g;
    }
  }
  return {};
}

std::vector<Poly> PartialField::generator_polys() const {
  Poly a1 = Poly::variable(0), a2 = Poly::variable(1), one = Poly::constant(1);
  switch (kind_) {
    case FieldKind::NearRegular: return {a1, poly_sub(one, a1)};
    case FieldKind::TwoRegular:
      return {a1, a2, poly_sub(one, a1), poly_sub(one, a2), poly_sub(a1, a2)};
    default: return {};
  }
}

PFElement PartialField::make_sym(Poly num, Poly den) const {
  PFElement e;
  e.kind = kind_;
  e.prime = prime_;
  if (num.is_zero()) {
    e.num = Poly::zero();
    e.den = Poly::constant(1);
    return e;
  }
  // Cancel every shared non-constant generator factor, then shared integer
  // content; normalize the denominator's leading coefficient positive.
  for (const Poly& g : generator_polys()) {
    for (;;) {
      auto qd = poly_div_exact(den, g);
      if (!qd) break;
      auto qn = poly_div_exact(num, g);
      if (!qn) break;
      num = *qn;
      den = *qd;
    }
  }
  long long c = std::gcd(poly_content(num), poly_content(den));
  if (c > 1) {
    for (auto& t : num.terms) t.second /= c;
    for (auto& t : den.terms) t.second /= c;
  }
  if (den.leading().second < 0) {
    num = poly_neg(num);
    den = poly_neg(den);
  }
  e.num = std::move(num);
  e.den = std::move(den);
  return e;
}

PFElement PartialField::zero() const { return from_int(0); }
PFElement PartialField::one() const { return from_int(1); }
PFElement PartialField::minus_one() const { return from_int(-1); }

PFElement PartialField::from_int(long long v) const {
  PFElement e;
  e.kind = kind_;
  e.prime = prime_;
  if (kind_ == FieldKind::FinitePrime) {
    long long r = v % prime_;
    if (r < 0) r += prime_;
    e.fin = static_cast<uint8_t>(r);
  } else if (kind_ == FieldKind::GF4) {
    e.fin = static_cast<uint8_t>(((v % 2) + 2) % 2);
  } else {
    e.num = Poly::constant(v);
    e.den = Poly::constant(1);
  }
  return e;
}

void PartialField::check(const PFElement& e) const {
  if (e.kind != kind_ || e.prime != prime_)
    fail("DescriptorMismatch", "element does not belong to " + name());
}

bool PartialField::is_zero(const PFElement& e) const {
  check(e);
  return finite() ? e.fin == 0 : e.num.is_zero();
}

bool PartialField::is_one(const PFElement& e) const {
  check(e);
  if (finite()) return e.fin == 1;
  return e.num == Poly::constant(1) && e.den == Poly::constant(1);
}

namespace {
uint8_t gf4_mul(uint8_t x, uint8_t y) {
  // bits: b0 + b1*w with w^2 = w + 1
  int a = x & 1, b = (x >> 1) & 1, c = y & 1, d = (y >> 1) & 1;
  int bd = b & d;
  return static_cast<uint8_t>(((a & c) ^ bd) | ((((a & d) ^ (b & c)) ^ bd) << 1));
}
}  // namespace

PFElement PartialField::add(const PFElement& a, const PFElement& b) const {
  check(a);
  check(b);
  PFElement e;
  e.kind = kind_;
  e.prime = prime_;
  if (kind_ == FieldKind::FinitePrime) {
    e.fin = static_cast<uint8_t>((a.fin + b.fin) % prime_);
    return e;
  }
  if (kind_ == FieldKind::GF4) {
    e.fin = a.fin ^ b.fin;
    return e;
  }
  return make_sym(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)), poly_mul(a.den, b.den));
}

PFElement PartialField::neg(const PFElement& a) const {
  check(a);
  PFElement e = a;
  if (kind_ == FieldKind::FinitePrime) {
    e.fin = static_cast<uint8_t>((prime_ - a.fin) % prime_);
    return e;
  }
  if (kind_ == FieldKind::GF4) return e;  // characteristic 2
  e.num = poly_neg(e.num);
  return e;
}

PFElement PartialField::sub(const PFElement& a, const PFElement& b) const { return add(a, neg(b)); }

PFElement PartialField::mul(const PFElement& a, const PFElement& b) const {
  check(a);
  check(b);
  PFElement e;
  e.kind = kind_;
  e.prime = prime_;
  if (kind_ == FieldKind::FinitePrime) {
    e.fin = static_cast<uint8_t>((a.fin * b.fin) % prime_);
    return e;
  }
  if (kind_ == FieldKind::GF4) {
    e.fin = gf4_mul(a.fin, b.fin);
    return e;
  }
  return make_sym(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

PFElement PartialField::inv(const PFElement& a) const {
  check(a);
  if (is_zero(a)) fail("NotInvertible", "zero has no inverse in " + name());
  PFElement e;
  e.kind = kind_;
  e.prime = prime_;
  if (kind_ == FieldKind::FinitePrime) {
    int r = 1, base = a.fin, k = prime_ - 2;
    while (k > 0) {
      if (k & 1) r = r * base % prime_;
      base = base * base % prime_;
      k >>= 1;
    }
    e.fin = static_cast<uint8_t>(r);
    return e;
  }
  if (kind_ == FieldKind::GF4) {
    e.fin = a.fin == 1 ? 1 : (a.fin == 2 ? 3 : 2);  // w <-> w+1
    return e;
  }
  if (!is_member(a)) fail("NotInvertible", format(a) + " is not a unit of " + name());
  return make_sym(a.den, a.num);
}

namespace {

// Factor p as sign * c * prod gens[i]^mult[i] * rest, dividing out each
// generator as often as possible.
struct Factored {
  int sign = 1;
  long long constant = 1;  // absolute value of the residual constant
  std::vector<int> mult;
  bool monomial = false;  // true iff the residual is a constant
};

Factored factor_over(const std::vector<Poly>& gens, Poly p) {
  Factored f;
  f.mult.assign(gens.size(), 0);
  if (p.is_zero()) fail("InternalError", "factoring zero");
  for (size_t i = 0; i < gens.size(); ++i) {
    for (;;) {
      auto q = poly_div_exact(p, gens[i]);
      if (!q) break;
      p = *q;
      ++f.mult[i];
    }
  }
  if (p.is_constant()) {
    long long c = p.constant_value();
    f.sign = c < 0 ? -1 : 1;
    f.constant = c < 0 ? -c : c;
    f.monomial = true;
  }
  return f;
}

bool power_of_two(long long c, int* e) {
  *e = 0;
  while (c % 2 == 0) {
    c /= 2;
    ++*e;
  }
  return c == 1;
}

}  // namespace

bool PartialField::is_member(const PFElement& e) const {
  check(e);
  if (finite()) return true;
  if (e.num.is_zero()) return true;
  auto gens = generator_polys();
  Factored n = factor_over(gens, e.num);
  if (!n.monomial) return false;
  Factored d = factor_over(gens, e.den);
  if (!d.monomial) fail("InternalError", "denominator is not a generator monomial");
  int en, ed;
  if (kind_ == FieldKind::Dyadic) return power_of_two(n.constant, &en) && power_of_two(d.constant, &ed);
  return n.constant == 1 && d.constant == 1;
}

// --------------------------- parsing / formatting ---------------------------

namespace {

[[noreturn]] void parse_fail(size_t offset, const std::string& msg) {
  fail("ParseError", "byte " + std::to_string(offset) + ": " + msg);
}

struct PolyTextParser {
  // Parses the canonical polynomial text used inside bracketed literals:
  // terms joined by '+'/'-', each term [coeff]['*' var['^' uint]]...
  const std::string& s;
  size_t pos;
  int nvars;

  Poly run() {
    Poly acc;
    bool first = true;
    while (pos < s.size() && s[pos] != '/' && s[pos] != ']') {
      int sign = 1;
      if (s[pos] == '+') {
        ++pos;
      } else if (s[pos] == '-') {
        sign = -1;
        ++pos;
      } else if (!first) {
        parse_fail(pos, "expected '+' or '-' between terms");
      }
      acc = poly_add(acc, term(sign));
      first = false;
    }
    if (first) parse_fail(pos, "empty polynomial");
    return acc;
  }

  Poly term(int sign) {
    long long coeff = 1;
    bool saw_coeff = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coeff = uint_at();
      saw_coeff = true;
    }
    int e[2] = {0, 0};
    bool saw_var = false;
    for (;;) {
      size_t save = pos;
      if (pos < s.size() && s[pos] == '*' && (saw_coeff || saw_var)) ++pos;
      if (pos >= s.size() || s[pos] != 'a') {
        pos = save;
        break;
      }
      ++pos;
      int var = 0;
      if (nvars == 2) {
        if (pos >= s.size() || (s[pos] != '1' && s[pos] != '2')) parse_fail(pos, "expected a1 or a2");
        var = s[pos] - '1';
        ++pos;
      }
      int ex = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        ex = static_cast<int>(uint_at());
      }
      e[var] += ex;
      saw_var = true;
    }
    if (!saw_coeff && !saw_var) parse_fail(pos, "expected term");
    Poly m;
    if (coeff != 0) m.terms.push_back({pack(e[0], e[1]), sign * coeff});
    return m;
  }

  long long uint_at() {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) parse_fail(pos, "expected digits");
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = checked_mul(v, 10);
      v = checked_add(v, s[pos] - '0');
      ++pos;
    }
    return v;
  }

  uint16_t pack(int e1, int e2) { return static_cast<uint16_t>((e1 << 8) | e2); }
};

std::string poly_to_text(const Poly& p, int nvars) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    auto [k, c] = *it;
    int e1 = k >> 8, e2 = k & 0xff;
    bool lead = out.empty();
    if (c < 0) {
      out += '-';
    } else if (!lead) {
      out += '+';
    }
    long long ac = c < 0 ? -c : c;
    std::string vars;
    auto emit_var = [&](const char* nm, int e) {
      if (e == 0) return;
      if (!vars.empty()) vars += '*';
      vars += nm;
      if (e != 1) vars += "^" + std::to_string(e);
    };
    emit_var(nvars == 1 ? "a" : "a1", e1);
    emit_var("a2", e2);
    if (vars.empty()) {
      out += std::to_string(ac);
    } else {
      if (ac != 1) out += std::to_string(ac) + "*";
      out += vars;
    }
  }
  return out;
}

}  // namespace

PFElement PartialField::parse(const std::string& text) const {
  if (text.empty()) parse_fail(0, "empty element literal");
  if (text[0] == '[') {
    if (finite()) parse_fail(0, "bracketed literals are not valid over " + name());
    if (text.back() != ']') parse_fail(text.size(), "missing ']'");
    PolyTextParser pp{text, 1, num_vars()};
    Poly num = pp.run();
    Poly den = Poly::constant(1);
    if (pp.pos < text.size() && text[pp.pos] == '/') {
      ++pp.pos;
      den = pp.run();
      if (den.is_zero()) parse_fail(pp.pos, "zero denominator");
    }
    if (pp.pos != text.size() - 1) parse_fail(pp.pos, "trailing characters");
    return make_sym(num, den);
  }

  size_t pos = 0;
  bool negated = false;
  if (text[pos] == '-') {
    negated = true;
    ++pos;
  }
  if (pos >= text.size()) parse_fail(pos, "expected factor");

  PFElement acc = one();
  bool expect_factor = true;
  while (expect_factor) {
    // factor := gen ['^' int] | uint
    std::string gen;
    size_t fstart = pos;
    char c = text[pos];
    if (c == '(') {
      size_t close = text.find(')', pos);
      if (close == std::string::npos) parse_fail(pos, "missing ')'");
      gen = text.substr(pos, close - pos + 1);
      pos = close + 1;
    } else if (c == 'w') {
      ++pos;
      if (text.compare(pos, 2, "+1") == 0) {
        gen = "w+1";
        pos += 2;
      } else {
        gen = "w";
      }
    } else if (c == 'a') {
      ++pos;
      if (pos < text.size() && (text[pos] == '1' || text[pos] == '2')) {
        gen = std::string("a") + text[pos];
        ++pos;
      } else {
        gen = "a";
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      std::string digits = text.substr(start, pos - start);
      bool exponentiated = pos < text.size() && text[pos] == '^';
      if (digits == "2" && kind_ == FieldKind::Dyadic && exponentiated) {
        gen = "2";
      } else {
        long long v = std::stoll(digits);
        if (kind_ == FieldKind::FinitePrime && v >= prime_)
          parse_fail(start, "residues over " + name() + " are restricted to 0.." + std::to_string(prime_ - 1));
        if (kind_ == FieldKind::GF4 && v >= 2)
          parse_fail(start, "GF(4) literals use the alphabet {0,1,w,w+1}");
        if (exponentiated) parse_fail(pos, "'^' is only valid after a generator");
        acc = mul(acc, from_int(v));
      }
    } else {
      parse_fail(pos, "unexpected character '" + std::string(1, c) + "'");
    }

    if (!gen.empty()) {
      PFElement base = zero();
      Poly one_p = Poly::constant(1);
      if (gen == "a" && kind_ == FieldKind::NearRegular) {
        base = make_sym(Poly::variable(0), one_p);
      } else if (gen == "a1" && kind_ == FieldKind::TwoRegular) {
        base = make_sym(Poly::variable(0), one_p);
      } else if (gen == "a2" && kind_ == FieldKind::TwoRegular) {
        base = make_sym(Poly::variable(1), one_p);
      } else if (gen == "(1-a)" && kind_ == FieldKind::NearRegular) {
        base = make_sym(poly_sub(one_p, Poly::variable(0)), one_p);
      } else if (gen == "(1-a1)" && kind_ == FieldKind::TwoRegular) {
        base = make_sym(poly_sub(one_p, Poly::variable(0)), one_p);
      } else if (gen == "(1-a2)" && kind_ == FieldKind::TwoRegular) {
        base = make_sym(poly_sub(one_p, Poly::variable(1)), one_p);
      } else if (gen == "(a1-a2)" && kind_ == FieldKind::TwoRegular) {
        base = make_sym(poly_sub(Poly::variable(0), Poly::variable(1)), one_p);
      } else if (gen == "w" && kind_ == FieldKind::GF4) {
        base.kind = kind_;
        base.fin = 2;
      } else if (gen == "w+1" && kind_ == FieldKind::GF4) {
        base.kind = kind_;
        base.fin = 3;
      } else if (gen == "2" && kind_ == FieldKind::Dyadic) {
        base = from_int(2);
      } else {
        parse_fail(fstart, "'" + gen + "' is not a generator of " + name());
      }
      long long ex = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        bool eneg = false;
        if (pos < text.size() && text[pos] == '-') {
          eneg = true;
          ++pos;
        }
        size_t dstart = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == dstart) parse_fail(pos, "expected exponent digits");
        ex = std::stoll(text.substr(dstart, pos - dstart));
        if (eneg) ex = -ex;
      }
      PFElement powed = one();
      PFElement b = ex < 0 ? inv(base) : base;
      for (long long i = 0; i < (ex < 0 ? -ex : ex); ++i) powed = mul(powed, b);
      acc = mul(acc, powed);
    }

    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      if (pos >= text.size()) parse_fail(pos, "expected factor after '*'");
      expect_factor = true;
    } else {
      expect_factor = false;
    }
  }
  if (pos != text.size()) parse_fail(pos, "trailing characters");
  return negated ? neg(acc) : acc;
}

std::string PartialField::format(const PFElement& e) const {
  check(e);
  if (kind_ == FieldKind::FinitePrime) return std::to_string(static_cast<int>(e.fin));
  if (kind_ == FieldKind::GF4) {
    static const char* names[4] = {"0", "1", "w", "w+1"};
    return names[e.fin & 3];
  }
  if (e.num.is_zero()) return "0";
  if (is_member(e)) {
    auto gens = generator_polys();
    Factored n = factor_over(gens, e.num);
    Factored d = factor_over(gens, e.den);
    int sign = n.sign * d.sign;
    std::vector<std::pair<std::string, int>> factors;
    if (kind_ == FieldKind::Dyadic) {
      int en = 0, ed = 0;
      power_of_two(n.constant, &en);
      power_of_two(d.constant, &ed);
      if (en - ed != 0) factors.push_back({"2", en - ed});
    }
    std::vector<std::string> gnames;
    if (kind_ == FieldKind::NearRegular) gnames = {"a", "(1-a)"};
    if (kind_ == FieldKind::TwoRegular) gnames = {"a1", "a2", "(1-a1)", "(1-a2)", "(a1-a2)"};
    for (size_t i = 0; i < gens.size(); ++i) {
      int ex = n.mult[i] - d.mult[i];
      if (ex != 0) factors.push_back({gnames[i], ex});
    }
    std::string out = sign < 0 ? "-" : "";
    if (factors.empty()) return out + "1";
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) out += '*';
      out += factors[i].first;
      if (factors[i].second != 1) out += "^" + std::to_string(factors[i].second);
    }
    return out;
  }
  // Plain (possibly negative) integers stay inside the official grammar.
  if (e.den == Poly::constant(1) && e.num.is_constant()) return std::to_string(e.num.constant_value());
  std::string out = "[" + poly_to_text(e.num, num_vars());
  if (e.den != Poly::constant(1)) out += "/" + poly_to_text(e.den, num_vars());
  return out + "]";
}

std::vector<PFElement> PartialField::elements() const {
  if (!finite()) fail("InternalError", "elements() requires a finite kind");
  std::vector<PFElement> out;
  int n = kind_ == FieldKind::GF4 ? 4 : prime_;
  for (int v = 0; v < n; ++v) {
    PFElement e;
    e.kind = kind_;
    e.prime = prime_;
    e.fin = static_cast<uint8_t>(v);
    out.push_back(e);
  }
  return out;
}

}  // namespace mfrag
