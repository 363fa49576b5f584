#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfrag/error.hpp"

namespace mfrag {

enum class FieldKind { FinitePrime, GF4, Regular, Dyadic, NearRegular, TwoRegular };

// Sparse polynomial over Z in at most two indeterminates (a1, a2).  Terms are
// kept sorted by packed exponent key (e1 << 8 | e2) with nonzero coefficients,
// so equal polynomials have identical term vectors.
struct Poly {
  std::vector<std::pair<uint16_t, long long>> terms;

  static Poly zero() { return Poly{}; }
  static Poly constant(long long c);
  static Poly variable(int var);  // 0 -> a1, 1 -> a2

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  long long constant_value() const;  // pre: is_constant()
  std::pair<uint16_t, long long> leading() const;  // pre: !is_zero()

  friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_neg(const Poly& p);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, long long c);
// Exact division; nullopt when q does not divide p over Z.
std::optional<Poly> poly_div_exact(const Poly& p, const Poly& q);
long long poly_content(const Poly& p);  // gcd of |coefficients|, 0 for zero

// An element of the ambient ring of a partial field.  Finite kinds use the
// residue byte; symbolic kinds use a reduced fraction num/den of integer
// polynomials whose denominator is a signed monomial in the declared
// generators.  Reduction is canonical, so operator== is plain payload
// equality.
struct PFElement {
  FieldKind kind = FieldKind::Regular;
  int prime = 0;    // FinitePrime only
  uint8_t fin = 0;  // residue mod p, or GF4 bits b0 + 2*b1 meaning b0 + b1*w
  Poly num, den;

  friend bool operator==(const PFElement&, const PFElement&) = default;
};

class PartialField {
 public:
  // Accepts "GF(q)" for q in {2,3,4,5,7,11,13}, "regular", "dyadic",
  // "near-regular", "2-regular".  Anything else: UnknownField.
  static PartialField make(const std::string& name);

  std::string name() const;
  FieldKind kind() const { return kind_; }
  int prime() const { return prime_; }
  bool finite() const { return kind_ == FieldKind::FinitePrime || kind_ == FieldKind::GF4; }
  bool symbolic() const { return !finite(); }
  int num_vars() const;
  bool same(const PartialField& o) const { return kind_ == o.kind_ && prime_ == o.prime_; }
  // Generator names of the unit group, "-1" included, in canonical order.
  std::vector<std::string> generator_names() const;
  // Non-constant generator polynomials (symbolic kinds), canonical order.
  std::vector<Poly> generator_polys() const;

  PFElement zero() const;
  PFElement one() const;
  PFElement minus_one() const;
  PFElement from_int(long long v) const;

  bool is_zero(const PFElement& e) const;
  bool is_one(const PFElement& e) const;
  PFElement add(const PFElement& a, const PFElement& b) const;
  PFElement sub(const PFElement& a, const PFElement& b) const;
  PFElement mul(const PFElement& a, const PFElement& b) const;
  PFElement neg(const PFElement& a) const;
  // Group inverse; NotInvertible on zero or on a ring element outside the
  // unit group.
  PFElement inv(const PFElement& a) const;
  // True iff e is zero or factors as +/- a product of integer powers of the
  // declared generators (always true for finite kinds).
  bool is_member(const PFElement& e) const;
  bool is_unit(const PFElement& e) const { return !is_zero(e) && is_member(e); }

  // Element-literal grammar:
  //   elem   := '0' | ['-'] factor ('*' factor)*
  //   factor := gen ['^' int] | uint
  //   gen    := 'a'|'a1'|'a2'|'(1-a)'|'(1-a1)'|'(1-a2)'|'(a1-a2)'|'w'|'w+1'|'2'
  // Finite fields accept bare residues; GF(5) rejects "7".  ParseError
  // messages carry the byte offset.  A bracketed extension "[p]" / "[p/q]"
  // round-trips ring elements that are not signed generator monomials.
  PFElement parse(const std::string& text) const;
  std::string format(const PFElement& e) const;

  // All ring elements, finite kinds only.
  std::vector<PFElement> elements() const;

 private:
  PartialField(FieldKind k, int p) : kind_(k), prime_(p) {}
  void check(const PFElement& e) const;
  PFElement make_sym(Poly num, Poly den) const;

  FieldKind kind_;
  int prime_;
};

}  // namespace mfrag
