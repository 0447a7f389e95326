#pragma once

// Exact arithmetic in the tower GF(p) < GF(q) < GF(q^3), q = p^k.
//
// Field elements are stored as integer codes: an element with coefficient
// vector (c0, c1, ..., c_{d-1}) over its base field has code
// c0 + c1*Q + c2*Q^2 + ... where Q is the base field order.  All arithmetic
// is table driven, which keeps the enumeration-heavy geometry code fast.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace boserep::gf {

using Code = uint32_t;

/// q mod 3 normalised to {-1,0,1}, and gcd(3, q-1).  These two values steer
/// every case split in the classification code.
struct Params {
  uint32_t q = 0;
  int n = 0;  // q = n (mod 3), n in {-1,0,1}
  int g = 1;  // gcd(3, q-1), in {1,3}
};

inline Params make_params(uint32_t q) {
  Params pr;
  pr.q = q;
  pr.n = (q % 3 == 2) ? -1 : static_cast<int>(q % 3);
  pr.g = (q % 3 == 1) ? 3 : 1;
  return pr;
}

inline bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// A finite field of order q with dense operation tables.
///
/// `lex_rank`/`lex_elem` give the canonical element order: coefficient
/// vectors over the prime field compared entrywise, low-degree coefficient
/// first.  Every deterministic enumeration downstream is defined in terms of
/// this order.
class SmallField {
 public:
  uint32_t q = 0;
  uint32_t p = 0;
  uint32_t deg = 1;  // degree over the prime field

  Code add(Code a, Code b) const { return add_t[a * q + b]; }
  Code sub(Code a, Code b) const { return add_t[a * q + neg_t[b]]; }
  Code mul(Code a, Code b) const { return mul_t[a * q + b]; }
  Code neg(Code a) const { return neg_t[a]; }
  Code inv(Code a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_t[a];
  }
  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  Code pow(Code a, uint64_t e) const {
    Code r = 1, b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  uint32_t lex_rank_of(Code a) const { return lex_rank[a]; }
  Code elem_at(uint32_t rank) const { return lex_elem[rank]; }

  std::vector<uint16_t> add_t, mul_t;
  std::vector<uint16_t> neg_t, inv_t;
  std::vector<uint32_t> lex_rank;
  std::vector<uint16_t> lex_elem;

  void build_lex_order() {
    // element order: coefficient vector over GF(p), low-degree first
    lex_rank.assign(q, 0);
    lex_elem.assign(q, 0);
    std::vector<std::pair<uint64_t, Code>> keyed(q);
    for (Code a = 0; a < q; ++a) {
      uint64_t key = 0;
      Code t = a;
      for (uint32_t i = 0; i < deg; ++i) {
        key = key * p + (t % p);
        t /= p;
      }
      // key now has the low-degree coefficient in the most significant slot
      keyed[a] = {key, a};
    }
    std::sort(keyed.begin(), keyed.end());
    for (uint32_t r = 0; r < q; ++r) {
      lex_elem[r] = static_cast<uint16_t>(keyed[r].second);
      lex_rank[keyed[r].second] = r;
    }
  }
};

inline SmallField make_prime_field(uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  SmallField f;
  f.q = p;
  f.p = p;
  f.deg = 1;
  f.add_t.resize(p * p);
  f.mul_t.resize(p * p);
  f.neg_t.resize(p);
  f.inv_t.resize(p);
  for (uint32_t a = 0; a < p; ++a) {
    f.neg_t[a] = static_cast<uint16_t>((p - a) % p);
    for (uint32_t b = 0; b < p; ++b) {
      f.add_t[a * p + b] = static_cast<uint16_t>((a + b) % p);
      f.mul_t[a * p + b] = static_cast<uint16_t>((a * b) % p);
    }
  }
  f.inv_t[0] = 0;
  for (uint32_t a = 1; a < p; ++a)
    for (uint32_t b = 1; b < p; ++b)
      if ((a * b) % p == 1) { f.inv_t[a] = static_cast<uint16_t>(b); break; }
  f.build_lex_order();
  return f;
}

// --- polynomial helpers over a SmallField -------------------------------
// Polynomials are coefficient vectors, low-degree first, no trailing zeros.

namespace detail {

inline void poly_trim(std::vector<Code>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<Code> poly_mulmod(const SmallField& F, const std::vector<Code>& a,
                                     const std::vector<Code>& b,
                                     const std::vector<Code>& mod) {
  std::vector<Code> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  poly_trim(r);
  // reduce modulo the monic polynomial `mod`
  size_t d = mod.size() - 1;
  while (r.size() > d) {
    Code lead = r.back();
    size_t shift = r.size() - 1 - d;
    if (lead != 0)
      for (size_t i = 0; i <= d; ++i)
        r[shift + i] = F.sub(r[shift + i], F.mul(lead, mod[i]));
    r.pop_back();
    poly_trim(r);
    if (r.size() <= d) break;
  }
  return r;
}

inline std::vector<Code> poly_powmod(const SmallField& F, std::vector<Code> base,
                                     uint64_t e, const std::vector<Code>& mod) {
  std::vector<Code> r{1};
  while (e) {
    if (e & 1) r = poly_mulmod(F, r, base, mod);
    base = poly_mulmod(F, base, base, mod);
    e >>= 1;
  }
  return r;
}

inline bool poly_is_one(const std::vector<Code>& a) {
  return a.size() == 1 && a[0] == 1;
}

// no-root irreducibility test; valid for degree 2 and 3, trivial for 1
inline bool is_irreducible_low_degree(const SmallField& F, const std::vector<Code>& f) {
  size_t d = f.size() - 1;
  if (d == 1) return true;
  if (d > 3) throw std::invalid_argument("irreducibility test limited to degree <= 3");
  for (Code x = 0; x < F.q; ++x) {
    Code v = 0, xp = 1;
    for (size_t i = 0; i < f.size(); ++i) {
      v = F.add(v, F.mul(f[i], xp));
      xp = F.mul(xp, x);
    }
    if (v == 0) return false;
  }
  return true;
}

inline std::vector<uint64_t> prime_divisors(uint64_t m) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) out.push_back(m);
  return out;
}

// primitive <=> the class of x generates the full multiplicative group
inline bool is_primitive(const SmallField& F, const std::vector<Code>& f) {
  size_t d = f.size() - 1;
  uint64_t order = 1;
  for (size_t i = 0; i < d; ++i) order *= F.q;
  order -= 1;
  std::vector<Code> x{0, 1};
  if (!poly_is_one(poly_powmod(F, x, order, f))) return false;
  for (uint64_t ell : prime_divisors(order))
    if (poly_is_one(poly_powmod(F, x, order / ell, f))) return false;
  return true;
}

}  // namespace detail

/// Lexicographically smallest monic primitive polynomial of the given degree,
/// coefficients compared low-degree-first as integer codes.  Deterministic,
/// so all derived enumerations are reproducible.
inline std::vector<Code> smallest_primitive_poly(const SmallField& F, uint32_t degree) {
  std::vector<Code> c(degree, 0);  // non-leading coefficients, low-degree first
  while (true) {
    std::vector<Code> f(c);
    f.push_back(1);
    if (detail::is_irreducible_low_degree(F, f) && detail::is_primitive(F, f)) return f;
    // advance (c0 most significant): increment from the back
    int i = static_cast<int>(degree) - 1;
    while (i >= 0) {
      if (++c[i] < F.q) break;
      c[i] = 0;
      --i;
    }
    if (i < 0) throw std::runtime_error("no primitive polynomial found");
  }
}

/// Extension of `base` by a monic irreducible polynomial of degree d.
/// Element codes are base-Q digit strings of the coefficient vector.
inline SmallField make_extension(const SmallField& base, const std::vector<Code>& poly) {
  uint32_t d = static_cast<uint32_t>(poly.size()) - 1;
  uint64_t q64 = 1;
  for (uint32_t i = 0; i < d; ++i) q64 *= base.q;
  if (q64 > 4096) throw std::invalid_argument("field too large for table-driven arithmetic");
  SmallField f;
  f.q = static_cast<uint32_t>(q64);
  f.p = base.p;
  f.deg = base.deg * d;

  auto digits = [&](Code a) {
    std::vector<Code> v(d);
    for (uint32_t i = 0; i < d; ++i) { v[i] = a % base.q; a /= base.q; }
    return v;
  };
  auto undigits = [&](const std::vector<Code>& v) {
    Code a = 0;
    for (uint32_t i = d; i-- > 0;) a = a * base.q + (i < v.size() ? v[i] : 0);
    return a;
  };

  f.add_t.resize(static_cast<size_t>(f.q) * f.q);
  f.mul_t.resize(static_cast<size_t>(f.q) * f.q);
  f.neg_t.resize(f.q);
  f.inv_t.resize(f.q);

  for (Code a = 0; a < f.q; ++a) {
    auto da = digits(a);
    std::vector<Code> nv(d);
    for (uint32_t i = 0; i < d; ++i) nv[i] = base.neg(da[i]);
    f.neg_t[a] = static_cast<uint16_t>(undigits(nv));
    for (Code b = 0; b < f.q; ++b) {
      auto db = digits(b);
      std::vector<Code> s(d);
      for (uint32_t i = 0; i < d; ++i) s[i] = base.add(da[i], db[i]);
      f.add_t[static_cast<size_t>(a) * f.q + b] = static_cast<uint16_t>(undigits(s));
      auto pa = da, pb = db;
      detail::poly_trim(pa);
      detail::poly_trim(pb);
      std::vector<Code> m;
      if (!pa.empty() && !pb.empty()) m = detail::poly_mulmod(base, pa, pb, poly);
      f.mul_t[static_cast<size_t>(a) * f.q + b] = static_cast<uint16_t>(undigits(m));
    }
  }
  f.inv_t[0] = 0;
  for (Code a = 1; a < f.q; ++a)
    f.inv_t[a] = static_cast<uint16_t>(f.pow(a, f.q - 2));
  f.build_lex_order();
  return f;
}

/// Position of an element inside the tower.
enum class Level : uint8_t { Base, Mid, Top };

/// An element of GF(p), GF(q) or GF(q^3) as a coefficient vector over the
/// level's base field (GF(p) elements have a single coefficient).
struct FieldElement {
  Level level = Level::Base;
  std::vector<Code> coeffs;

  bool operator==(const FieldElement&) const = default;
};

/// The tower GF(p) < GF(q) < GF(q^3) with both defining polynomials chosen
/// as the lexicographically smallest primitive ones.  tau is the class of
/// the indeterminate in GF(q^3), a primitive element over GF(q).
struct FieldSpec {
  uint32_t p = 0, k = 0, q = 0, q3 = 0;
  std::vector<Code> base_poly;   // degree k over GF(p)
  std::vector<Code> cubic_poly;  // degree 3 over GF(q)
  SmallField f_p, f_q, f_q3;
  Code tau = 0;
  Params params;
  std::vector<Code> frob_q_t;  // x -> x^q in GF(q^3)

  std::array<Code, 3> theta(Code x) const {
    return {x % q, (x / q) % q, x / (q * q)};
  }
  Code theta_inv(Code a0, Code a1, Code a2) const { return a0 + a1 * q + a2 * q * q; }

  Code frobenius(Code x, int i) const {
    Code r = x;
    for (int j = 0; j < ((i % 3) + 3) % 3; ++j) r = frob_q_t[r];
    return r;
  }

  Code trace(Code x) const {
    return f_q3.add(x, f_q3.add(frob_q_t[x], frob_q_t[frob_q_t[x]]));
  }

  bool in_mid_subfield(Code x) const { return x < q; }
};

inline FieldSpec field_tower(uint32_t p, uint32_t k) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (k == 0) throw std::invalid_argument("k must be positive");
  uint64_t q64 = 1;
  for (uint32_t i = 0; i < k; ++i) q64 *= p;
  if (q64 <= 2) throw std::invalid_argument("q = 2 is excluded, q > 2 required");
  if (q64 > 16) throw std::invalid_argument("q too large for this engine");

  FieldSpec s;
  s.p = p;
  s.k = k;
  s.q = static_cast<uint32_t>(q64);
  s.q3 = s.q * s.q * s.q;
  s.f_p = make_prime_field(p);
  s.base_poly = smallest_primitive_poly(s.f_p, k);
  s.f_q = (k == 1) ? s.f_p : make_extension(s.f_p, s.base_poly);
  s.cubic_poly = smallest_primitive_poly(s.f_q, 3);
  s.f_q3 = make_extension(s.f_q, s.cubic_poly);
  s.tau = s.q;  // coefficient vector (0,1,0)
  s.params = make_params(s.q);
  s.frob_q_t.resize(s.q3);
  for (Code x = 0; x < s.q3; ++x) s.frob_q_t[x] = s.f_q3.pow(x, s.q);
  return s;
}

// --- FieldElement interface ----------------------------------------------

inline const SmallField& field_of(const FieldSpec& s, Level lv) {
  switch (lv) {
    case Level::Base: return s.f_p;
    case Level::Mid: return s.f_q;
    default: return s.f_q3;
  }
}

inline uint32_t coeff_len(const FieldSpec& s, Level lv) {
  switch (lv) {
    case Level::Base: return 1;
    case Level::Mid: return s.k;
    default: return 3;
  }
}

inline Code elem_code(const FieldSpec& s, const FieldElement& e) {
  uint32_t base = (e.level == Level::Top) ? s.q : s.p;
  Code c = 0;
  for (size_t i = e.coeffs.size(); i-- > 0;) c = c * base + e.coeffs[i];
  return c;
}

inline FieldElement make_element(const FieldSpec& s, Level lv, Code code) {
  uint32_t base = (lv == Level::Top) ? s.q : s.p;
  FieldElement e;
  e.level = lv;
  e.coeffs.resize(coeff_len(s, lv));
  for (auto& c : e.coeffs) { c = code % base; code /= base; }
  return e;
}

inline void check_same_level(const FieldElement& a, const FieldElement& b) {
  if (a.level != b.level) throw std::invalid_argument("operands at different tower levels");
}

inline FieldElement fe_add(const FieldSpec& s, const FieldElement& a, const FieldElement& b) {
  check_same_level(a, b);
  return make_element(s, a.level, field_of(s, a.level).add(elem_code(s, a), elem_code(s, b)));
}

inline FieldElement fe_mul(const FieldSpec& s, const FieldElement& a, const FieldElement& b) {
  check_same_level(a, b);
  return make_element(s, a.level, field_of(s, a.level).mul(elem_code(s, a), elem_code(s, b)));
}

inline FieldElement fe_neg(const FieldSpec& s, const FieldElement& a) {
  return make_element(s, a.level, field_of(s, a.level).neg(elem_code(s, a)));
}

inline FieldElement fe_inv(const FieldSpec& s, const FieldElement& a) {
  return make_element(s, a.level, field_of(s, a.level).inv(elem_code(s, a)));
}

inline FieldElement fe_pow(const FieldSpec& s, const FieldElement& a, uint64_t e) {
  return make_element(s, a.level, field_of(s, a.level).pow(elem_code(s, a), e));
}

inline FieldElement fe_frobenius(const FieldSpec& s, const FieldElement& a, int i) {
  if (a.level != Level::Top) throw std::invalid_argument("frobenius expects a top-level element");
  return make_element(s, Level::Top, s.frobenius(elem_code(s, a), i));
}

/// 3x3 matrix A over GF(q) with theta(x) * A = theta(x^q); rows are
/// theta(tau^{iq}).  A^3 is the identity.
inline std::array<std::array<Code, 3>, 3> frobenius_matrix(const FieldSpec& s) {
  std::array<std::array<Code, 3>, 3> A;
  for (int i = 0; i < 3; ++i) {
    Code t = s.f_q3.pow(s.tau, static_cast<uint64_t>(i) * s.q);
    A[i] = s.theta(t);
  }
  return A;
}

}  // namespace boserep::gf
