#include "spinlab/f2poly.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "spinlab/error.hpp"

namespace spinlab {

namespace {

constexpr int kMaxCycloN = 31;

constexpr int kMaxProfileN = 1 << 20;

void require_odd_n(int n, const char* who, int max_n) {
  require(n >= 3 && n % 2 == 1, ErrorCode::kInvalidArgument,
          std::string(who) + ": n must be odd and >= 3, got " + std::to_string(n));
  require(n <= max_n, ErrorCode::kInvalidArgument,
          std::string(who) + ": n > " + std::to_string(max_n) + " is not supported");
}

}  // namespace

F2Poly F2Poly::monomial(int k) {
  require(k >= 0 && k <= kMaxDegree, ErrorCode::kInvalidArgument,
          "F2Poly::monomial: degree out of range");
  return F2Poly(std::uint64_t{1} << k);
}

F2Poly F2Poly::xn_minus_1(int n) {
  return add(monomial(n), one());
}

F2Poly F2Poly::from_coeffs(const std::vector<int>& coeffs) {
  require(coeffs.size() <= kMaxDegree + 1, ErrorCode::kInvalidArgument,
          "F2Poly::from_coeffs: degree exceeds 63");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] & 1) bits |= std::uint64_t{1} << i;
  }
  return F2Poly(bits);
}

int F2Poly::degree() const {
  if (bits_ == 0) return kZeroDegree;
  return 63 - std::countl_zero(bits_);
}

std::vector<int> F2Poly::coeffs() const {
  std::vector<int> out;
  if (bits_ == 0) return out;
  for (int i = 0; i <= degree(); ++i) out.push_back(coeff(i) ? 1 : 0);
  return out;
}

std::string F2Poly::str() const {
  if (bits_ == 0) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i)) continue;
    if (!s.empty()) s += "+";
    if (i == 0) s += "1";
    else if (i == 1) s += "x";
    else s += "x^" + std::to_string(i);
  }
  return s;
}

F2Poly add(F2Poly a, F2Poly b) { return F2Poly(a.bits() ^ b.bits()); }

F2Poly mul(F2Poly a, F2Poly b) {
  if (a.is_zero() || b.is_zero()) return F2Poly();
  require(a.degree() + b.degree() <= F2Poly::kMaxDegree, ErrorCode::kInvalidArgument,
          "F2Poly mul: product degree exceeds 63");
  std::uint64_t x = a.bits(), y = b.bits(), r = 0;
  while (y) {
    if (y & 1u) r ^= x;
    y >>= 1;
    x <<= 1;
  }
  return F2Poly(r);
}

std::pair<F2Poly, F2Poly> divmod(F2Poly a, F2Poly b) {
  require(!b.is_zero(), ErrorCode::kInvalidArgument, "F2Poly: division by zero polynomial");
  std::uint64_t q = 0, r = a.bits();
  const int db = b.degree();
  while (r != 0) {
    int dr = 63 - std::countl_zero(r);
    if (dr < db) break;
    q |= std::uint64_t{1} << (dr - db);
    r ^= b.bits() << (dr - db);
  }
  return {F2Poly(q), F2Poly(r)};
}

F2Poly rem(F2Poly a, F2Poly b) { return divmod(a, b).second; }

F2Poly gcd(F2Poly a, F2Poly b) {
  while (!b.is_zero()) {
    F2Poly r = rem(a, b);
    a = b;
    b = r;
  }
  return a;  // monic automatically over GF(2)
}

F2Poly mulmod(F2Poly a, F2Poly b, F2Poly m) {
  require(!m.is_zero(), ErrorCode::kInvalidArgument, "F2Poly mulmod: zero modulus");
  a = rem(a, m);
  b = rem(b, m);
  const int dm = m.degree();
  const std::uint64_t top = std::uint64_t{1} << dm;
  std::uint64_t x = a.bits(), y = b.bits(), r = 0;
  while (y) {
    if (y & 1u) r ^= x;
    y >>= 1;
    x <<= 1;  // deg x < dm <= 63, so the shift cannot overflow
    if (x & top) x ^= m.bits();
  }
  return F2Poly(r);
}

F2Poly powmod(F2Poly a, std::uint64_t e, F2Poly m) {
  F2Poly result = rem(F2Poly::one(), m);
  a = rem(a, m);
  while (e) {
    if (e & 1u) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

F2Poly reciprocal(F2Poly f) {
  require(!f.is_zero() && f.coeff(0), ErrorCode::kInvalidArgument,
          "reciprocal: polynomial must have a nonzero constant term");
  const int d = f.degree();
  std::uint64_t r = 0;
  for (int i = 0; i <= d; ++i) {
    if (f.coeff(i)) r |= std::uint64_t{1} << (d - i);
  }
  return F2Poly(r);
}

bool is_irreducible(F2Poly f) {
  const int d = f.degree();
  if (d < 1) return false;
  // Ben-Or: f is irreducible iff gcd(f, x^{2^i} - x) = 1 for i <= d/2.
  const F2Poly x(2);
  F2Poly xp = rem(x, f);
  for (int i = 1; i <= d / 2; ++i) {
    xp = mulmod(xp, xp, f);
    if (gcd(f, add(xp, rem(x, f))) != F2Poly::one()) return false;
  }
  return true;
}

int order_of_two(int k) {
  require(k >= 1 && k % 2 == 1, ErrorCode::kInvalidArgument,
          "order_of_two: k must be odd and positive, got " + std::to_string(k));
  if (k == 1) return 1;
  int d = 1;
  long long v = 2 % k;
  while (v != 1) {
    v = (v * 2) % k;
    ++d;
  }
  return d;
}

int euler_phi(int k) {
  require(k >= 1, ErrorCode::kInvalidArgument, "euler_phi: k must be positive");
  int result = k;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0) k /= p;
      result -= result / p;
    }
  }
  if (k > 1) result -= result / k;
  return result;
}

int CycloProfile::total_r() const {
  int t = 0;
  for (const auto& dp : divisors) t += dp.r;
  return t;
}

int CycloProfile::total_m() const {
  int t = 0;
  for (const auto& dp : divisors) t += dp.m;
  return t;
}

CycloProfile cyclo_profile(int n) {
  require_odd_n(n, "cyclo_profile", kMaxProfileN);
  CycloProfile prof{n, {}};
  for (int k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    DivisorProfile dp{k, euler_phi(k), order_of_two(k), 1, 1};
    if (k != 1) {
      if (dp.d % 2 == 1) {
        dp.r = dp.phi / (2 * dp.d);
        dp.m = 0;
      } else {
        dp.r = dp.phi / dp.d;
        dp.m = dp.r;
      }
    }
    prof.divisors.push_back(dp);
  }
  return prof;
}

namespace {

// Splits g, a product of distinct irreducibles all of degree d, by trace
// polynomials a + a^2 + ... + a^{2^{d-1}} for a deterministic sequence of a.
void equal_degree_split(F2Poly g, int d, std::vector<F2Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  for (std::uint64_t a_bits = 2;; ++a_bits) {
    F2Poly a = rem(F2Poly(a_bits), g);
    if (a.degree() < 1) continue;
    F2Poly t = a, acc = a;
    for (int i = 1; i < d; ++i) {
      t = mulmod(t, t, g);
      acc = add(acc, t);
    }
    F2Poly h = gcd(g, acc);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, out);
      equal_degree_split(divmod(g, h).first, d, out);
      return;
    }
    require(a_bits < (std::uint64_t{1} << 20), ErrorCode::kInternal,
            "equal_degree_split: no splitting polynomial found");
  }
}

}  // namespace

std::vector<CycloFactor> factor_xn_minus_1(int n) {
  require_odd_n(n, "factor_xn_minus_1", kMaxCycloN);

  // Cyclotomic cosets {j 2^i mod n} predict the multiset of factor degrees.
  std::multiset<int> predicted;
  std::vector<bool> seen(n, false);
  for (int j = 0; j < n; ++j) {
    if (seen[j]) continue;
    int size = 0;
    for (int v = j; !seen[v]; v = (2 * v) % n) {
      seen[v] = true;
      ++size;
    }
    predicted.insert(size);
  }

  std::vector<F2Poly> factors;
  F2Poly rest = F2Poly::xn_minus_1(n);
  const F2Poly x(2);
  for (int d = 1; rest.degree() > 0; ++d) {
    F2Poly xp = powmod(x, std::uint64_t{1} << d, rest);
    F2Poly g = gcd(rest, add(xp, rem(x, rest)));
    if (g.degree() > 0) {
      equal_degree_split(g, d, factors);
      rest = divmod(rest, g).first;
    }
    require(d <= n, ErrorCode::kInternal, "factor_xn_minus_1: distinct-degree loop overran");
  }

  std::sort(factors.begin(), factors.end());
  std::multiset<int> got;
  for (auto f : factors) got.insert(f.degree());
  require(got == predicted, ErrorCode::kInternal,
          "factor_xn_minus_1: factor degrees disagree with cyclotomic cosets");

  std::vector<CycloFactor> out;
  out.reserve(factors.size());
  for (auto f : factors) out.push_back({f, reciprocal(f) == f});
  return out;
}

}  // namespace spinlab
