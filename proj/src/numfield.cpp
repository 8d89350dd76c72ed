#include "spinlab/numfield.hpp"

#include <algorithm>

#include "spinlab/error.hpp"

namespace spinlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // constant-first, no trailing zeros

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1u) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_rem(Poly a, const Poly& b, u64 p) {
  trim(a);
  const int db = deg(b);
  const u64 lead_inv = invmod(b.back(), p);
  while (deg(a) >= db) {
    const u64 q = mulmod(a.back(), lead_inv, p);
    const int shift = deg(a) - db;
    for (int i = 0; i <= db; ++i) a[i + shift] = (a[i + shift] + p - mulmod(q, b[i], p)) % p;
    trim(a);
  }
  return a;
}

Poly poly_div(Poly a, const Poly& b, u64 p) {
  trim(a);
  const int db = deg(b);
  if (deg(a) < db) return {};
  Poly q(deg(a) - db + 1, 0);
  const u64 lead_inv = invmod(b.back(), p);
  while (deg(a) >= db) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const int shift = deg(a) - db;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[i + shift] = (a[i + shift] + p - mulmod(c, b[i], p)) % p;
    trim(a);
  }
  return q;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_rem(std::move(r), f, p);
}

Poly poly_powmod(Poly b, u64 e, const Poly& f, u64 p) {
  Poly r{1};
  b = poly_rem(std::move(b), f, p);
  while (e) {
    if (e & 1u) r = poly_mulmod(r, b, f, p);
    e >>= 1;
    if (e) b = poly_mulmod(b, b, f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

// Roots of a monic squarefree g that splits into linear factors mod p.
void split_roots(const Poly& g, u64 p, std::vector<u64>& out) {
  if (deg(g) <= 0) return;
  if (deg(g) == 1) {
    out.push_back((p - g[0]) % p);
    return;
  }
  for (u64 delta = 0; delta < p; ++delta) {
    Poly t = poly_powmod(Poly{delta, 1}, (p - 1) / 2, g, p);
    if (t.empty()) t = {0};
    t[0] = (t[0] + p - 1) % p;
    trim(t);
    Poly d = poly_gcd(g, t, p);
    if (deg(d) > 0 && deg(d) < deg(g)) {
      split_roots(d, p, out);
      split_roots(poly_div(g, d, p), p, out);
      return;
    }
  }
  fail(ErrorCode::kInternal, "equal-degree splitting failed");
}

u64 eval_u64(const std::vector<BigInt>& poly, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;)
    acc = (mulmod(acc, x, p) + mpz_fdiv_ui(poly[i].get_mpz_t(), p)) % p;
  return acc;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Deterministic for 64-bit inputs.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> split_completely(const FieldSpec& K, std::uint64_t p) {
  require(p >= 3 && p % 2 == 1 && p < kMaxPrime, ErrorCode::kInvalidArgument,
          "split_completely: p must be an odd prime below 2^62, got " + std::to_string(p));
  if (mpz_fdiv_ui(K.disc_f.get_mpz_t(), p) == 0)
    fail(ErrorCode::kRamifiedPrime, "p = " + std::to_string(p) + " divides disc_f");
  Poly f;
  for (const auto& c : K.f) f.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
  // f splits completely iff f | x^p - x.
  Poly xp = poly_powmod(Poly{0, 1}, p, f, p);
  Poly x{0, 1};
  x = poly_rem(x, f, p);
  trim(xp);
  if (xp != x) return std::nullopt;
  std::vector<u64> roots;
  split_roots(f, p, roots);
  std::sort(roots.begin(), roots.end());
  require(static_cast<int>(roots.size()) == K.n &&
              std::adjacent_find(roots.begin(), roots.end()) == roots.end(),
          ErrorCode::kInternal, "split_completely: root count mismatch");
  return roots;
}

PrimeDeg1 conjugate_prime(const FieldSpec& K, const PrimeDeg1& P,
                          const std::vector<std::uint64_t>& roots) {
  for (u64 b : roots)
    if (eval_u64(K.sigma, b, P.p) == P.a % P.p) return {P.p, b};
  fail(ErrorCode::kInternal, "conjugate_prime: no root b with s(b) = a mod " + std::to_string(P.p));
}

PrimeDeg1 conjugate_prime(const FieldSpec& K, const PrimeDeg1& P) {
  auto roots = split_completely(K, P.p);
  require(roots.has_value(), ErrorCode::kInvalidArgument,
          "conjugate_prime: p = " + std::to_string(P.p) + " does not split completely");
  return conjugate_prime(K, P, *roots);
}

int legendre_u64(std::uint64_t t, std::uint64_t q) {
  t %= q;
  if (t == 0) return 0;
  return powmod(t, (q - 1) / 2, q) == 1 ? 1 : -1;
}

int legendre_deg1(const FieldSpec& K, const AlgInt& alpha, const PrimeDeg1& Q) {
  (void)K;
  return legendre_u64(eval_mod(alpha, Q.a, Q.p), Q.p);
}

int spin(const FieldSpec& K, const AlgInt& alpha, const PrimeDeg1& P, int k,
         const std::vector<std::uint64_t>& roots) {
  require(k >= 1 && k < K.n, ErrorCode::kInvalidArgument, "spin: k must lie in 1..n-1");
  PrimeDeg1 Q = P;
  for (int i = 0; i < k; ++i) Q = conjugate_prime(K, Q, roots);
  return legendre_deg1(K, alpha, Q);
}

int spin(const FieldSpec& K, const PrimeDeg1& P, int k) {
  auto roots = split_completely(K, P.p);
  require(roots.has_value(), ErrorCode::kInvalidArgument,
          "spin: p = " + std::to_string(P.p) + " does not split completely");
  AlgInt alpha = generator_of_power(K, P, K.h);
  return spin(K, alpha, P, k, *roots);
}

M4Class r4_of_generator(const ResidueFamily& fam, const AlgInt& alpha) {
  return fam.m4_class_of(fam.ring(2).from_alg(alpha));
}

M4Class r4_of_prime(const ResidueFamily& fam, const PrimeDeg1& P) {
  return r4_of_generator(fam, generator_of_power(fam.spec(), P, fam.spec().h));
}

}  // namespace spinlab
