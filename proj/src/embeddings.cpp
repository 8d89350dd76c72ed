#include "spinlab/embeddings.hpp"

#include <algorithm>
#include <cstdlib>

#include "spinlab/error.hpp"

namespace spinlab {

namespace {

using QPoly = std::vector<mpq_class>;  // constant-first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

QPoly poly_rem(QPoly a, const QPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    mpq_class q = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_q(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return sgn(acc);
}

int variations(const std::vector<QPoly>& chain, const mpq_class& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign_q(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Interval [lo, hi] at scale 2^scale (values lo/2^scale .. hi/2^scale).
struct ScaledInterval {
  BigInt lo, hi;
  long scale;
};

ScaledInterval mul(const ScaledInterval& a, const ScaledInterval& b) {
  BigInt p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  BigInt lo = p1, hi = p1;
  for (const BigInt* v : {&p2, &p3, &p4}) {
    if (*v < lo) lo = *v;
    if (*v > hi) hi = *v;
  }
  return {lo, hi, a.scale + b.scale};
}

// Range enclosure of g over x in [lo, hi] / 2^e; returns the sign when the
// enclosure excludes zero, else 0.
int enclosure_sign(const std::vector<BigInt>& g, const RootInterval& x) {
  if (g.empty()) return 0;
  ScaledInterval X{x.lo, x.hi, x.prec};
  ScaledInterval acc{g.back(), g.back(), 0};
  for (std::size_t i = g.size() - 1; i-- > 0;) {
    acc = mul(acc, X);
    BigInt c = g[i];
    mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), acc.scale);
    acc.lo += c;
    acc.hi += c;
  }
  if (acc.lo > 0) return 1;
  if (acc.hi < 0) return -1;
  return 0;
}

// Bisects until the width is at most 2^-target.
void refine(const std::vector<BigInt>& f, RootInterval& r, long target) {
  const int s_lo = sign_at_dyadic(f, r.lo, r.prec);
  for (;;) {
    BigInt width = r.hi - r.lo;
    mpz_mul_2exp(width.get_mpz_t(), width.get_mpz_t(), target);
    BigInt unit = 1;
    mpz_mul_2exp(unit.get_mpz_t(), unit.get_mpz_t(), r.prec);
    if (width <= unit) return;
    r.lo *= 2;
    r.hi *= 2;
    r.prec += 1;
    BigInt mid = (r.lo + r.hi) / 2;  // strictly interior: hi - lo >= 2 after scaling
    int s_mid = sign_at_dyadic(f, mid, r.prec);
    require(s_mid != 0, ErrorCode::kInternal, "root refinement hit an exact dyadic root");
    if (s_mid == s_lo) r.lo = mid;
    else r.hi = mid;
  }
}

}  // namespace

int sign_at_dyadic(const std::vector<BigInt>& f, const BigInt& m, long e) {
  // 2^{ed} f(m / 2^e) = sum_i f_i m^i 2^{e(d-i)}, by Horner
  const std::size_t d = f.size() - 1;
  BigInt acc = f[d];
  for (std::size_t i = d; i-- > 0;) {
    BigInt c = f[i];
    mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), static_cast<mp_bitcnt_t>(e) * (d - i));
    acc = acc * m + c;
  }
  return sgn(acc);
}

Embeddings::Embeddings(const std::vector<BigInt>& f) : f_(f) {
  require(f.size() >= 2 && f.back() == 1, ErrorCode::kInvalidArgument,
          "Embeddings: f must be monic of degree >= 1");
  const int n = static_cast<int>(f.size()) - 1;

  std::vector<QPoly> chain;
  QPoly p0(f.begin(), f.end());
  chain.push_back(p0);
  chain.push_back(derivative(p0));
  while (chain.back().size() > 1) {
    QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(r);
  }
  require(chain.back().size() == 1, ErrorCode::kInvalidArgument,
          "Embeddings: f has repeated roots");

  BigInt bound = 1;
  for (int i = 0; i < n; ++i) {
    BigInt a = abs(f[i]);
    if (a + 1 > bound) bound = a + 1;
  }

  // Stack of integer-scaled half-open intervals (lo, hi] at scale 2^e.
  struct Cell {
    BigInt lo, hi;
    long e;
  };
  auto as_q = [](const BigInt& m, long e) {
    mpq_class q(m);
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
    return q;
  };
  std::vector<Cell> stack{{-bound, bound, 0}};
  std::vector<Cell> isolated;
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    int count = variations(chain, as_q(c.lo, c.e)) - variations(chain, as_q(c.hi, c.e));
    if (count == 0) continue;
    if (count == 1 && sign_at_dyadic(f, c.hi, c.e) != 0) {
      isolated.push_back(c);
      continue;
    }
    require(c.e < 4 * Embeddings::kMaxPrecision, ErrorCode::kInternal,
            "Embeddings: root isolation did not converge");
    BigInt lo = 2 * c.lo, hi = 2 * c.hi;
    BigInt mid = (lo + hi) / 2;
    stack.push_back({lo, mid, c.e + 1});
    stack.push_back({mid, hi, c.e + 1});
  }
  require(static_cast<int>(isolated.size()) == n, ErrorCode::kInvalidArgument,
          "Embeddings: f is not totally real");

  for (const Cell& c : isolated) {
    RootInterval r{c.lo, c.hi, c.e};
    require(sign_at_dyadic(f, r.lo, r.prec) != 0, ErrorCode::kInternal,
            "Embeddings: isolating endpoint is a root");
    refine(f_, r, kBasePrecision);
    roots_.push_back(r);
  }
  std::sort(roots_.begin(), roots_.end(), [](const RootInterval& a, const RootInterval& b) {
    // compare lo/2^a.prec with lo/2^b.prec
    BigInt x = a.lo, y = b.lo;
    if (a.prec < b.prec) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), b.prec - a.prec);
    else mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), a.prec - b.prec);
    return x < y;
  });
  for (const auto& r : roots_) {
    mpq_class mid(r.lo + r.hi);
    mpq_div_2exp(mid.get_mpq_t(), mid.get_mpq_t(), r.prec + 1);
    approx_.push_back(static_cast<long double>(mid.get_d()));
  }
}

int Embeddings::sign_at(const std::vector<BigInt>& g, int i) const {
  require(i >= 0 && i < degree(), ErrorCode::kInvalidArgument, "Embeddings::sign_at: bad index");
  RootInterval r = roots_[i];
  long target = kBasePrecision;
  for (;;) {
    int s = enclosure_sign(g, r);
    if (s != 0) return s;
    if (target >= kMaxPrecision) break;
    target = std::min(2 * target, kMaxPrecision);
    refine(f_, r, target);
  }
  fail(ErrorCode::kAmbiguousSign, "sign of element at real embedding undetermined at 4096 bits");
}

}  // namespace spinlab
