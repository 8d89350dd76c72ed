#include "spinlab/density.hpp"

#include <sstream>

#include "spinlab/error.hpp"
#include "spinlab/f2poly.hpp"

namespace spinlab {

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
  require(den != 0, ErrorCode::kInvalidArgument, "ExactRational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

ExactRational ExactRational::wrap(mpq_class v) {
  ExactRational r;
  r.value_ = std::move(v);
  r.value_.canonicalize();
  return r;
}

std::string ExactRational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
  return ExactRational::wrap(a.value_ + b.value_);
}
ExactRational operator-(const ExactRational& a, const ExactRational& b) {
  return ExactRational::wrap(a.value_ - b.value_);
}
ExactRational operator*(const ExactRational& a, const ExactRational& b) {
  return ExactRational::wrap(a.value_ * b.value_);
}
ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  require(b.value_ != 0, ErrorCode::kInvalidArgument, "ExactRational: division by zero");
  return ExactRational::wrap(a.value_ / b.value_);
}

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

ExactRational inverse_pow2(unsigned long e) { return ExactRational(BigInt(1), pow2(e)); }

namespace {

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

void require_odd(int n, const char* who) {
  require(n % 2 != 0, ErrorCode::kEvenDegree, std::string(who) + ": n must be odd, got " + std::to_string(n));
  require(n >= 3, ErrorCode::kInvalidArgument, std::string(who) + ": n must be >= 3, got " + std::to_string(n));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

SPair s_pair(int n) {
  require_odd(n, "s_pair");
  const CycloProfile prof = cyclo_profile(n);

  // Exponent sums over divisors k != 1 with d_k odd.
  unsigned long half_r = 0;    // sum of phi(k) / (2 d_k)
  unsigned long half_phi = 0;  // sum of phi(k) / 2
  BigInt minus = 1;
  for (const auto& dp : prof.divisors) {
    if (dp.k == 1) continue;
    if (dp.d % 2 == 1) {
      half_r += dp.phi / (2 * dp.d);
      half_phi += dp.phi / 2;
      minus *= ipow(pow2(dp.d) - 1, dp.phi / (2 * dp.d));
    } else {
      minus *= ipow(pow2(dp.d / 2) + 1, dp.phi / dp.d);
    }
  }
  BigInt plus = 1 + pow2(half_r) * (pow2(half_phi) - 1);
  return {plus, minus};
}

SPair s_pair_prime(int n) {
  require_odd(n, "s_pair_prime");
  require(is_prime(n), ErrorCode::kInvalidArgument,
          "s_pair_prime: n must be prime, got " + std::to_string(n));
  const int d = order_of_two(n);
  const unsigned long half = (n - 1) / 2;
  if (d % 2 == 1) {
    const unsigned long e = (n - 1) / (2 * d);
    return {1 + pow2(e) * (pow2(half) - 1), ipow(pow2(d) - 1, e)};
  }
  return {BigInt(1), ipow(pow2(d / 2) + 1, (n - 1) / d)};
}

DensityReport density_report(int n) {
  require_odd(n, "density_report");
  // n odd: 3(n-1)/2 and (3n-1)/2 are integers.
  require((3 * (n - 1)) % 2 == 0 && (3 * n - 1) % 2 == 0, ErrorCode::kInternal,
          "density_report: non-integral exponent");
  const unsigned long e_f = 3ul * (n - 1) / 2;
  const unsigned long e_r = n - 1;
  const unsigned long e_fr = (n - 1) / 2;

  SPair s = s_pair(n);
  DensityReport rep;
  rep.n = n;
  rep.s_plus = s.plus;
  rep.s_minus = s.minus;
  rep.dF_plus = ExactRational(s.plus, pow2(e_f));
  rep.dF_minus = ExactRational(s.minus, pow2(e_f));
  rep.dF = ExactRational(s.plus + s.minus, pow2((3ul * n - 1) / 2));
  rep.dR_plus = ExactRational(s.plus, pow2(e_r));
  rep.dR_minus = ExactRational(s.minus, pow2(e_r));
  rep.dR = ExactRational(s.plus + s.minus, pow2(n));
  rep.dF_given_R = inverse_pow2(e_fr);
  return rep;
}

std::string format_table(const std::vector<int>& rows) {
  std::ostringstream out;
  out << "n | d(F+|S+) | d(F-|S-) | d(F|S)\n";
  for (int n : rows) {
    DensityReport r = density_report(n);
    out << n << " | " << r.dF_plus.str() << " | " << r.dF_minus.str() << " | " << r.dF.str()
        << "\n";
  }
  return out.str();
}

SPair s_pair_enumerated(int n) {
  require(n >= 3 && n <= 21 && n % 2 == 1, ErrorCode::kInvalidArgument,
          "s_pair_enumerated: n must be odd in [3, 21]");
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::uint64_t zero = 0, one = 0;
  for (std::uint64_t u = 0; u <= mask; ++u) {
    std::uint64_t r = u & 1u;  // x^n F_u(1/x) mod x^n - 1
    for (int i = 1; i < n; ++i)
      if ((u >> i) & 1u) r |= std::uint64_t{1} << (n - i);
    std::uint64_t prod = 0;
    for (int i = 0; i < n; ++i)
      if ((u >> i) & 1u) prod ^= r << i;
    prod = (prod & mask) ^ (prod >> n);
    zero += prod == 0;
    one += prod == 1;
  }
  return {BigInt(static_cast<unsigned long>(zero)), BigInt(static_cast<unsigned long>(one))};
}

std::string table_notes(const std::vector<int>& rows) {
  std::ostringstream out;
  for (int n : rows) {
    const DensityReport r = density_report(n);
    if (n == 15)
      out << "note: n=15, d(F|S) = (" << r.s_plus.get_str() << "+" << r.s_minus.get_str()
          << ")/2^22 = " << r.dF.str()
          << "; the value 47/262144 quoted for this cell elsewhere contradicts the row's own"
             " d(F+|S+) and d(F-|S-) entries.\n";
    if (n > 21) continue;
    const SPair e = s_pair_enumerated(n);
    if (e.plus == r.s_plus && e.minus == r.s_minus) continue;
    const BigInt den = pow2((n - 1) + (n - 1) / 2);
    out << "note: n=" << n << ", the closed form gives (s+, s-) = (" << r.s_plus.get_str() << ", "
        << r.s_minus.get_str() << ") but direct enumeration of F_u(x)F_u(1/x) over GF(2)[x]/(x^" << n
        << "-1) gives (" << e.plus.get_str() << ", " << e.minus.get_str()
        << "): some factor of x^" << n
        << "-1 has even degree without being self-reciprocal. With the enumerated counts d(F+|S+) = "
        << ExactRational(e.plus, den).str() << ", d(F-|S-) = " << ExactRational(e.minus, den).str()
        << ", d(F|S) = " << ExactRational(e.plus + e.minus, den * 2).str() << ".\n";
  }
  return out.str();
}

}  // namespace spinlab
