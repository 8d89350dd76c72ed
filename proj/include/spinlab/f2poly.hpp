#ifndef SPINLAB_F2POLY_HPP_
#define SPINLAB_F2POLY_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

/* Polynomial over GF(2), bit-packed into one machine word: bit i is the
 * coefficient of x^i.  Degrees up to 63 are representable; anything that
 * would overflow is rejected with kInvalidArgument.  The zero polynomial is
 * the empty coefficient sequence and reports kZeroDegree.
 */
class F2Poly {
 public:
  static constexpr int kMaxDegree = 63;
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  constexpr F2Poly() = default;
  constexpr explicit F2Poly(std::uint64_t bits) : bits_(bits) {}

  static F2Poly monomial(int k);
  static F2Poly one() { return F2Poly(1); }
  // x^n - 1 (= x^n + 1 over GF(2)).
  static F2Poly xn_minus_1(int n);
  // Coefficients listed constant-first; each entry is reduced mod 2.
  static F2Poly from_coeffs(const std::vector<int>& coeffs);

  std::uint64_t bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }
  int degree() const;
  bool coeff(int i) const { return i >= 0 && i <= kMaxDegree && ((bits_ >> i) & 1u); }
  // Constant-first coefficient list; empty for the zero polynomial.
  std::vector<int> coeffs() const;
  std::string str() const;

  friend bool operator==(F2Poly a, F2Poly b) { return a.bits_ == b.bits_; }
  friend bool operator!=(F2Poly a, F2Poly b) { return a.bits_ != b.bits_; }
  friend bool operator<(F2Poly a, F2Poly b) {
    int da = a.degree(), db = b.degree();
    return da != db ? da < db : a.bits_ < b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
};

F2Poly add(F2Poly a, F2Poly b);
F2Poly mul(F2Poly a, F2Poly b);
std::pair<F2Poly, F2Poly> divmod(F2Poly a, F2Poly b);
F2Poly rem(F2Poly a, F2Poly b);
F2Poly gcd(F2Poly a, F2Poly b);
F2Poly mulmod(F2Poly a, F2Poly b, F2Poly m);
F2Poly powmod(F2Poly a, std::uint64_t e, F2Poly m);

// x^{deg f} f(1/x); requires a nonzero constant term.
F2Poly reciprocal(F2Poly f);
bool is_irreducible(F2Poly f);

int order_of_two(int k);
int euler_phi(int k);

struct DivisorProfile {
  int k;
  int phi;
  int d;   // order of 2 mod k (1 for k = 1)
  int r;
  int m;
};

struct CycloProfile {
  int n;
  std::vector<DivisorProfile> divisors;  // ascending k, includes k = 1

  int total_r() const;
  int total_m() const;
};

CycloProfile cyclo_profile(int n);

struct CycloFactor {
  F2Poly poly;
  bool self_reciprocal;
};

// Distinct monic irreducible factors of x^n - 1, sorted by (degree, bits).
std::vector<CycloFactor> factor_xn_minus_1(int n);

}  // namespace spinlab

#endif  // SPINLAB_F2POLY_HPP_
