#ifndef SPINLAB_DENSITY_HPP_
#define SPINLAB_DENSITY_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

namespace spinlab {

using BigInt = mpz_class;

// Reduced fraction with positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(const BigInt& num, const BigInt& den);
  explicit ExactRational(const BigInt& integer) : value_(integer) {}

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  std::string str() const;  // "num/den", or "num" when den == 1
  double to_double() const { return value_.get_d(); }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExactRational& a, const ExactRational& b) {
    return a.value_ < b.value_;
  }

 private:
  static ExactRational wrap(mpq_class v);
  mpq_class value_;
};

BigInt pow2(unsigned long e);
ExactRational inverse_pow2(unsigned long e);  // 1 / 2^e

struct SPair {
  BigInt plus;
  BigInt minus;
};

// Kernel sizes of the star map restricted to the two norm sectors, from the
// divisor profile of x^n - 1 over GF(2).
SPair s_pair(int n);
// Closed form valid only for prime n.
SPair s_pair_prime(int n);
// The same two counts found by brute force over GF(2)[x]/(x^n - 1): the
// number of u with F_u(x) F_u(1/x) = 0, and with F_u(x) F_u(1/x) = 1.
// Exponential in n; n <= 21.
SPair s_pair_enumerated(int n);

struct DensityReport {
  int n = 0;
  BigInt s_plus, s_minus;
  ExactRational dF_plus, dF_minus, dF;
  ExactRational dR_plus, dR_minus, dR;
  ExactRational dF_given_R;  // 2^{-(n-1)/2}, same for both signs
};

DensityReport density_report(int n);

// Pipe-separated table: header line then one row per n.
std::string format_table(const std::vector<int>& rows);
// Notes for rows whose values need a caveat: the n = 15 last-column erratum,
// and rows (n <= 21) where the closed-form counts differ from enumeration.
// Empty when none apply.
std::string table_notes(const std::vector<int>& rows);

}  // namespace spinlab

#endif  // SPINLAB_DENSITY_HPP_
