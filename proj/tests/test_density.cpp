#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <sstream>

#include "oracles.hpp"
#include "spinlab/density.hpp"
#include "spinlab/error.hpp"

using namespace spinlab;

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class p2(unsigned e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

}  // namespace

TEST_CASE("s pairs for small degrees") {
  auto check = [](int n, long plus, long minus) {
    SPair s = s_pair(n);
    CHECK(s.plus == plus);
    CHECK(s.minus == minus);
  };
  check(3, 1, 3);
  check(7, 15, 7);
  check(5, 1, 5);
  check(9, 1, 27);
}

TEST_CASE("prime-case specialisation") {
  CHECK(s_pair_prime(7).plus == 15);
  CHECK(s_pair_prime(7).minus == 7);
  CHECK(s_pair_prime(5).plus == 1);
  CHECK(s_pair_prime(5).minus == 5);
  CHECK(s_pair_prime(13).plus == 1);
  CHECK(s_pair_prime(13).minus == 65);
  CHECK_THROWS_AS(s_pair_prime(9), Error);
  CHECK_THROWS_AS(s_pair_prime(15), Error);
  for (int n = 3; n <= 31; n += 2) {
    if (!is_prime(n)) continue;
    CAPTURE(n);
    CHECK(s_pair(n).plus == s_pair_prime(n).plus);
    CHECK(s_pair(n).minus == s_pair_prime(n).minus);
  }
}

TEST_CASE("prime-case values from an independent order-of-two oracle") {
  for (int n = 3; n <= 31; n += 2) {
    if (!is_prime(n)) continue;
    const int d = oracle::order2(n);
    mpz_class plus, minus;
    if (d % 2 == 1) {
      const unsigned e = (n - 1) / (2 * d);
      plus = 1 + p2(e) * (p2((n - 1) / 2) - 1);
      mpz_pow_ui(minus.get_mpz_t(), mpz_class(p2(d) - 1).get_mpz_t(), e);
    } else {
      plus = 1;
      mpz_pow_ui(minus.get_mpz_t(), mpz_class(p2(d / 2) + 1).get_mpz_t(), (n - 1) / d);
    }
    CAPTURE(n);
    CHECK(s_pair(n).plus == plus);
    CHECK(s_pair(n).minus == minus);
  }
}

TEST_CASE("density report cells") {
  auto r3 = density_report(3);
  CHECK(r3.dF_plus.str() == "1/8");
  CHECK(r3.dF_minus.str() == "3/8");
  CHECK(r3.dF.str() == "1/4");
  CHECK(density_report(11).dF.str() == "17/32768");

  auto r15 = density_report(15);
  CHECK(r15.dF_plus.str() == "1/2097152");
  CHECK(r15.dF_minus.str() == "375/2097152");
  // (1 + 375) / 2^22 reduced by hand: 376 = 8 * 47.
  mpq_class v(mpz_class(1 + 375), p2(22));
  v.canonicalize();
  CHECK(v.get_num() == 47);
  CHECK(v.get_den() == 524288);
  CHECK(r15.dF.str() == "47/524288");
}

TEST_CASE("density identities for odd n up to 31") {
  for (int n = 3; n <= 31; n += 2) {
    CAPTURE(n);
    auto r = density_report(n);
    CHECK(r.dF == (r.dF_plus + r.dF_minus) / ExactRational(BigInt(2)));
    CHECK(r.dF_plus == r.dR_plus * inverse_pow2((n - 1) / 2));
    CHECK(r.dF_minus == r.dR_minus * inverse_pow2((n - 1) / 2));
    CHECK(r.dF_given_R == inverse_pow2((n - 1) / 2));
    CHECK(r.dR == ExactRational(r.s_plus + r.s_minus, pow2(n)));
    CHECK(r.s_plus >= 1);
    CHECK(r.s_minus >= 1);
    CHECK(r.s_plus + r.s_minus <= pow2(n));
  }
}

TEST_CASE("even or small degrees are rejected") {
  for (int n : {-3, 0, 1, 2, 4, 10}) {
    CHECK_THROWS_AS(s_pair(n), Error);
    CHECK_THROWS_AS(density_report(n), Error);
  }
  try {
    s_pair(4);
    FAIL("even degree accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEvenDegree);
  }
}

TEST_CASE("kernel counts by enumeration") {
  // Direct count of u with F_u(x)F_u(1/x) = 0 or 1, independent of the library.
  auto brute = [](int n) {
    long zero = 0, one = 0;
    for (long u = 0; u < (1L << n); ++u) {
      std::vector<int> b(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (((u >> i) & 1) && ((u >> j) & 1)) b[((i - j) % n + n) % n] ^= 1;
      bool z = true, o = b[0] == 1;
      for (int i = 0; i < n; ++i) z = z && b[i] == 0;
      for (int i = 1; i < n; ++i) o = o && b[i] == 0;
      zero += z;
      one += o;
    }
    return std::pair<long, long>(zero, one);
  };
  for (int n : {3, 5, 7, 9, 11, 13, 15}) {
    CAPTURE(n);
    auto [z, o] = brute(n);
    SPair e = s_pair_enumerated(n);
    CHECK(e.plus == z);
    CHECK(e.minus == o);
    if (n != 15) {
      CHECK(e.plus == s_pair(n).plus);
      CHECK(e.minus == s_pair(n).minus);
    }
  }
  // At n = 15 the closed form and the direct count part ways.
  CHECK(s_pair_enumerated(15).plus == 31);
  CHECK(s_pair_enumerated(15).minus == 225);
  CHECK(s_pair(15).plus == 1);
  CHECK(s_pair(15).minus == 375);
  CHECK(s_pair_enumerated(21).plus != s_pair(21).plus);
  for (int n : {17, 19}) {
    CHECK(s_pair_enumerated(n).plus == s_pair(n).plus);
    CHECK(s_pair_enumerated(n).minus == s_pair(n).minus);
  }
  CHECK_THROWS_AS(s_pair_enumerated(23), Error);
}

TEST_CASE("table text") {
  CHECK(format_table({}) == "n | d(F+|S+) | d(F-|S-) | d(F|S)\n");
  CHECK(format_table({3}) == "n | d(F+|S+) | d(F-|S-) | d(F|S)\n3 | 1/8 | 3/8 | 1/4\n");
  std::string t13 = format_table({13});
  CHECK(t13.find("\n13 | 1/262144 | 65/262144 | 33/262144\n") != std::string::npos);
  CHECK(table_notes({3, 5, 7, 9, 11, 13}).empty());
  const std::string n15 = table_notes({15});
  CHECK(n15.find("47/524288") != std::string::npos);
  CHECK(n15.find("47/262144") != std::string::npos);
  CHECK(n15.find("(31, 225)") != std::string::npos);
  CHECK(n15.find("d(F|S) = 1/16384") != std::string::npos);
}

TEST_CASE("exact rationals") {
  ExactRational a(BigInt(6), BigInt(-8));
  CHECK(a.str() == "-3/4");
  CHECK(a.den() > 0);
  CHECK(ExactRational(BigInt(4), BigInt(2)).str() == "2");
  CHECK_THROWS_AS(ExactRational(BigInt(1), BigInt(0)), Error);
  CHECK_THROWS_AS(a / ExactRational(BigInt(0)), Error);
  CHECK(inverse_pow2(3).to_double() == doctest::Approx(0.125));
}
