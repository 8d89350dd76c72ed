#ifndef SPINLAB_NUMFIELD_HPP_
#define SPINLAB_NUMFIELD_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "spinlab/field_spec.hpp"
#include "spinlab/residue.hpp"

namespace spinlab {

// The degree-one prime (p, theta - a).
struct PrimeDeg1 {
  std::uint64_t p = 0;
  std::uint64_t a = 0;

  friend bool operator==(const PrimeDeg1&, const PrimeDeg1&) = default;
};

// Primes are handled as 64-bit words; this bound keeps every product of two
// residues inside 128 bits.
inline constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

bool is_prime_u64(std::uint64_t p);

// Ascending roots of f mod p when f splits into distinct linear factors,
// otherwise nullopt.  p must be an odd prime; p | disc_f raises kRamifiedPrime.
std::optional<std::vector<std::uint64_t>> split_completely(const FieldSpec& K, std::uint64_t p);

// sigma(P) = (p, theta - b) where s(b) = a mod p.  `roots` are the roots of f
// mod p; the overload without them recomputes them.
PrimeDeg1 conjugate_prime(const FieldSpec& K, const PrimeDeg1& P,
                          const std::vector<std::uint64_t>& roots);
PrimeDeg1 conjugate_prime(const FieldSpec& K, const PrimeDeg1& P);

struct GeneratorOptions {
  // Squared search radius is multiplier * n * N(P^h)^(2/n).
  double radius_multiplier = 4.0;
};

// Totally positive alpha with (alpha) = P^h.  Raises kGeneratorNotFound when
// the bounded short-vector search finds no element of norm +-p^h.
AlgInt generator_of_power(const FieldSpec& K, const PrimeDeg1& P, long h,
                          const GeneratorOptions& opt = {});

// Legendre symbol of alpha(b) mod q for Q = (q, theta - b).
int legendre_deg1(const FieldSpec& K, const AlgInt& alpha, const PrimeDeg1& Q);
int legendre_u64(std::uint64_t t, std::uint64_t q);

// spin(P, sigma^k) from a totally positive generator of P^h.
int spin(const FieldSpec& K, const AlgInt& alpha, const PrimeDeg1& P, int k,
         const std::vector<std::uint64_t>& roots);
int spin(const FieldSpec& K, const PrimeDeg1& P, int k);

M4Class r4_of_generator(const ResidueFamily& fam, const AlgInt& alpha);
M4Class r4_of_prime(const ResidueFamily& fam, const PrimeDeg1& P);

}  // namespace spinlab

#endif  // SPINLAB_NUMFIELD_HPP_
