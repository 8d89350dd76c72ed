#ifndef SPINLAB_RESIDUE_HPP_
#define SPINLAB_RESIDUE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/f2poly.hpp"
#include "spinlab/field_spec.hpp"

namespace spinlab {

// Residue computations pack one element of O/8 into 3 bits per coordinate.
inline constexpr int kMaxResidueDegree = 7;

struct ResidueElem {
  int level = 0;               // modulus 2^level
  std::vector<std::uint8_t> c;  // power-basis coordinates in [0, 2^level)

  friend bool operator==(const ResidueElem&, const ResidueElem&) = default;
};

// Z[theta] / (2^level, f).  With 2 inert and odd index this is O / 2^level.
class ResidueRing {
 public:
  ResidueRing() = default;
  ResidueRing(const FieldSpec& K, int level);

  int n() const { return n_; }
  int level() const { return level_; }
  unsigned modulus() const { return 1u << level_; }
  // Number of elements, 2^(level * n).
  std::uint64_t size() const { return std::uint64_t{1} << (level_ * n_); }

  ResidueElem zero() const;
  ResidueElem one() const;
  ResidueElem from_alg(const AlgInt& a) const;
  ResidueElem from_ints(const std::vector<long>& coeffs) const;
  // Reduces an element of a ring of equal or higher level; lifts from a lower
  // level keep the coordinate representatives (so {0,1} lifts stay {0,1}).
  ResidueElem cast(const ResidueElem& a) const;
  // Element number `index`, coordinate i being base-2^level digit i.
  ResidueElem element(std::uint64_t index) const;

  ResidueElem add(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem sub(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem neg(const ResidueElem& a) const;
  ResidueElem mul(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem pow(ResidueElem a, std::uint64_t e) const;
  // sigma^k(a), k mod n.
  ResidueElem conj(const ResidueElem& a, int k) const;
  bool is_unit(const ResidueElem& a) const;

  std::uint32_t pack(const ResidueElem& a) const;
  ResidueElem unpack(std::uint32_t bits) const;

 private:
  void check(const ResidueElem& a) const;

  int n_ = 0;
  int level_ = 0;
  std::vector<unsigned> f_;  // monic, reduced mod 2^level
  std::vector<std::vector<std::vector<unsigned>>> galois_;
};

// Coordinates of a class of M4 in the normal basis {y^(tau^i)}; bit i is the
// coefficient of y^(tau^i).
struct M4Class {
  int n = 0;
  std::uint32_t bits = 0;

  bool bit(int i) const { return (bits >> i) & 1u; }
  // Class of sigma^k applied to a representative: bit i moves to i + k.
  M4Class rotate(int k) const;
  std::string str() const;  // bit 0 first, e.g. "100"

  friend bool operator==(const M4Class&, const M4Class&) = default;
  friend M4Class operator+(const M4Class& a, const M4Class& b) { return {a.n, a.bits ^ b.bits}; }
};

// Lexicographically smallest y (coordinate 0 most significant) whose Galois
// orbit is a basis of O/2.
ResidueElem find_normal_basis(const ResidueRing& ring1);

/* The rings O/2, O/4, O/8 of one field together with the normal basis and
 * the mod-8 Hilbert symbol oracle.  Immutable after construction.
 */
class ResidueFamily {
 public:
  explicit ResidueFamily(const FieldSpec& K);

  const FieldSpec& spec() const { return K_; }
  int n() const { return K_.n; }
  const ResidueRing& ring(int level) const;
  const ResidueElem& normal_basis() const { return y_; }

  // Normal-basis coordinates of a level-1 element.
  std::uint32_t normal_coords(const ResidueElem& w) const;
  // u^(2^n - 1) = 1 + 2w mod 4; the class is w in normal coordinates.
  // Accepts units at level 2 or 3.
  M4Class m4_class_of(const ResidueElem& u) const;
  // prod (1 + 2 y^(tau^i))^(c_i) with y lifted with {0,1} coordinates.
  ResidueElem rho(const M4Class& c, int level = 3) const;
  // Dyadic Hilbert symbol of two units of O/8.
  int hilbert2(const ResidueElem& a, const ResidueElem& b) const;

  std::size_t square_count() const { return squares_.size(); }

 private:
  FieldSpec K_;
  ResidueRing r1_, r2_, r3_;
  ResidueElem y_;
  std::vector<std::uint32_t> inverse_rows_;
  std::vector<ResidueElem> squares_;  // distinct squares of O/8
  std::vector<std::uint8_t> square_unit_;
  std::vector<std::uint8_t> is_square_;  // indexed by packed element
};

struct StarTable {
  int n = 0;
  std::vector<int> star;       // per class bits
  std::vector<int> norm_sign;  // per class bits
  std::uint64_t ker_plus = 0;
  std::uint64_t ker_minus = 0;
};

// Sign of N(a) mod 4 for the {0..3} lift of the class representative.
int norm_sign(const ResidueFamily& fam, const M4Class& c);

struct CirculantA {
  int n = 0;
  std::uint32_t c = 0;  // bit i is c_i

  int entry(int i, int j) const;
  // u^T A v over GF(2).
  int form(std::uint32_t u, std::uint32_t v) const;
  std::string str() const;  // c_0 first
};

CirculantA build_matrix_A(const ResidueFamily& fam);

// Direct evaluation for n <= 5; through the bilinear form of A above that.
StarTable star_table(const ResidueFamily& fam);
StarTable star_table_from_A(const ResidueFamily& fam, const CirculantA& A);

// F_u(x) F_u(x^-1) mod (x^n - 1); u has n bits.
F2Poly b_map(std::uint32_t u, int n);
// x^n g(1/x) mod (x^n - 1): coefficient i moves to (n - i) mod n.
F2Poly reflect_mod_xn(F2Poly g, int n);
// Solution of A h = e_0 as a polynomial.
F2Poly h_poly(const CirculantA& A);
std::pair<std::uint64_t, std::uint64_t> kernel_counts_via_B(const CirculantA& A);

struct KernelReport {
  int n = 0;
  ResidueElem y;
  CirculantA A;
  F2Poly h;
  std::pair<BigInt, BigInt> formula;
  std::pair<std::uint64_t, std::uint64_t> star;
  std::pair<std::uint64_t, std::uint64_t> bmap;
  int star_one = 0;
  int star_minus_one = 0;
  int minus_one_symbol = 0;

  bool agree() const;
  std::string text() const;
};

KernelReport verify_kernel(const ResidueFamily& fam);

}  // namespace spinlab

#endif  // SPINLAB_RESIDUE_HPP_
