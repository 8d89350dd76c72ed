#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "spinlab/density.hpp"
#include "spinlab/error.hpp"
#include "spinlab/field_spec.hpp"
#include "spinlab/residue.hpp"

using namespace spinlab;

namespace {

const FieldSpec& field7() {
  static const FieldSpec K = load_spec_file(SPINLAB_FIELDS_DIR "/simplest-cubic-7.cfg");
  return K;
}
const FieldSpec& field9() {
  static const FieldSpec K = load_spec_file(SPINLAB_FIELDS_DIR "/cyclic-cubic-9.cfg");
  return K;
}
const FieldSpec& field11() {
  static const FieldSpec K = load_spec_file(SPINLAB_FIELDS_DIR "/cyclotomic-quintic-11.cfg");
  return K;
}

oracle::Cubic8 cubic_oracle(const FieldSpec& K) {
  oracle::Cubic8 o;
  for (const auto& c : K.f) o.f.push_back(static_cast<int>(c.get_si()));
  return o;
}

std::vector<int> as_ints(const ResidueElem& e) { return {e.c.begin(), e.c.end()}; }

// Rank over GF(2) of the rows given as bit masks.
int rank2(std::vector<std::uint32_t> rows) {
  int r = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](std::uint32_t v) { return (v >> bit) & 1u; });
    if (it == rows.end()) continue;
    std::uint32_t piv = *it;
    rows.erase(it);
    for (auto& v : rows)
      if ((v >> bit) & 1u) v ^= piv;
    ++r;
  }
  return r;
}

std::uint32_t mask_of(const ResidueElem& e) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < e.c.size(); ++i) m |= (e.c[i] & 1u) << i;
  return m;
}

}  // namespace

TEST_CASE("ring arithmetic mod 8") {
  const ResidueRing R(field7(), 3);
  CHECK(R.size() == 512);
  CHECK(R.modulus() == 8);
  // theta^3 = -theta^2 + 2 theta + 1.
  ResidueElem t = R.from_ints({0, 1, 0});
  CHECK(R.mul(t, R.mul(t, t)) == R.from_ints({1, 2, -1}));
  CHECK(R.mul(t, R.mul(t, t)).c == std::vector<std::uint8_t>{1, 2, 7});
  CHECK(R.add(R.one(), R.neg(R.one())) == R.zero());
  CHECK(R.pow(t, 0) == R.one());

  // Multiplication agrees with the schoolbook oracle.
  const auto O = cubic_oracle(field7());
  for (std::uint64_t i = 0; i < 512; i += 7)
    for (std::uint64_t j = 0; j < 512; j += 5) {
      auto a = R.element(i), b = R.element(j);
      CHECK(as_ints(R.mul(a, b)) == O.mul(as_ints(a), as_ints(b)));
    }
}

TEST_CASE("sigma has order n on every element of O/8") {
  for (const FieldSpec* K : {&field7(), &field9()}) {
    const ResidueRing R(*K, 3);
    bool ok = true, moved = false;
    for (std::uint64_t i = 0; i < R.size(); ++i) {
      auto a = R.element(i);
      ok = ok && R.conj(R.conj(R.conj(a, 1), 1), 1) == a && R.conj(a, 3) == a;
      moved = moved || R.conj(a, 1) != a;
    }
    CHECK(ok);
    CHECK(moved);
  }
  // sigma is a ring map.
  const ResidueRing R(field7(), 3);
  for (std::uint64_t i = 1; i < 512; i += 13)
    for (std::uint64_t j = 3; j < 512; j += 17) {
      auto a = R.element(i), b = R.element(j);
      CHECK(R.conj(R.mul(a, b), 1) == R.mul(R.conj(a, 1), R.conj(b, 1)));
    }
}

TEST_CASE("units and packing") {
  const ResidueRing R4(field7(), 2);
  int units = 0;
  for (std::uint64_t i = 0; i < R4.size(); ++i) {
    auto a = R4.element(i);
    units += R4.is_unit(a);
    CHECK(R4.unpack(R4.pack(a)) == a);
  }
  CHECK(units == 56);
  const ResidueRing R8(field7(), 3);
  CHECK(R8.cast(R8.from_ints({5, 6, 7})) == R8.from_ints({5, 6, 7}));
  CHECK(R4.cast(R8.from_ints({5, 6, 7})) == R4.from_ints({1, 2, 3}));
}

TEST_CASE("normal basis") {
  for (const FieldSpec* K : {&field7(), &field9(), &field11()}) {
    const int n = K->n;
    const ResidueRing R1(*K, 1);
    const ResidueElem y = find_normal_basis(R1);
    CHECK(y != R1.one());
    std::vector<std::uint32_t> orbit;
    ResidueElem sum = R1.zero();
    for (int k = 0; k < n; ++k) {
      orbit.push_back(mask_of(R1.conj(y, k)));
      sum = R1.add(sum, R1.conj(y, k));
    }
    CHECK(rank2(orbit) == n);
    // A normal basis element of an odd-degree extension of GF(2) has trace 1.
    CHECK(sum == R1.one());

    // Lexicographic minimality, coordinate 0 most significant.
    ResidueElem first;
    bool found = false;
    for (std::uint32_t code = 1; code < (1u << n) && !found; ++code) {
      ResidueElem e = R1.zero();
      for (int i = 0; i < n; ++i) e.c[i] = (code >> (n - 1 - i)) & 1u;
      std::vector<std::uint32_t> o;
      for (int k = 0; k < n; ++k) o.push_back(mask_of(R1.conj(e, k)));
      if (rank2(o) == n) {
        first = e;
        found = true;
      }
    }
    REQUIRE(found);
    CHECK(first == y);
  }
  CHECK(find_normal_basis(ResidueRing(field7(), 1)).c == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(find_normal_basis(ResidueRing(field9(), 1)).c == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("m4 classes") {
  const ResidueFamily fam(field7());
  const ResidueRing& R2 = fam.ring(2);
  CHECK(fam.m4_class_of(R2.one()).bits == 0);
  CHECK(fam.m4_class_of(R2.neg(R2.one())).bits == 0b111);
  for (std::uint32_t c = 0; c < 8; ++c) {
    CHECK(fam.m4_class_of(fam.rho({3, c}, 2)).bits == c);
    CHECK(fam.m4_class_of(fam.rho({3, c}, 3)).bits == c);
  }
  CHECK(M4Class{3, 0b001}.str() == "100");
  CHECK(M4Class{3, 0b001}.rotate(1).bits == 0b010);
  CHECK(M4Class{3, 0b100}.rotate(1).bits == 0b001);
  CHECK(M4Class{3, 0b011}.rotate(-1).bits == 0b101);
  CHECK(M4Class{3, 0b011}.rotate(3) == M4Class{3, 0b011});

  // Independent dictionary: each class is the coset rho(c) * (unit squares).
  std::map<std::vector<std::uint8_t>, std::uint32_t> dict;
  std::set<std::vector<std::uint8_t>> squares;
  for (std::uint64_t i = 0; i < R2.size(); ++i) {
    auto s = R2.element(i);
    if (R2.is_unit(s)) squares.insert(R2.mul(s, s).c);
  }
  CHECK(squares.size() == 7);
  for (std::uint32_t c = 0; c < 8; ++c)
    for (const auto& sq : squares) dict[R2.mul(fam.rho({3, c}, 2), ResidueElem{2, sq}).c] = c;
  CHECK(dict.size() == 56);
  for (std::uint64_t i = 0; i < R2.size(); ++i) {
    auto u = R2.element(i);
    if (!R2.is_unit(u)) continue;
    CHECK(fam.m4_class_of(u).bits == dict.at(u.c));
  }

  // Galois action on classes rotates bits.
  for (std::uint64_t i = 0; i < R2.size(); ++i) {
    auto u = R2.element(i);
    if (!R2.is_unit(u)) continue;
    for (int k = 0; k < 3; ++k) CHECK(fam.m4_class_of(R2.conj(u, k)) == fam.m4_class_of(u).rotate(k));
  }
  CHECK_THROWS_AS(fam.m4_class_of(R2.from_ints({2, 0, 0})), Error);
}

TEST_CASE("hilbert symbol table against brute force mod 8") {
  for (const FieldSpec* K : {&field7(), &field9()}) {
    const ResidueFamily fam(*K);
    const auto O = cubic_oracle(*K);
    for (std::uint32_t u = 0; u < 8; ++u)
      for (std::uint32_t v = u; v < 8; ++v) {
        auto a = fam.rho({3, u}), b = fam.rho({3, v});
        CAPTURE(u);
        CAPTURE(v);
        CHECK(fam.hilbert2(a, b) == O.hilbert(as_ints(a), as_ints(b)));
      }
  }
}

TEST_CASE("trivial symbol identities") {
  const ResidueFamily fam(field7());
  const ResidueRing& R = fam.ring(3);
  const ResidueElem one = R.one(), m1 = R.neg(R.one());
  CHECK(fam.hilbert2(one, one) == 1);
  CHECK(fam.hilbert2(m1, m1) == -1);
  for (std::uint64_t i = 0; i < R.size(); i += 3) {
    auto a = R.element(i);
    if (!R.is_unit(a)) continue;
    CHECK(fam.hilbert2(a, one) == 1);
    CHECK(fam.hilbert2(R.mul(a, a), m1) == 1);
  }
  CHECK_THROWS_AS(fam.hilbert2(R.from_ints({2, 0, 0}), one), Error);
}

TEST_CASE("star table, norms and kernels at n = 3") {
  for (const FieldSpec* K : {&field7(), &field9()}) {
    const ResidueFamily fam(*K);
    const auto O = cubic_oracle(*K);
    const StarTable t = star_table(fam);
    const ResidueRing& R = fam.ring(3);
    std::uint64_t kp = 0, km = 0;
    for (std::uint32_t c = 0; c < 8; ++c) {
      auto r = fam.rho({3, c});
      int star = 1;
      for (int k = 1; k < 3; ++k)
        if (O.hilbert(as_ints(r), as_ints(R.conj(r, k))) == -1) star = -1;
      CHECK(t.star[c] == star);
      // Norm sign of the class from an exact norm of a {0..3} lift.
      auto r2 = fam.rho({3, c}, 2);
      AlgInt a = make_alg(*K, {r2.c[0], r2.c[1], r2.c[2]});
      long nm = norm(*K, a).get_si();
      CHECK(t.norm_sign[c] == (((nm % 4) + 4) % 4 == 1 ? 1 : -1));
      if (star == 1) (t.norm_sign[c] == 1 ? kp : km)++;
    }
    CHECK(t.star[0] == 1);
    CHECK(t.star[7] == -1);
    CHECK(t.norm_sign[7] == -1);
    CHECK(t.ker_plus == 1);
    CHECK(t.ker_minus == 3);
    CHECK(kp == t.ker_plus);
    CHECK(km == t.ker_minus);
  }
}

TEST_CASE("matrix A and the bilinear form") {
  for (const FieldSpec* K : {&field7(), &field9(), &field11()}) {
    const ResidueFamily fam(*K);
    const int n = K->n;
    const CirculantA A = build_matrix_A(fam);
    CAPTURE(K->name);
    // Sum of a row is the symbol (alpha, prod of conjugates) = (alpha, -1)
    // up to squares, so popcount(c) is odd.
    CHECK(__builtin_popcount(A.c) % 2 == 1);
    for (int i = 1; i < n; ++i) CHECK(A.entry(0, i) == A.entry(i, 0));
    for (std::uint32_t u = 0; u < (1u << n); u += (n > 3 ? 3 : 1))
      for (std::uint32_t v = 0; v < (1u << n); v += (n > 3 ? 5 : 1)) {
        int expect = A.form(u, v) ? -1 : 1;
        CHECK(fam.hilbert2(fam.rho({n, u}), fam.rho({n, v})) == expect);
      }
    // c_0 is the symbol (alpha, alpha) = (alpha, -1).
    const ResidueRing& R = fam.ring(3);
    CHECK(((A.c & 1u) ? -1 : 1) == fam.hilbert2(fam.rho({n, 1}), R.neg(R.one())));
  }
  const CirculantA A7 = build_matrix_A(ResidueFamily(field7()));
  CHECK(A7.str() == "100");
}

TEST_CASE("B map and h") {
  CHECK(b_map(0b001, 3) == F2Poly::one());
  CHECK(b_map(0, 3).is_zero());
  CHECK(b_map(0b011, 3) == F2Poly::from_coeffs({0, 1, 1}));
  CHECK(b_map(0b111, 3) == F2Poly::from_coeffs({1, 1, 1}));
  CHECK(reflect_mod_xn(F2Poly::from_coeffs({1, 1, 0}), 3) == F2Poly::from_coeffs({1, 0, 1}));
  CHECK_THROWS_AS(b_map(0b1000, 3), Error);
  for (int n : {3, 5, 7, 9})
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
      F2Poly b = b_map(u, n);
      CHECK(reflect_mod_xn(b, n) == b);
      CHECK(b.coeff(0) == (__builtin_popcount(u) & 1));
    }

  for (const FieldSpec* K : {&field7(), &field9(), &field11()}) {
    const int n = K->n;
    const CirculantA A = build_matrix_A(ResidueFamily(*K));
    const F2Poly h = h_poly(A);
    CHECK(reflect_mod_xn(h, n) == h);
    // A h = e_0: the circulant acts as multiplication by sum c_i x^i.
    F2Poly cpoly(A.c);
    CHECK(rem(mul(cpoly, h), F2Poly::xn_minus_1(n)) == F2Poly::one());

    // Count preimages directly from the definitions.
    std::uint64_t zeros = 0, hits = 0;
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
      F2Poly b = b_map(u, n);
      zeros += b.is_zero();
      hits += b == h;
    }
    auto counts = kernel_counts_via_B(A);
    CHECK(counts.first == zeros);
    CHECK(counts.second == hits);
    CHECK(counts.first >= 1);
    CHECK(counts.first == s_pair(n).plus);
    CHECK(counts.second == s_pair(n).minus);
  }
}

TEST_CASE("three-way kernel agreement") {
  for (const FieldSpec* K : {&field7(), &field9(), &field11()}) {
    const ResidueFamily fam(*K);
    const KernelReport r = verify_kernel(fam);
    CAPTURE(K->name);
    CHECK(r.agree());
    CHECK(r.star_one == 1);
    CHECK(r.star_minus_one == -1);
    CHECK(r.minus_one_symbol == -1);
    CHECK(r.formula.first == s_pair(K->n).plus);
    CHECK(r.formula.second == s_pair(K->n).minus);
    CHECK(r.star.first == r.bmap.first);
    CHECK(r.star.second == r.bmap.second);
    CHECK(r.text().find("AGREE") != std::string::npos);
  }
}

TEST_CASE("direct star table matches the bilinear-form route at n = 5") {
  const ResidueFamily fam(field11());
  const StarTable direct = star_table(fam);
  const StarTable viaA = star_table_from_A(fam, build_matrix_A(fam));
  CHECK(direct.star == viaA.star);
  CHECK(direct.norm_sign == viaA.norm_sign);
  CHECK(direct.ker_plus == 1);
  CHECK(direct.ker_minus == 5);
  for (std::uint32_t c = 0; c < 32; c += 7) CHECK(norm_sign(fam, {5, c}) == direct.norm_sign[c]);
}
