#include "spinlab/residue.hpp"

#include <sstream>

#include "spinlab/density.hpp"
#include "spinlab/error.hpp"

namespace spinlab {

namespace {

using Mat = std::vector<std::vector<unsigned>>;

Mat mat_mul(const Mat& a, const Mat& b, unsigned mask) {
  const std::size_t n = a.size();
  Mat r(n, std::vector<unsigned>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) & mask;
  return r;
}

Mat mat_identity(std::size_t n) {
  Mat m(n, std::vector<unsigned>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Inverse of an n x n GF(2) matrix given by row bitmasks; empty if singular.
std::vector<std::uint32_t> gf2_inverse(std::vector<std::uint32_t> rows, int n) {
  std::vector<std::uint32_t> inv(n);
  for (int i = 0; i < n; ++i) inv[i] = 1u << i;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if ((rows[r] >> col) & 1u) {
        piv = r;
        break;
      }
    if (piv < 0) return {};
    std::swap(rows[col], rows[piv]);
    std::swap(inv[col], inv[piv]);
    for (int r = 0; r < n; ++r)
      if (r != col && ((rows[r] >> col) & 1u)) {
        rows[r] ^= rows[col];
        inv[r] ^= inv[col];
      }
  }
  return inv;
}

int parity(std::uint32_t v) { return __builtin_parity(v); }

std::uint32_t lane_mask(int n, unsigned lane_bits) {
  std::uint32_t m = 0;
  for (int i = 0; i < n; ++i) m |= lane_bits << (3 * i);
  return m;
}

}  // namespace

// ---------------------------------------------------------------- ResidueRing

ResidueRing::ResidueRing(const FieldSpec& K, int level) : n_(K.n), level_(level) {
  require(level >= 1 && level <= 3, ErrorCode::kInvalidArgument, "residue level must be 1, 2 or 3");
  require(K.n >= 1 && K.n <= kMaxResidueDegree, ErrorCode::kInvalidArgument,
          "residue arithmetic supports n <= " + std::to_string(kMaxResidueDegree));
  const unsigned mask = modulus() - 1;
  for (const auto& c : K.f) f_.push_back(static_cast<unsigned>(mpz_fdiv_ui(c.get_mpz_t(), modulus())));
  require(f_.back() == 1, ErrorCode::kInvalidArgument, "f must be monic");

  std::vector<int> f2;
  for (unsigned c : f_) f2.push_back(static_cast<int>(c & 1u));
  require(is_irreducible(F2Poly::from_coeffs(f2)), ErrorCode::kC4Violation,
          "f is reducible mod 2");

  require(static_cast<int>(K.galois.size()) == n_, ErrorCode::kInvalidArgument,
          "field spec carries no Galois matrices");
  for (const auto& g : K.galois) {
    Mat m(n_, std::vector<unsigned>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        m[i][j] = static_cast<unsigned>(mpz_fdiv_ui(g[i][j].get_mpz_t(), modulus()));
    galois_.push_back(std::move(m));
  }
  require(galois_[0] == mat_identity(n_), ErrorCode::kNotAutomorphism,
          "galois[0] is not the identity mod 2^k");
  Mat acc = mat_identity(n_);
  for (int i = 1; i <= n_; ++i) {
    acc = mat_mul(galois_[n_ > 1 ? 1 : 0], acc, mask);
    if (i < n_)
      require(acc == galois_[i], ErrorCode::kNotAutomorphism, "sigma powers inconsistent mod 2^k");
  }
  require(acc == mat_identity(n_), ErrorCode::kNotAutomorphism, "sigma^n is not the identity mod 2^k");
}

void ResidueRing::check(const ResidueElem& a) const {
  require(a.level == level_ && static_cast<int>(a.c.size()) == n_, ErrorCode::kInvalidArgument,
          "residue element from a ring of different level or degree");
}

ResidueElem ResidueRing::zero() const { return {level_, std::vector<std::uint8_t>(n_, 0)}; }

ResidueElem ResidueRing::one() const {
  ResidueElem e = zero();
  e.c[0] = 1;
  return e;
}

ResidueElem ResidueRing::from_alg(const AlgInt& a) const {
  require(static_cast<int>(a.c.size()) == n_, ErrorCode::kInvalidArgument, "degree mismatch");
  ResidueElem e = zero();
  for (int i = 0; i < n_; ++i) e.c[i] = static_cast<std::uint8_t>(mpz_fdiv_ui(a.c[i].get_mpz_t(), modulus()));
  return e;
}

ResidueElem ResidueRing::from_ints(const std::vector<long>& coeffs) const {
  require(static_cast<int>(coeffs.size()) <= n_, ErrorCode::kInvalidArgument, "too many coordinates");
  ResidueElem e = zero();
  const long m = modulus();
  for (std::size_t i = 0; i < coeffs.size(); ++i) e.c[i] = static_cast<std::uint8_t>(((coeffs[i] % m) + m) % m);
  return e;
}

ResidueElem ResidueRing::cast(const ResidueElem& a) const {
  require(static_cast<int>(a.c.size()) == n_, ErrorCode::kInvalidArgument, "degree mismatch");
  ResidueElem e = a;
  e.level = level_;
  for (auto& c : e.c) c &= static_cast<std::uint8_t>(modulus() - 1);
  return e;
}

ResidueElem ResidueRing::element(std::uint64_t index) const {
  ResidueElem e = zero();
  for (int i = 0; i < n_; ++i) {
    e.c[i] = static_cast<std::uint8_t>(index & (modulus() - 1));
    index >>= level_;
  }
  return e;
}

ResidueElem ResidueRing::add(const ResidueElem& a, const ResidueElem& b) const {
  check(a);
  check(b);
  ResidueElem r = zero();
  for (int i = 0; i < n_; ++i) r.c[i] = static_cast<std::uint8_t>((a.c[i] + b.c[i]) & (modulus() - 1));
  return r;
}

ResidueElem ResidueRing::sub(const ResidueElem& a, const ResidueElem& b) const {
  check(a);
  check(b);
  ResidueElem r = zero();
  for (int i = 0; i < n_; ++i)
    r.c[i] = static_cast<std::uint8_t>((a.c[i] + modulus() - b.c[i]) & (modulus() - 1));
  return r;
}

ResidueElem ResidueRing::neg(const ResidueElem& a) const { return sub(zero(), a); }

ResidueElem ResidueRing::mul(const ResidueElem& a, const ResidueElem& b) const {
  check(a);
  check(b);
  unsigned prod[2 * kMaxResidueDegree] = {};
  for (int i = 0; i < n_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < n_; ++j) prod[i + j] += a.c[i] * b.c[j];
  }
  const unsigned mask = modulus() - 1;
  for (int d = 2 * n_ - 2; d >= n_; --d) {
    unsigned c = prod[d] & mask;
    if (!c) continue;
    for (int t = 0; t < n_; ++t) prod[d - n_ + t] += (modulus() - c) * f_[t];
  }
  ResidueElem r = zero();
  for (int i = 0; i < n_; ++i) r.c[i] = static_cast<std::uint8_t>(prod[i] & mask);
  return r;
}

ResidueElem ResidueRing::pow(ResidueElem a, std::uint64_t e) const {
  ResidueElem r = one();
  while (e) {
    if (e & 1u) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

ResidueElem ResidueRing::conj(const ResidueElem& a, int k) const {
  check(a);
  k %= n_;
  if (k < 0) k += n_;
  const auto& g = galois_[k];
  ResidueElem r = zero();
  for (int i = 0; i < n_; ++i) {
    unsigned s = 0;
    for (int j = 0; j < n_; ++j) s += g[i][j] * a.c[j];
    r.c[i] = static_cast<std::uint8_t>(s & (modulus() - 1));
  }
  return r;
}

bool ResidueRing::is_unit(const ResidueElem& a) const {
  check(a);
  // O/2 is a field, so a is a unit iff it is nonzero mod 2.
  for (auto c : a.c)
    if (c & 1u) return true;
  return false;
}

std::uint32_t ResidueRing::pack(const ResidueElem& a) const {
  check(a);
  std::uint32_t bits = 0;
  for (int i = 0; i < n_; ++i) bits |= static_cast<std::uint32_t>(a.c[i]) << (3 * i);
  return bits;
}

ResidueElem ResidueRing::unpack(std::uint32_t bits) const {
  ResidueElem e = zero();
  for (int i = 0; i < n_; ++i) e.c[i] = static_cast<std::uint8_t>((bits >> (3 * i)) & 7u & (modulus() - 1));
  return e;
}

// -------------------------------------------------------------------- M4Class

M4Class M4Class::rotate(int k) const {
  k %= n;
  if (k < 0) k += n;
  const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
  if (k == 0) return *this;
  return {n, ((bits << k) | (bits >> (n - k))) & full};
}

std::string M4Class::str() const {
  std::string s;
  for (int i = 0; i < n; ++i) s += bit(i) ? '1' : '0';
  return s;
}

// ------------------------------------------------------------- normal basis

ResidueElem find_normal_basis(const ResidueRing& ring1) {
  require(ring1.level() == 1, ErrorCode::kInvalidArgument, "normal basis search needs the level-1 ring");
  const int n = ring1.n();
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    ResidueElem y = ring1.zero();
    for (int i = 0; i < n; ++i) y.c[i] = (m >> (n - 1 - i)) & 1u;
    std::vector<std::uint32_t> rows(n, 0);
    // rows[j] bit i = coordinate j of y^(tau^i): the matrix with conjugates as columns.
    for (int i = 0; i < n; ++i) {
      ResidueElem yi = ring1.conj(y, i);
      for (int j = 0; j < n; ++j)
        if (yi.c[j]) rows[j] |= 1u << i;
    }
    if (!gf2_inverse(rows, n).empty()) return y;
  }
  fail(ErrorCode::kInternal, "no normal basis of O/2 found");
}

// ----------------------------------------------------------- ResidueFamily

ResidueFamily::ResidueFamily(const FieldSpec& K)
    : K_(K), r1_(K, 1), r2_(K, 2), r3_(K, 3), y_(find_normal_basis(r1_)) {
  const int n = K.n;
  std::vector<std::uint32_t> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    ResidueElem yi = r1_.conj(y_, i);
    for (int j = 0; j < n; ++j)
      if (yi.c[j]) rows[j] |= 1u << i;
  }
  inverse_rows_ = gf2_inverse(rows, n);
  require(!inverse_rows_.empty(), ErrorCode::kInternal, "normal basis matrix is singular");

  // Squares of O/8 only depend on the root mod 4.
  is_square_.assign(std::size_t{1} << (3 * n), 0);
  for (std::uint64_t idx = 0; idx < r2_.size(); ++idx) {
    ResidueElem x = r3_.cast(r2_.element(idx));
    ResidueElem s = r3_.mul(x, x);
    std::uint32_t key = r3_.pack(s);
    if (is_square_[key]) continue;
    is_square_[key] = 1;
    squares_.push_back(s);
    square_unit_.push_back(r3_.is_unit(s) ? 1 : 0);
  }
}

const ResidueRing& ResidueFamily::ring(int level) const {
  switch (level) {
    case 1: return r1_;
    case 2: return r2_;
    case 3: return r3_;
    default: fail(ErrorCode::kInvalidArgument, "residue level must be 1, 2 or 3");
  }
}

std::uint32_t ResidueFamily::normal_coords(const ResidueElem& w) const {
  require(w.level == 1, ErrorCode::kInvalidArgument, "normal_coords expects a level-1 element");
  std::uint32_t wbits = 0;
  for (int j = 0; j < n(); ++j)
    if (w.c[j]) wbits |= 1u << j;
  std::uint32_t out = 0;
  for (int i = 0; i < n(); ++i)
    if (parity(inverse_rows_[i] & wbits)) out |= 1u << i;
  return out;
}

M4Class ResidueFamily::m4_class_of(const ResidueElem& u) const {
  require(u.level >= 2, ErrorCode::kInvalidArgument, "m4_class_of expects an element mod 4 or 8");
  ResidueElem u4 = r2_.cast(u);
  require(r2_.is_unit(u4), ErrorCode::kInvalidArgument, "m4_class_of: not a unit");
  ResidueElem t = r2_.pow(u4, (std::uint64_t{1} << n()) - 1);
  require(t.c[0] % 2 == 1, ErrorCode::kInternal, "u^(2^n-1) is not 1 mod 2");
  for (int i = 1; i < n(); ++i) require(t.c[i] % 2 == 0, ErrorCode::kInternal, "u^(2^n-1) is not 1 mod 2");
  ResidueElem w = r1_.zero();
  w.c[0] = static_cast<std::uint8_t>(((t.c[0] - 1) / 2) & 1u);
  for (int i = 1; i < n(); ++i) w.c[i] = static_cast<std::uint8_t>((t.c[i] / 2) & 1u);
  return {n(), normal_coords(w)};
}

ResidueElem ResidueFamily::rho(const M4Class& c, int level) const {
  const ResidueRing& R = ring(level);
  ResidueElem r = R.one();
  for (int i = 0; i < n(); ++i) {
    if (!c.bit(i)) continue;
    ResidueElem yi = R.cast(r1_.conj(y_, i));
    ResidueElem f = R.add(R.one(), R.add(yi, yi));
    r = R.mul(r, f);
  }
  return r;
}

int ResidueFamily::hilbert2(const ResidueElem& a, const ResidueElem& b) const {
  require(a.level == 3 && b.level == 3, ErrorCode::kInvalidArgument, "hilbert2 expects elements mod 8");
  require(r3_.is_unit(a) && r3_.is_unit(b), ErrorCode::kInvalidArgument, "hilbert2 expects units");
  // a x^2 + b y^2 = z^2 with one of x, y, z a unit.  x^2 ranges over the
  // squares list and x is a unit iff x^2 is.
  const std::size_t m = squares_.size();
  std::vector<std::uint32_t> ax(m), by(m);
  for (std::size_t i = 0; i < m; ++i) {
    ax[i] = r3_.pack(r3_.mul(a, squares_[i]));
    by[i] = r3_.pack(r3_.mul(b, squares_[i]));
  }
  const std::uint32_t hi = lane_mask(n(), 4u), lo = lane_mask(n(), 1u);
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t x = ax[i];
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint32_t y = by[j];
      const std::uint32_t w = ((x & ~hi) + (y & ~hi)) ^ ((x ^ y) & hi);
      if (is_square_[w] && (square_unit_[i] || square_unit_[j] || (w & lo))) return 1;
    }
  }
  return -1;
}

// ------------------------------------------------------------------ tables

int norm_sign(const ResidueFamily& fam, const M4Class& c) {
  ResidueElem r = fam.rho(c, 2);
  AlgInt a{std::vector<BigInt>(fam.n())};
  for (int i = 0; i < fam.n(); ++i) a.c[i] = r.c[i];
  BigInt nm = norm(fam.spec(), a);
  unsigned long m4 = mpz_fdiv_ui(nm.get_mpz_t(), 4);
  require(m4 == 1 || m4 == 3, ErrorCode::kInternal, "norm of a unit is even");
  return m4 == 1 ? 1 : -1;
}

int CirculantA::entry(int i, int j) const {
  int d = ((i - j) % n + n) % n;
  return (c >> d) & 1u;
}

int CirculantA::form(std::uint32_t u, std::uint32_t v) const {
  int s = 0;
  for (int i = 0; i < n; ++i) {
    if (!((u >> i) & 1u)) continue;
    for (int j = 0; j < n; ++j)
      if ((v >> j) & 1u) s ^= entry(i, j);
  }
  return s;
}

std::string CirculantA::str() const {
  std::string s;
  for (int i = 0; i < n; ++i) s += ((c >> i) & 1u) ? '1' : '0';
  return s;
}

CirculantA build_matrix_A(const ResidueFamily& fam) {
  const int n = fam.n();
  const ResidueRing& R = fam.ring(3);
  ResidueElem alpha = fam.rho({n, 1u});
  CirculantA A{n, 0};
  for (int i = 0; i < n; ++i)
    if (fam.hilbert2(alpha, R.conj(alpha, i)) == -1) A.c |= 1u << i;
  for (int i = 1; i < n; ++i)
    require(((A.c >> i) & 1u) == ((A.c >> (n - i)) & 1u), ErrorCode::kInternal,
            "matrix A is not symmetric");
  std::vector<std::uint32_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A.entry(i, j)) rows[i] |= 1u << j;
  require(!gf2_inverse(rows, n).empty(), ErrorCode::kInternal, "matrix A is singular");
  return A;
}

namespace {

StarTable fill_norms(const ResidueFamily& fam, StarTable t) {
  const int n = fam.n();
  t.norm_sign.resize(std::size_t{1} << n);
  for (std::uint32_t c = 0; c < (1u << n); ++c) {
    t.norm_sign[c] = norm_sign(fam, {n, c});
    if (t.star[c] == 1) (t.norm_sign[c] == 1 ? t.ker_plus : t.ker_minus) += 1;
  }
  return t;
}

}  // namespace

StarTable star_table_from_A(const ResidueFamily& fam, const CirculantA& A) {
  const int n = fam.n();
  StarTable t;
  t.n = n;
  t.star.assign(std::size_t{1} << n, 1);
  for (std::uint32_t c = 0; c < (1u << n); ++c) {
    M4Class cls{n, c};
    for (int k = 1; k < n; ++k)
      if (A.form(c, cls.rotate(k).bits)) t.star[c] = -1;
  }
  return fill_norms(fam, std::move(t));
}

StarTable star_table(const ResidueFamily& fam) {
  const int n = fam.n();
  if (n > 5) return star_table_from_A(fam, build_matrix_A(fam));
  const ResidueRing& R = fam.ring(3);
  StarTable t;
  t.n = n;
  t.star.assign(std::size_t{1} << n, 1);
  for (std::uint32_t c = 0; c < (1u << n); ++c) {
    ResidueElem r = fam.rho({n, c});
    for (int k = 1; k < n && t.star[c] == 1; ++k)
      if (fam.hilbert2(r, R.conj(r, k)) == -1) t.star[c] = -1;
  }
  return fill_norms(fam, std::move(t));
}

F2Poly b_map(std::uint32_t u, int n) {
  require(n >= 1 && n <= 31, ErrorCode::kInvalidArgument, "b_map: n out of range");
  require(n == 32 || (u >> n) == 0, ErrorCode::kInvalidArgument, "b_map: u has more than n bits");
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    if (!((u >> i) & 1u)) continue;
    for (int j = 0; j < n; ++j)
      if ((u >> j) & 1u) out ^= std::uint64_t{1} << (((i - j) % n + n) % n);
  }
  return F2Poly(out);
}

F2Poly reflect_mod_xn(F2Poly g, int n) {
  require(n >= 1 && n <= 63 && g.degree() < n, ErrorCode::kInvalidArgument,
          "reflect_mod_xn: degree must be below n");
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i)
    if (g.coeff(i)) out |= std::uint64_t{1} << ((n - i) % n);
  return F2Poly(out);
}

F2Poly h_poly(const CirculantA& A) {
  const int n = A.n;
  std::vector<std::uint32_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A.entry(i, j)) rows[i] |= 1u << j;
  auto inv = gf2_inverse(rows, n);
  require(!inv.empty(), ErrorCode::kInvalidArgument, "h_poly: A is singular");
  // h = A^{-1} e_0 is column 0 of the inverse.
  std::uint64_t h = 0;
  for (int i = 0; i < n; ++i)
    if (inv[i] & 1u) h |= std::uint64_t{1} << i;
  return F2Poly(h);
}

std::pair<std::uint64_t, std::uint64_t> kernel_counts_via_B(const CirculantA& A) {
  const F2Poly h = h_poly(A);
  std::uint64_t zero = 0, hits = 0;
  for (std::uint32_t u = 0; u < (1u << A.n); ++u) {
    F2Poly b = b_map(u, A.n);
    if (b.is_zero()) ++zero;
    if (b == h) ++hits;
  }
  return {zero, hits};
}

bool KernelReport::agree() const {
  return formula.first == star.first && formula.second == star.second &&
         formula.first == bmap.first && formula.second == bmap.second && star_one == 1 &&
         star_minus_one == -1 && minus_one_symbol == -1;
}

std::string KernelReport::text() const {
  std::ostringstream out;
  out << "n = " << n << "\n";
  out << "y = [";
  for (std::size_t i = 0; i < y.c.size(); ++i) out << (i ? ", " : "") << int(y.c[i]);
  out << "]\n";
  out << "c = " << A.str() << "\n";
  out << "h(x) = " << h.str() << "\n";
  out << "(-1,-1)_2 = " << minus_one_symbol << "\n";
  out << "star(1) = " << star_one << ", star(-1) = " << star_minus_one << "\n";
  out << "closed formula (s+, s-) = (" << formula.first.get_str() << ", " << formula.second.get_str()
      << ")\n";
  out << "star table     (ker+, ker-) = (" << star.first << ", " << star.second << ")\n";
  out << "B-map          (#B^-1(0), #B^-1(h)) = (" << bmap.first << ", " << bmap.second << ")\n";
  out << "verdict: " << (agree() ? "AGREE" : "DISAGREE") << "\n";
  return out.str();
}

KernelReport verify_kernel(const ResidueFamily& fam) {
  const int n = fam.n();
  KernelReport rep;
  rep.n = n;
  rep.y = fam.normal_basis();
  rep.A = build_matrix_A(fam);
  rep.h = h_poly(rep.A);
  SPair s = s_pair(n);
  rep.formula = {s.plus, s.minus};
  StarTable t = star_table(fam);
  rep.star = {t.ker_plus, t.ker_minus};
  rep.bmap = kernel_counts_via_B(rep.A);
  const std::uint32_t all = (1u << n) - 1;
  rep.star_one = t.star[0];
  rep.star_minus_one = t.star[all];
  const ResidueRing& R = fam.ring(3);
  ResidueElem m1 = R.neg(R.one());
  rep.minus_one_symbol = fam.hilbert2(m1, m1);
  return rep;
}

}  // namespace spinlab
