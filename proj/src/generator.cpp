#include <cmath>
#include <functional>

#include "spinlab/error.hpp"
#include "spinlab/numfield.hpp"

namespace spinlab {

namespace {

using Row = std::vector<BigInt>;
using RealRow = std::vector<long double>;

constexpr long double kLovasz = 0.99L;
constexpr std::size_t kMaxEnumerated = 2000000;

// Root of f mod p^h above the simple root a mod p.
BigInt hensel_lift(const FieldSpec& K, std::uint64_t a, std::uint64_t p, long h, const BigInt& ph) {
  BigInt x = a;
  BigInt mod = p;
  std::vector<BigInt> df;
  for (std::size_t i = 1; i < K.f.size(); ++i) df.push_back(K.f[i] * static_cast<long>(i));
  auto eval = [](const std::vector<BigInt>& g, const BigInt& v, const BigInt& m) {
    BigInt acc = 0;
    for (std::size_t i = g.size(); i-- > 0;) {
      acc = acc * v + g[i];
      mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    return acc;
  };
  long have = 1;
  while (have < h) {
    have *= 2;
    mod = (have >= h) ? ph : mod * mod;
    BigInt fx = eval(K.f, x, mod), dfx = eval(df, x, mod), inv;
    require(mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t()) != 0,
            ErrorCode::kRamifiedPrime, "f'(a) is not invertible mod p");
    x -= fx * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  }
  return x;
}

// Gram matrix of the trace form Tr(theta^(j+k)) from Newton's identities.
std::vector<Row> trace_gram(const FieldSpec& K) {
  const int n = K.n;
  std::vector<BigInt> ps(2 * n - 1, 0);
  ps[0] = n;
  for (int k = 1; k <= 2 * n - 2; ++k) {
    BigInt s = 0;
    for (int i = 1; i <= std::min(k - 1, n); ++i) s += K.f[n - i] * ps[k - i];
    if (k <= n) s += K.f[n - k] * k;
    ps[k] = -s;
  }
  std::vector<Row> g(n, Row(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g[j][k] = ps[j + k];
  return g;
}

struct Gso {
  std::vector<RealRow> mu;
  RealRow b;  // squared lengths of the orthogonalized vectors
};

Gso gram_schmidt(const std::vector<RealRow>& e) {
  const std::size_t n = e.size();
  Gso g{std::vector<RealRow>(n, RealRow(n, 0)), RealRow(n, 0)};
  std::vector<RealRow> star = e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      long double dot = 0;
      for (std::size_t t = 0; t < n; ++t) dot += e[i][t] * star[j][t];
      g.mu[i][j] = dot / g.b[j];
      for (std::size_t t = 0; t < n; ++t) star[i][t] -= g.mu[i][j] * star[j][t];
    }
    long double nn = 0;
    for (std::size_t t = 0; t < n; ++t) nn += star[i][t] * star[i][t];
    g.b[i] = nn;
  }
  return g;
}

class Embedder {
 public:
  explicit Embedder(const FieldSpec& K) : n_(K.n), pw_(K.n, RealRow(K.n)) {
    for (int i = 0; i < n_; ++i) {
      long double r = K.embeddings.approx(i), acc = 1;
      for (int j = 0; j < n_; ++j) {
        pw_[i][j] = acc;
        acc *= r;
      }
    }
  }

  RealRow operator()(const Row& c) const {
    RealRow out(n_, 0);
    for (int j = 0; j < n_; ++j) {
      long double cj = c[j].get_d();
      if (cj == 0) continue;
      for (int i = 0; i < n_; ++i) out[i] += cj * pw_[i][j];
    }
    return out;
  }

 private:
  int n_;
  std::vector<RealRow> pw_;
};

void lll(std::vector<Row>& c, std::vector<RealRow>& e, const Embedder& embed) {
  const int n = static_cast<int>(c.size());
  Gso g = gram_schmidt(e);
  int k = 1;
  int guard = 0;
  while (k < n) {
    require(++guard < 100000, ErrorCode::kInternal, "lattice reduction did not terminate");
    for (int j = k - 1; j >= 0; --j) {
      long double q = std::nearbyint(g.mu[k][j]);
      if (q == 0) continue;
      BigInt qi = static_cast<double>(q);
      for (int t = 0; t < n; ++t) c[k][t] -= qi * c[j][t];
      for (int l = 0; l < j; ++l) g.mu[k][l] -= q * g.mu[j][l];
      g.mu[k][j] -= q;
    }
    e[k] = embed(c[k]);
    g = gram_schmidt(e);
    if (g.b[k] < (kLovasz - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.b[k - 1]) {
      std::swap(c[k], c[k - 1]);
      std::swap(e[k], e[k - 1]);
      g = gram_schmidt(e);
      k = std::max(k - 1, 1);
    } else {
      ++k;
    }
  }
}

BigInt quad_form(const std::vector<Row>& g, const Row& c) {
  BigInt s = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[j] * g[j][k] * c[k];
  }
  return s;
}

}  // namespace

AlgInt generator_of_power(const FieldSpec& K, const PrimeDeg1& P, long h, const GeneratorOptions& opt) {
  const int n = K.n;
  require(h >= 1, ErrorCode::kInvalidArgument, "generator_of_power: h must be positive");
  require(opt.radius_multiplier > 0, ErrorCode::kInvalidArgument, "radius multiplier must be positive");
  require(mpz_fdiv_ui(K.disc_f.get_mpz_t(), P.p) != 0, ErrorCode::kRamifiedPrime,
          "p = " + std::to_string(P.p) + " divides disc_f");
  BigInt N;
  mpz_ui_pow_ui(N.get_mpz_t(), P.p, static_cast<unsigned long>(h));
  const BigInt ah = hensel_lift(K, P.a, P.p, h, N);

  // P^h = { alpha : alpha(a_h) = 0 mod p^h }.
  std::vector<Row> basis(n, Row(n, 0));
  basis[0][0] = N;
  BigInt pw = 1;
  for (int j = 1; j < n; ++j) {
    pw = pw * ah % N;
    basis[j][0] = (pw == 0) ? BigInt(0) : BigInt(N - pw);
    basis[j][j] = 1;
  }
  Embedder embed(K);
  std::vector<RealRow> e;
  for (const auto& row : basis) e.push_back(embed(row));
  lll(basis, e, embed);
  const Gso g = gram_schmidt(e);

  const long double radius2 = static_cast<long double>(opt.radius_multiplier) * n *
                              std::pow(static_cast<long double>(N.get_d()), 2.0L / n) * (1 + 1e-9L);
  const std::vector<Row> gram = trace_gram(K);

  std::optional<AlgInt> best;
  BigInt best_t2;
  std::size_t visited = 0;
  std::vector<long> x(n, 0);

  std::function<void(int, long double)> visit = [&](int i, long double partial) {
    long double center = 0;
    for (int l = i + 1; l < n; ++l) center -= x[l] * g.mu[l][i];
    const long double rem = radius2 - partial;
    if (rem < 0) return;
    const long double r = std::sqrt(rem / g.b[i]);
    const long lo = static_cast<long>(std::ceil(center - r));
    const long hi = static_cast<long>(std::floor(center + r));
    for (long xi = lo; xi <= hi; ++xi) {
      require(++visited < kMaxEnumerated, ErrorCode::kGeneratorNotFound,
              "short-vector enumeration exceeded its budget at p = " + std::to_string(P.p));
      x[i] = xi;
      const long double t = xi - center;
      const long double s = partial + g.b[i] * t * t;
      if (i > 0) {
        visit(i - 1, s);
        continue;
      }
      AlgInt cand{Row(n, 0)};
      bool nonzero = false;
      for (int l = 0; l < n; ++l) {
        if (x[l] == 0) continue;
        nonzero = true;
        for (int t2 = 0; t2 < n; ++t2) cand.c[t2] += basis[l][t2] * x[l];
      }
      if (!nonzero) continue;
      BigInt nm = norm(K, cand);
      if (abs(nm) != N) continue;
      BigInt t2 = quad_form(gram, cand.c);
      if (!best || t2 < best_t2 || (t2 == best_t2 && cand.c < best->c)) {
        best = cand;
        best_t2 = t2;
      }
    }
    x[i] = 0;
  };
  visit(n - 1, 0);

  if (!best)
    fail(ErrorCode::kGeneratorNotFound,
         "no element of norm +-" + N.get_str() + " within the search radius for P = (" +
             std::to_string(P.p) + ", theta - " + std::to_string(P.a) + ")");

  AlgInt alpha = *best;
  std::size_t mask = 0;
  const auto sv = signs(K, alpha);
  for (int i = 0; i < n; ++i)
    if (sv[i] < 0) mask |= std::size_t{1} << i;
  if (mask) alpha = mul(K, alpha, K.signature_units.at(mask));

  require(norm(K, alpha) == N, ErrorCode::kInternal, "generator norm check failed");
  require(eval_mod(alpha, ah, N) == 0, ErrorCode::kInternal, "generator containment check failed");
  require(totally_positive(K, alpha), ErrorCode::kInternal, "generator is not totally positive");
  return alpha;
}

}  // namespace spinlab
