#ifndef SPINLAB_EMBEDDINGS_HPP_
#define SPINLAB_EMBEDDINGS_HPP_

#include <gmpxx.h>

#include <vector>

namespace spinlab {

using BigInt = mpz_class;

// An isolating interval [lo, hi] / 2^prec for one real root of f; the
// endpoints are never roots and f changes sign across the interval.
struct RootInterval {
  BigInt lo;
  BigInt hi;
  long prec = 0;
};

/* Certified real embeddings of a totally real field Q[x]/(f).
 *
 * Roots are isolated with a Sturm chain and refined by exact bisection to
 * width 2^-kBasePrecision.  Signs of elements at a root are decided by
 * exact dyadic interval evaluation; inconclusive results trigger local
 * refinement with doubled precision up to kMaxPrecision, after which
 * AmbiguousSign is raised.
 */
class Embeddings {
 public:
  static constexpr long kBasePrecision = 128;
  static constexpr long kMaxPrecision = 4096;

  Embeddings() = default;
  // f is monic and constant-first.  Raises kInvalidArgument unless all roots
  // of f are real and simple.
  explicit Embeddings(const std::vector<BigInt>& f);

  int degree() const { return static_cast<int>(roots_.size()); }
  const RootInterval& root(int i) const { return roots_[i]; }
  long double approx(int i) const { return approx_[i]; }

  // Sign (+1 / -1) of g(r_i) where g is a constant-first integer polynomial.
  // g(r_i) must be nonzero.
  int sign_at(const std::vector<BigInt>& g, int i) const;

 private:
  std::vector<BigInt> f_;
  std::vector<RootInterval> roots_;   // ascending
  std::vector<long double> approx_;
};

// Sign of the scaled value f(m / 2^e) (exact).
int sign_at_dyadic(const std::vector<BigInt>& f, const BigInt& m, long e);

}  // namespace spinlab

#endif  // SPINLAB_EMBEDDINGS_HPP_
