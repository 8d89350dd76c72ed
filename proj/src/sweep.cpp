#include "spinlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "spinlab/error.hpp"

namespace spinlab {

Tally& Tally::operator+=(const Tally& o) {
  S_plus += o.S_plus;
  S_minus += o.S_minus;
  R_plus += o.R_plus;
  R_minus += o.R_minus;
  F_plus += o.F_plus;
  F_minus += o.F_minus;
  violations += o.violations;
  if (histogram.size() < o.histogram.size()) histogram.resize(o.histogram.size(), 0);
  for (std::size_t i = 0; i < o.histogram.size(); ++i) histogram[i] += o.histogram[i];
  return *this;
}

void Tally::add(const PrimeRecord& r) {
  const bool plus = r.p % 4 == 1;
  (plus ? S_plus : S_minus) += 1;
  if (r.in_R) (plus ? R_plus : R_minus) += 1;
  if (r.in_F) (plus ? F_plus : F_minus) += 1;
  const std::size_t bins = std::size_t{1} << r.r4.n;
  if (histogram.size() < bins) histogram.resize(bins, 0);
  histogram[r.r4.bits] += 1;
}

SweepContext::SweepContext(const FieldSpec& K) : family(K), star(star_table(family)) {}

std::optional<PrimeRecord> classify_prime(const SweepContext& ctx, std::uint64_t p,
                                          const SweepConfig& cfg, std::vector<Violation>* violations) {
  const FieldSpec& K = ctx.spec();
  const int n = K.n;
  auto roots = split_completely(K, p);
  if (!roots) return std::nullopt;

  auto flag = [&](const std::string& what) {
    if (violations) violations->push_back({p, what});
  };

  PrimeRecord rec;
  rec.p = p;
  rec.a = roots->front();
  const PrimeDeg1 P{p, rec.a};
  const AlgInt alpha = generator_of_power(K, P, K.h, cfg.generator);

  rec.in_F = true;
  for (int k = 1; k < n; ++k) {
    int s = spin(K, alpha, P, k, *roots);
    if (s == 0) flag("spin(P," + std::to_string(k) + ") = 0 at a split prime");
    rec.spins.push_back(s);
    if (s != 1) rec.in_F = false;
  }
  rec.in_R = true;
  for (int k = 1; k < n; ++k)
    if (rec.spins[k - 1] * rec.spins[n - k - 1] != 1) rec.in_R = false;

  rec.r4 = r4_of_generator(ctx.family, alpha);
  const bool star_R = ctx.star.star[rec.r4.bits] == 1;
  if (star_R != rec.in_R)
    flag("R membership from spin products (" + std::to_string(rec.in_R) + ") differs from star(r4) (" +
         std::to_string(star_R) + ")");
  const int expect_sign = p % 4 == 1 ? 1 : -1;
  if (ctx.star.norm_sign[rec.r4.bits] != expect_sign)
    flag("norm sign of r4 class " + rec.r4.str() + " does not match p mod 4");

  if (cfg.check_spin_relation) {
    const ResidueRing& R8 = ctx.family.ring(3);
    const ResidueElem a8 = R8.from_alg(alpha);
    for (int k = 1; k < n; ++k) {
      const int lhs = rec.spins[k - 1] * rec.spins[n - k - 1];
      const int rhs = ctx.family.hilbert2(a8, R8.conj(a8, k));
      if (lhs != rhs)
        flag("spin(P," + std::to_string(k) + ")*spin(P," + std::to_string(n - k) + ") = " +
             std::to_string(lhs) + " but the Hilbert symbol is " + std::to_string(rhs));
    }
  }

  if (cfg.check_r4_equivariance) {
    PrimeDeg1 Q = P;
    for (int k = 1; k < n; ++k) {
      Q = conjugate_prime(K, Q, *roots);
      const AlgInt beta = generator_of_power(K, Q, K.h, cfg.generator);
      if (!(r4_of_generator(ctx.family, beta) == rec.r4.rotate(k)))
        flag("r4(sigma^" + std::to_string(k) + " P) is not the rotated class of r4(P)");
    }
  }
  return rec;
}

std::vector<std::uint64_t> small_primes(std::uint64_t up_to) {
  std::vector<char> comp(up_to + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= up_to; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= up_to; j += i) comp[j] = 1;
  }
  return out;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     const std::vector<std::uint64_t>& base) {
  std::vector<std::uint64_t> out;
  if (hi <= lo) return out;
  std::vector<char> comp(hi - lo, 0);
  for (std::uint64_t q : base) {
    if (q * q >= hi) break;
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t j = start; j < hi; j += q) comp[j - lo] = 1;
  }
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 3); v < hi; ++v)
    if (!comp[v - lo] && v % 2 == 1) out.push_back(v);
  return out;
}

namespace {

struct ChunkOutput {
  Tally tally;
  std::vector<PrimeRecord> records;
  std::vector<Violation> violations;
  std::vector<std::uint64_t> ramified;
  std::exception_ptr error;
};

ReportRow make_row(const std::string& q, std::uint64_t num, std::uint64_t den, const ExactRational& th,
                   double tol) {
  ReportRow r;
  r.quantity = q;
  r.count = den;
  r.theoretical = th;
  r.tolerance = tol;
  if (den > 0) {
    r.empirical = static_cast<double>(num) / static_cast<double>(den);
    r.se = 1.0 / std::sqrt(static_cast<double>(den));
    r.delta = std::fabs(r.empirical - th.to_double());
    r.pass = r.delta < tol;
  }
  return r;
}

}  // namespace

std::vector<ReportRow> compare(const Tally& t, const StarTable& star, int n) {
  const DensityReport d = density_report(n);
  std::vector<ReportRow> rows;
  const std::uint64_t S = t.S_plus + t.S_minus;
  rows.push_back(make_row("F/S", t.F_plus + t.F_minus, S, d.dF, 0.02));
  rows.push_back(make_row("F+/S+", t.F_plus, t.S_plus, d.dF_plus, 0.02));
  rows.push_back(make_row("F-/S-", t.F_minus, t.S_minus, d.dF_minus, 0.02));
  rows.push_back(make_row("R/S", t.R_plus + t.R_minus, S, d.dR, 0.02));
  rows.push_back(make_row("R+/S+", t.R_plus, t.S_plus, d.dR_plus, 0.02));
  rows.push_back(make_row("R-/S-", t.R_minus, t.S_minus, d.dR_minus, 0.02));
  rows.push_back(make_row("F+/R+", t.F_plus, t.R_plus, d.dF_given_R, 0.03));
  rows.push_back(make_row("F-/R-", t.F_minus, t.R_minus, d.dF_given_R, 0.03));
  const ExactRational bin = inverse_pow2(n - 1);
  for (std::uint32_t c = 0; c < (1u << n); ++c) {
    const bool plus = star.norm_sign[c] == 1;
    const std::uint64_t hits = c < t.histogram.size() ? t.histogram[c] : 0;
    rows.push_back(make_row("r4=" + M4Class{n, c}.str() + (plus ? " /S+" : " /S-"), hits,
                            plus ? t.S_plus : t.S_minus, bin, 0.03));
  }
  return rows;
}

bool SweepResult::passed() const {
  if (tally.violations != 0 || rows.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

std::string SweepResult::report() const {
  std::ostringstream out;
  out << "X = " << limit << ", n = " << n << ", split primes = " << tally.S_plus + tally.S_minus
      << " (S+ " << tally.S_plus << ", S- " << tally.S_minus << ")";
  if (!ramified.empty()) {
    out << ", ramified skipped:";
    for (auto p : ramified) out << " " << p;
  }
  out << "\n";
  out << "per-prime consistency violations = " << tally.violations << "\n";
  out << std::left << std::setw(12) << "quantity" << " | " << std::setw(9) << "empirical" << " | "
      << std::setw(7) << "se" << " | " << std::setw(11) << "theoretical" << " | " << std::setw(7)
      << "|delta|" << " | " << std::setw(5) << "tol" << " | result\n";
  out << std::fixed;
  for (const auto& r : rows) {
    out << std::setw(12) << r.quantity << " | " << std::setw(9) << std::setprecision(5) << r.empirical
        << " | " << std::setw(7) << std::setprecision(4) << r.se << " | " << std::setw(11)
        << r.theoretical.str() << " | " << std::setw(7) << std::setprecision(5) << r.delta << " | "
        << std::setw(5) << std::setprecision(2) << r.tolerance << " | " << (r.pass ? "PASS" : "FAIL")
        << "\n";
  }
  out << "se is 1/sqrt(denominator count); tolerances are fixed absolute bounds.\n";
  out << "overall: " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

SweepResult run_sweep(const FieldSpec& K, const SweepConfig& cfg) {
  require(cfg.limit >= 100, ErrorCode::kInvalidArgument, "sweep limit must be at least 100");
  require(cfg.limit < (std::uint64_t{1} << 40), ErrorCode::kInvalidArgument, "sweep limit too large");
  require(cfg.chunk >= 1, ErrorCode::kInvalidArgument, "chunk size must be at least 1");
  const SweepContext ctx(K);
  const auto base = small_primes(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cfg.limit))) + 1);

  const std::uint64_t lo = 3, hi = cfg.limit + 1;
  const std::uint64_t chunks = (hi - lo + cfg.chunk - 1) / cfg.chunk;
  std::vector<ChunkOutput> out(chunks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= chunks) return;
      ChunkOutput& o = out[idx];
      try {
        const std::uint64_t a = lo + idx * cfg.chunk, b = std::min(hi, a + cfg.chunk);
        for (std::uint64_t p : primes_in(a, b, base)) {
          if (mpz_fdiv_ui(K.disc_f.get_mpz_t(), p) == 0) {
            o.ramified.push_back(p);
            continue;
          }
          const std::size_t before = o.violations.size();
          auto rec = classify_prime(ctx, p, cfg, &o.violations);
          if (!rec) continue;
          o.tally.add(*rec);
          o.tally.violations += o.violations.size() > before ? 1 : 0;
          if (cfg.emit_csv) o.records.push_back(std::move(*rec));
        }
      } catch (...) {
        o.error = std::current_exception();
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult res;
  res.n = K.n;
  res.limit = cfg.limit;
  res.tally.histogram.assign(std::size_t{1} << K.n, 0);
  std::vector<Violation> violations;
  for (auto& o : out) {
    if (o.error) std::rethrow_exception(o.error);
    res.tally += o.tally;
    res.ramified.insert(res.ramified.end(), o.ramified.begin(), o.ramified.end());
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    for (auto& r : o.records) res.records.push_back(std::move(r));
  }
  if (!violations.empty()) {
    const Violation& v = violations.front();
    fail(ErrorCode::kConsistency, "consistency violation at p = " + std::to_string(v.p) + ": " + v.what +
                                      " (" + std::to_string(res.tally.violations) + " primes affected)");
  }
  res.rows = compare(res.tally, ctx.star, K.n);
  return res;
}

std::string emit_csv(int n, const std::vector<PrimeRecord>& records) {
  std::ostringstream out;
  out << "p,p_mod4,root_a";
  for (int k = 1; k < n; ++k) out << ",spin_" << k;
  out << ",in_R,in_F,m4_class_bits\n";
  std::vector<const PrimeRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const PrimeRecord* a, const PrimeRecord* b) { return a->p < b->p; });
  for (const PrimeRecord* r : sorted) {
    out << r->p << "," << r->p % 4 << "," << r->a;
    for (int s : r->spins) out << "," << s;
    out << "," << (r->in_R ? 1 : 0) << "," << (r->in_F ? 1 : 0) << "," << r->r4.str() << "\n";
  }
  return out.str();
}

}  // namespace spinlab
