#ifndef SPINLAB_SWEEP_HPP_
#define SPINLAB_SWEEP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/density.hpp"
#include "spinlab/field_spec.hpp"
#include "spinlab/numfield.hpp"
#include "spinlab/residue.hpp"

namespace spinlab {

struct SweepConfig {
  std::uint64_t limit = 1000000;  // X, at least 100
  std::uint64_t chunk = 1u << 16;  // width of one sieve segment
  unsigned threads = 0;            // 0: hardware concurrency
  bool check_spin_relation = true;
  bool check_r4_equivariance = false;
  bool emit_csv = false;
  GeneratorOptions generator;
};

// One split prime, represented by its smallest root.
struct PrimeRecord {
  std::uint64_t p = 0;
  std::uint64_t a = 0;
  std::vector<int> spins;  // spin(P, k) for k = 1..n-1
  bool in_R = false;
  bool in_F = false;
  M4Class r4;
};

struct Tally {
  std::uint64_t S_plus = 0, S_minus = 0;
  std::uint64_t R_plus = 0, R_minus = 0;
  std::uint64_t F_plus = 0, F_minus = 0;
  std::vector<std::uint64_t> histogram;  // by r4 class bits
  std::uint64_t violations = 0;

  Tally& operator+=(const Tally& o);
  void add(const PrimeRecord& r);
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct Violation {
  std::uint64_t p = 0;
  std::string what;
};

// Per-field tables shared read-only by all sweep workers.
struct SweepContext {
  explicit SweepContext(const FieldSpec& K);

  const FieldSpec& spec() const { return family.spec(); }
  ResidueFamily family;
  StarTable star;
};

// nullopt when p does not split.  Consistency failures are appended to
// `violations` (when given); the record is still returned.
std::optional<PrimeRecord> classify_prime(const SweepContext& ctx, std::uint64_t p,
                                          const SweepConfig& cfg,
                                          std::vector<Violation>* violations = nullptr);

struct ReportRow {
  std::string quantity;
  std::uint64_t count = 0;  // denominator
  double empirical = 0;
  double se = 0;  // 1 / sqrt(count)
  ExactRational theoretical;
  double delta = 0;
  double tolerance = 0;
  bool pass = false;
};

std::vector<ReportRow> compare(const Tally& t, const StarTable& star, int n);

struct SweepResult {
  int n = 0;
  std::uint64_t limit = 0;
  Tally tally;
  std::vector<ReportRow> rows;
  std::vector<PrimeRecord> records;  // filled when emit_csv is set
  std::vector<std::uint64_t> ramified;

  bool passed() const;
  std::string report() const;
};

// Raises kConsistency naming the smallest offending prime if any per-prime
// check fails.
SweepResult run_sweep(const FieldSpec& K, const SweepConfig& cfg);

std::string emit_csv(int n, const std::vector<PrimeRecord>& records);

// Odd primes in [lo, hi).
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     const std::vector<std::uint64_t>& base);
std::vector<std::uint64_t> small_primes(std::uint64_t up_to);

}  // namespace spinlab

#endif  // SPINLAB_SWEEP_HPP_
