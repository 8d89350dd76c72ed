#ifndef SPINLAB_SELFCHECK_HPP_
#define SPINLAB_SELFCHECK_HPP_

#include <string>
#include <vector>

#include "spinlab/residue.hpp"

namespace spinlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Exhaustive property suites over M4 x M4 for a cubic field: M4 structure,
// Hilbert symbol identities, the bilinear form of A and the kernel counts.
std::vector<CheckResult> selfcheck(const ResidueFamily& fam);

std::string format_checks(const std::vector<CheckResult>& checks);

}  // namespace spinlab

#endif  // SPINLAB_SELFCHECK_HPP_
