#include "spinlab/selfcheck.hpp"

#include <set>
#include <sstream>

#include "spinlab/density.hpp"
#include "spinlab/error.hpp"

namespace spinlab {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    if (!ok) ++failures_;
  }

  CheckResult result() const {
    CheckResult r{name_, failures_ == 0, ""};
    std::ostringstream d;
    d << cases_ << " cases";
    if (failures_) d << ", " << failures_ << " failed; first: " << first_failure_;
    r.detail = d.str();
    return r;
  }

 private:
  std::string name_;
  std::size_t cases_ = 0, failures_ = 0;
  std::string first_failure_;
};

std::string pair_str(std::uint32_t a, std::uint32_t b, int n) {
  return "(" + M4Class{n, a}.str() + ", " + M4Class{n, b}.str() + ")";
}

}  // namespace

std::vector<CheckResult> selfcheck(const ResidueFamily& fam) {
  const int n = fam.n();
  require(n == 3, ErrorCode::kInvalidArgument, "selfcheck runs the exhaustive suites for n = 3 only");
  const ResidueRing& R2 = fam.ring(2);
  const ResidueRing& R3 = fam.ring(3);
  const std::uint32_t classes = 1u << n, all = classes - 1;
  std::vector<CheckResult> out;

  std::vector<ResidueElem> units4;
  for (std::uint64_t i = 0; i < R2.size(); ++i) {
    ResidueElem u = R2.element(i);
    if (R2.is_unit(u)) units4.push_back(u);
  }
  std::vector<ResidueElem> rho(classes);
  for (std::uint32_t c = 0; c < classes; ++c) rho[c] = fam.rho({n, c});
  auto H = [&](const ResidueElem& a, const ResidueElem& b) { return fam.hilbert2(a, b); };

  {
    Suite s("M4 structure");
    s.expect(units4.size() == (std::size_t{1} << n) * ((std::size_t{1} << n) - 1),
             "unit count of O/4 is " + std::to_string(units4.size()));
    std::set<std::uint32_t> image, kernel, squares;
    for (const auto& u : units4) {
      M4Class c = fam.m4_class_of(u);
      image.insert(c.bits);
      if (c.bits == 0) kernel.insert(R2.pack(u));
      squares.insert(R2.pack(R2.mul(u, u)));
      s.expect(fam.m4_class_of(R2.conj(u, 1)) == c.rotate(1), "class of sigma(u) is not rotated");
    }
    s.expect(image.size() == classes, "image has " + std::to_string(image.size()) + " classes");
    s.expect(kernel == squares, "kernel differs from the squares");
    s.expect(kernel.size() == classes - 1, "kernel size " + std::to_string(kernel.size()));
    s.expect(fam.m4_class_of(R2.one()).bits == 0, "class of 1 is not zero");
    s.expect(fam.m4_class_of(R2.neg(R2.one())).bits == all, "class of -1 is not all-ones");
    for (std::uint32_t c = 0; c < classes; ++c)
      s.expect(fam.m4_class_of(rho[c]).bits == c, "class of rho(" + M4Class{n, c}.str() + ")");
    std::set<std::uint32_t> fixed;
    for (std::uint32_t c = 0; c < classes; ++c)
      if (M4Class{n, c}.rotate(1).bits == c) fixed.insert(c);
    s.expect(fixed == std::set<std::uint32_t>{0, all}, "Galois-fixed classes are not {0, all-ones}");
    out.push_back(s.result());
  }

  std::vector<std::vector<int>> table(classes, std::vector<int>(classes));
  for (std::uint32_t c = 0; c < classes; ++c)
    for (std::uint32_t d = 0; d < classes; ++d) table[c][d] = H(rho[c], rho[d]);

  {
    Suite s("Hilbert symbol well-definedness on M4 x M4");
    for (std::uint32_t c = 0; c < classes; ++c)
      for (std::uint32_t d = 0; d < classes; ++d) {
        for (std::uint64_t b = 0; b < fam.ring(1).size(); ++b) {
          ResidueElem B = R3.cast(fam.ring(1).element(b));
          ResidueElem four_b = R3.add(R3.add(B, B), R3.add(B, B));
          s.expect(H(R3.add(rho[c], four_b), rho[d]) == table[c][d], "a + 4B at " + pair_str(c, d, n));
          s.expect(H(rho[c], R3.add(rho[d], four_b)) == table[c][d], "b + 4B at " + pair_str(c, d, n));
        }
        for (const auto& u : units4) {
          ResidueElem u3 = R3.cast(u);
          ResidueElem sq = R3.mul(u3, u3);
          s.expect(H(R3.mul(rho[c], sq), rho[d]) == table[c][d], "a s^2 at " + pair_str(c, d, n));
        }
      }
    out.push_back(s.result());
  }

  {
    Suite s("Hilbert symbol bilinearity");
    for (std::uint32_t a = 0; a < classes; ++a)
      for (std::uint32_t b = 0; b < classes; ++b)
        for (std::uint32_t c = 0; c < classes; ++c)
          s.expect(H(R3.mul(rho[a], rho[b]), rho[c]) == table[a][c] * table[b][c],
                   "(ab, c) at a=" + M4Class{n, a}.str() + " " + pair_str(b, c, n));
    out.push_back(s.result());
  }

  {
    Suite s("Hilbert symbol symmetry");
    for (std::uint32_t c = 0; c < classes; ++c)
      for (std::uint32_t d = 0; d < classes; ++d)
        s.expect(table[c][d] == table[d][c], "asymmetric at " + pair_str(c, d, n));
    out.push_back(s.result());
  }

  {
    Suite s("Hilbert symbol non-degeneracy");
    for (std::uint32_t c = 1; c < classes; ++c) {
      bool found = false;
      for (std::uint32_t d = 0; d < classes; ++d) found = found || table[c][d] == -1;
      s.expect(found, "class " + M4Class{n, c}.str() + " pairs trivially with everything");
    }
    out.push_back(s.result());
  }

  {
    Suite s("Hilbert symbol Galois equivariance");
    for (std::uint32_t c = 0; c < classes; ++c)
      for (std::uint32_t d = 0; d < classes; ++d)
        for (int k = 1; k < n; ++k)
          s.expect(H(R3.conj(rho[c], k), R3.conj(rho[d], k)) == table[c][d],
                   "sigma^" + std::to_string(k) + " at " + pair_str(c, d, n));
    out.push_back(s.result());
  }

  {
    Suite s("(a,a) = (a,-1)");
    const ResidueElem m1 = R3.neg(R3.one());
    for (std::uint64_t i = 0; i < R3.size(); ++i) {
      ResidueElem a = R3.element(i);
      if (!R3.is_unit(a)) continue;
      s.expect(H(a, a) == H(a, m1), "at packed element " + std::to_string(i));
    }
    s.expect(H(m1, m1) == -1, "(-1,-1) is not -1");
    out.push_back(s.result());
  }

  const CirculantA A = build_matrix_A(fam);
  {
    Suite s("bilinear form of A");
    for (std::uint32_t u = 0; u < classes; ++u)
      for (std::uint32_t v = 0; v < classes; ++v)
        s.expect(table[u][v] == (A.form(u, v) ? -1 : 1), "at " + pair_str(u, v, n));
    const int c0 = A.c & 1u;
    s.expect((c0 == 0) == (norm_sign(fam, {n, 1u}) == 1), "c0 disagrees with the norm sign of alpha");
    out.push_back(s.result());
  }

  {
    Suite s("star and norm tables");
    const StarTable t = star_table(fam);
    const StarTable viaA = star_table_from_A(fam, A);
    s.expect(t.star == viaA.star, "direct star table differs from the A route");
    std::size_t plus = 0;
    for (std::uint32_t c = 0; c < classes; ++c) {
      const M4Class cls{n, c};
      plus += t.norm_sign[c] == 1;
      s.expect(t.star[cls.rotate(1).bits] == t.star[c], "star not constant on orbit of " + cls.str());
      s.expect(t.norm_sign[cls.rotate(1).bits] == t.norm_sign[c],
               "norm sign not constant on orbit of " + cls.str());
    }
    s.expect(plus == classes / 2, "norm sign +1 on " + std::to_string(plus) + " classes");
    s.expect(t.star[0] == 1, "star(1) != +1");
    s.expect(t.star[all] == -1, "star(-1) != -1");
    s.expect(t.norm_sign[all] == -1, "norm sign of -1 is not -1");
    out.push_back(s.result());
  }

  {
    Suite s("three-way kernel agreement");
    const KernelReport k = verify_kernel(fam);
    s.expect(k.agree(), "kernel counts disagree");
    s.expect(k.star.first == 1 && k.star.second == 3, "kernel counts are not (1, 3)");
    s.expect(k.h == reflect_mod_xn(k.h, n), "h(x) is not palindromic mod x^n - 1");
    out.push_back(s.result());
  }
  return out;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  for (const auto& c : checks)
    out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.detail << ")\n";
  return out.str();
}

}  // namespace spinlab
