// spinlab command line front end.  Links only the C interface.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "spinlab/spinlab.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kAcceptance = 3 };

int report_error(spinlab_status st) {
  std::cerr << "error [" << spinlab_status_name(st) << "]: " << spinlab_last_error() << "\n";
  return st == SPINLAB_E_CONSISTENCY ? kAcceptance : kValidation;
}

struct TextGuard {
  spinlab_text* t = nullptr;
  ~TextGuard() { spinlab_text_free(t); }
};

struct FieldGuard {
  spinlab_field* f = nullptr;
  ~FieldGuard() { spinlab_field_free(f); }
};

struct SweepGuard {
  spinlab_sweep* s = nullptr;
  ~SweepGuard() { spinlab_sweep_free(s); }
};

int cmd_table(const std::vector<int>& rows) {
  TextGuard out;
  spinlab_status st = spinlab_density_table(rows.data(), rows.size(), &out.t);
  if (st != SPINLAB_OK) return report_error(st);
  std::cout << spinlab_text_data(out.t);
  return kOk;
}

int cmd_density(int n) {
  TextGuard out;
  spinlab_status st = spinlab_density_report(n, &out.t);
  if (st != SPINLAB_OK) return report_error(st);
  std::cout << spinlab_text_data(out.t);
  return kOk;
}

int load(const std::string& path, FieldGuard& field) {
  spinlab_status st = spinlab_field_load_file(path.c_str(), &field.f);
  return st == SPINLAB_OK ? kOk : report_error(st);
}

int cmd_verify_kernel(const std::string& path) {
  FieldGuard field;
  if (int rc = load(path, field)) return rc;
  spinlab_kernel_report rep;
  TextGuard out;
  spinlab_status st = spinlab_verify_kernel(field.f, &rep, &out.t);
  if (st != SPINLAB_OK) return report_error(st);
  std::cout << spinlab_text_data(out.t);
  return rep.agree ? kOk : kAcceptance;
}

int cmd_selfcheck(const std::string& path) {
  FieldGuard field;
  if (int rc = load(path, field)) return rc;
  int passed = 0;
  TextGuard out;
  spinlab_status st = spinlab_selfcheck(field.f, &passed, &out.t);
  if (st != SPINLAB_OK) return report_error(st);
  std::cout << spinlab_text_data(out.t) << (passed ? "selfcheck: PASS\n" : "selfcheck: FAIL\n");
  return passed ? kOk : kAcceptance;
}

int cmd_sweep(const std::string& path, const spinlab_sweep_options& opts, const std::string& csv) {
  FieldGuard field;
  if (int rc = load(path, field)) return rc;
  SweepGuard sweep;
  spinlab_status st = spinlab_sweep_run(field.f, &opts, &sweep.s);
  if (st != SPINLAB_OK) return report_error(st);

  TextGuard report;
  st = spinlab_sweep_report(sweep.s, &report.t);
  if (st != SPINLAB_OK) return report_error(st);
  // With the CSV on stdout the summary moves to stderr.
  std::ostream& summary = (csv == "-") ? std::cerr : std::cout;
  summary << spinlab_text_data(report.t);

  if (!csv.empty()) {
    TextGuard rows;
    st = spinlab_sweep_csv(sweep.s, &rows.t);
    if (st != SPINLAB_OK) return report_error(st);
    if (csv == "-") {
      std::cout << spinlab_text_data(rows.t);
    } else {
      std::ofstream f(csv, std::ios::binary);
      f << spinlab_text_data(rows.t);
      if (!f) {
        std::cerr << "error [IO]: cannot write " << csv << "\n";
        return kValidation;
      }
    }
  }
  return spinlab_sweep_passed(sweep.s) ? kOk : kAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin densities, dyadic kernels and prime sweeps for cyclic fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", spinlab_version());

  std::vector<int> rows;
  auto* table = app.add_subcommand("table", "Print the density table for the given degrees");
  table->add_option("--n", rows, "Comma-separated odd degrees")->required()->delimiter(',');

  int n = 0;
  auto* density = app.add_subcommand("density", "Print every exact density for one degree");
  density->add_option("--n", n, "Odd degree")->required();

  std::string field_path;
  auto* verify = app.add_subcommand("verify-kernel", "Three-way kernel count check for a field");
  verify->add_option("--field", field_path, "Field config file")->required()->check(CLI::ExistingFile);

  spinlab_sweep_options opts;
  spinlab_sweep_options_default(&opts);
  std::string csv;
  bool equivariance = false, no_spin_check = false;
  auto* sweep = app.add_subcommand("sweep", "Classify split primes up to a limit and compare densities");
  sweep->add_option("--field", field_path, "Field config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--limit", opts.limit, "Sweep primes up to X (>= 100)")->required();
  sweep->add_option("--csv", csv, "Write per-prime rows to a file, or - for stdout");
  sweep->add_option("--chunk", opts.chunk, "Sieve segment width")->capture_default_str();
  sweep->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--radius-multiplier", opts.radius_multiplier, "Generator search radius factor")
      ->capture_default_str();
  sweep->add_flag("--check-equivariance", equivariance, "Also check r4 Galois equivariance");
  sweep->add_flag("--no-spin-check", no_spin_check, "Skip the per-prime Hilbert symbol relation");

  std::string self_field = std::string(SPINLAB_FIELDS_DIR) + "/simplest-cubic-7.cfg";
  auto* self = app.add_subcommand("selfcheck", "Run the exhaustive cubic property suites");
  self->add_option("--field", self_field, "Field config file")->check(CLI::ExistingFile)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*table) return cmd_table(rows);
  if (*density) return cmd_density(n);
  if (*verify) return cmd_verify_kernel(field_path);
  if (*self) return cmd_selfcheck(self_field);
  if (*sweep) {
    opts.check_r4_equivariance = equivariance ? 1 : 0;
    opts.check_spin_relation = no_spin_check ? 0 : 1;
    opts.emit_csv = csv.empty() ? 0 : 1;
    return cmd_sweep(field_path, opts, csv);
  }
  return kUsage;
}
