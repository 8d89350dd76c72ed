#include "spinlab/spinlab.h"

#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "spinlab/density.hpp"
#include "spinlab/error.hpp"
#include "spinlab/field_spec.hpp"
#include "spinlab/residue.hpp"
#include "spinlab/selfcheck.hpp"
#include "spinlab/sweep.hpp"

struct spinlab_text {
  std::string s;
};

struct spinlab_field {
  spinlab::FieldSpec spec;
};

struct spinlab_sweep {
  spinlab::SweepResult result;
  bool has_csv = false;
};

namespace {

thread_local std::string g_last_error;

template <class F>
spinlab_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return SPINLAB_OK;
  } catch (const spinlab::Error& e) {
    g_last_error = e.what();
    return static_cast<spinlab_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SPINLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPINLAB_E_INTERNAL;
  }
}

spinlab_text* make_text(std::string s) { return new spinlab_text{std::move(s)}; }

void need(const void* p, const char* what) {
  spinlab::require(p != nullptr, spinlab::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

std::uint64_t small(const spinlab::BigInt& v) {
  spinlab::require(v.fits_ulong_p(), spinlab::ErrorCode::kInvalidArgument, "count exceeds 64 bits");
  return v.get_ui();
}

}  // namespace

extern "C" {

const char* spinlab_version(void) { return SPINLAB_VERSION_STRING; }

const char* spinlab_status_name(spinlab_status status) {
  if (status == SPINLAB_OK) return "OK";
  return spinlab::error_code_name(static_cast<spinlab::ErrorCode>(status));
}

const char* spinlab_last_error(void) { return g_last_error.c_str(); }

const char* spinlab_text_data(const spinlab_text* text) { return text ? text->s.c_str() : ""; }
size_t spinlab_text_size(const spinlab_text* text) { return text ? text->s.size() : 0; }
void spinlab_text_free(spinlab_text* text) { delete text; }

spinlab_status spinlab_s_pair(int n, int prime_case, spinlab_text** plus, spinlab_text** minus) {
  return guarded([&] {
    need(plus, "plus");
    need(minus, "minus");
    spinlab::SPair s = prime_case ? spinlab::s_pair_prime(n) : spinlab::s_pair(n);
    *plus = make_text(s.plus.get_str());
    *minus = make_text(s.minus.get_str());
  });
}

spinlab_status spinlab_density_table(const int* rows, size_t count, spinlab_text** out) {
  return guarded([&] {
    need(out, "out");
    if (count) need(rows, "rows");
    std::vector<int> r(rows, rows + count);
    *out = make_text(spinlab::format_table(r) + spinlab::table_notes(r));
  });
}

spinlab_status spinlab_density_report(int n, spinlab_text** out) {
  return guarded([&] {
    need(out, "out");
    const spinlab::DensityReport d = spinlab::density_report(n);
    std::ostringstream s;
    s << "n = " << d.n << "\n"
      << "s+ = " << d.s_plus.get_str() << "\n"
      << "s- = " << d.s_minus.get_str() << "\n"
      << "d(F+|S+) = " << d.dF_plus.str() << "\n"
      << "d(F-|S-) = " << d.dF_minus.str() << "\n"
      << "d(F|S) = " << d.dF.str() << "\n"
      << "d(R+|S+) = " << d.dR_plus.str() << "\n"
      << "d(R-|S-) = " << d.dR_minus.str() << "\n"
      << "d(R|S) = " << d.dR.str() << "\n"
      << "d(F|R) = " << d.dF_given_R.str() << "\n";
    *out = make_text(s.str() + spinlab::table_notes({n}));
  });
}

spinlab_status spinlab_field_load_file(const char* path, spinlab_field** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto f = std::make_unique<spinlab_field>();
    f->spec = spinlab::load_spec_file(path);
    *out = f.release();
  });
}

spinlab_status spinlab_field_load_text(const char* text, spinlab_field** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    auto f = std::make_unique<spinlab_field>();
    f->spec = spinlab::load_spec(text);
    *out = f.release();
  });
}

void spinlab_field_free(spinlab_field* field) { delete field; }
int spinlab_field_degree(const spinlab_field* field) { return field ? field->spec.n : 0; }
const char* spinlab_field_name(const spinlab_field* field) { return field ? field->spec.name.c_str() : ""; }

spinlab_status spinlab_verify_kernel(const spinlab_field* field, spinlab_kernel_report* report,
                                     spinlab_text** text) {
  return guarded([&] {
    need(field, "field");
    const spinlab::ResidueFamily fam(field->spec);
    const spinlab::KernelReport k = spinlab::verify_kernel(fam);
    if (report) {
      report->n = k.n;
      report->formula_plus = small(k.formula.first);
      report->formula_minus = small(k.formula.second);
      report->star_plus = k.star.first;
      report->star_minus = k.star.second;
      report->bmap_plus = k.bmap.first;
      report->bmap_minus = k.bmap.second;
      report->star_one = k.star_one;
      report->star_minus_one = k.star_minus_one;
      report->minus_one_symbol = k.minus_one_symbol;
      report->agree = k.agree() ? 1 : 0;
    }
    if (text) *text = make_text("field = " + field->spec.name + "\n" + k.text());
  });
}

spinlab_status spinlab_selfcheck(const spinlab_field* field, int* passed, spinlab_text** text) {
  return guarded([&] {
    need(field, "field");
    const spinlab::ResidueFamily fam(field->spec);
    const auto checks = spinlab::selfcheck(fam);
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.passed;
    if (passed) *passed = ok ? 1 : 0;
    if (text) *text = make_text("field = " + field->spec.name + "\n" + spinlab::format_checks(checks));
  });
}

void spinlab_sweep_options_default(spinlab_sweep_options* opts) {
  if (!opts) return;
  const spinlab::SweepConfig d;
  opts->limit = d.limit;
  opts->chunk = d.chunk;
  opts->threads = d.threads;
  opts->check_spin_relation = d.check_spin_relation;
  opts->check_r4_equivariance = d.check_r4_equivariance;
  opts->emit_csv = d.emit_csv;
  opts->radius_multiplier = d.generator.radius_multiplier;
}

spinlab_status spinlab_sweep_run(const spinlab_field* field, const spinlab_sweep_options* opts,
                                 spinlab_sweep** out) {
  return guarded([&] {
    need(field, "field");
    need(opts, "opts");
    need(out, "out");
    spinlab::SweepConfig cfg;
    cfg.limit = opts->limit;
    cfg.chunk = opts->chunk;
    cfg.threads = opts->threads;
    cfg.check_spin_relation = opts->check_spin_relation != 0;
    cfg.check_r4_equivariance = opts->check_r4_equivariance != 0;
    cfg.emit_csv = opts->emit_csv != 0;
    cfg.generator.radius_multiplier = opts->radius_multiplier;
    auto s = std::make_unique<spinlab_sweep>();
    s->result = spinlab::run_sweep(field->spec, cfg);
    s->has_csv = cfg.emit_csv;
    *out = s.release();
  });
}

void spinlab_sweep_free(spinlab_sweep* sweep) { delete sweep; }

void spinlab_sweep_tally(const spinlab_sweep* sweep, spinlab_tally* out) {
  if (!sweep || !out) return;
  const spinlab::Tally& t = sweep->result.tally;
  *out = {t.S_plus, t.S_minus, t.R_plus, t.R_minus, t.F_plus, t.F_minus, t.violations};
}

int spinlab_sweep_passed(const spinlab_sweep* sweep) { return sweep && sweep->result.passed() ? 1 : 0; }

spinlab_status spinlab_sweep_report(const spinlab_sweep* sweep, spinlab_text** out) {
  return guarded([&] {
    need(sweep, "sweep");
    need(out, "out");
    *out = make_text(sweep->result.report());
  });
}

spinlab_status spinlab_sweep_csv(const spinlab_sweep* sweep, spinlab_text** out) {
  return guarded([&] {
    need(sweep, "sweep");
    need(out, "out");
    spinlab::require(sweep->has_csv, spinlab::ErrorCode::kInvalidArgument,
                     "sweep was run without emit_csv");
    *out = make_text(spinlab::emit_csv(sweep->result.n, sweep->result.records));
  });
}

}  // extern "C"
