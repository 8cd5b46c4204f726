/*
Copyright 2026 The snlt Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "snlt/snlt.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "snlt/conformance.hpp"
#include "snlt/error.hpp"
#include "snlt/law_registry.hpp"
#include "snlt/omega_scale.hpp"
#include "snlt/scale_fn.hpp"

struct snlt_model {
  snlt::LevyModel m;
};

struct snlt_scale {
  snlt::ScaleContext ctx;
  std::string family;
};

struct snlt_params {
  snlt::Params p;
};

struct snlt_result {
  snlt::Table t;
};

struct snlt_grid {
  snlt::OmegaGrid g;
};

namespace {

thread_local std::string g_last_error;

template <class F>
snlt_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SNLT_OK;
  } catch (const snlt::Error& e) {
    g_last_error = e.what();
    return static_cast<snlt_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SNLT_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SNLT_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return SNLT_E_INTERNAL;
  }
}

snlt_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return SNLT_E_NULL;
}

snlt_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  g_last_error.clear();
  return SNLT_OK;
}

}  // namespace

extern "C" {

const char* snlt_version(void) { return "0.1.0"; }

const char* snlt_last_error(void) { return g_last_error.c_str(); }

const char* snlt_status_name(snlt_status s) {
  switch (s) {
    case SNLT_OK: return "ok";
    case SNLT_E_DOMAIN: return "domain";
    case SNLT_E_INVALID_MODEL: return "invalid_model";
    case SNLT_E_SOLVER: return "solver";
    case SNLT_E_NUMERIC: return "numeric";
    case SNLT_E_OVERFLOW: return "overflow";
    case SNLT_E_DEGENERATE: return "degenerate";
    case SNLT_E_CONSISTENCY: return "consistency";
    case SNLT_E_ESTIMATION: return "estimation";
    case SNLT_E_PARSE: return "parse";
    case SNLT_E_EXISTENCE: return "existence";
    case SNLT_E_NULL: return "null_argument";
    case SNLT_E_INTERNAL: return "internal";
  }
  return "unknown";
}

snlt_status snlt_model_from_json(const char* text, snlt_model** out) {
  if (!text || !out) return null_arg("text/out");
  return guard([&] { *out = new snlt_model{snlt::model_from_json(text)}; });
}

snlt_status snlt_model_create(double sigma, double gamma, double jump_rate, double jump_mean, snlt_model** out) {
  if (!out) return null_arg("out");
  return guard([&] {
    snlt::JumpSpec j = snlt::NoJumps{};
    if (jump_rate != 0.0) j = snlt::ExpJumps{jump_rate, jump_mean};
    *out = new snlt_model{snlt::LevyModel(sigma, gamma, j)};
  });
}

snlt_status snlt_model_to_json(const snlt_model* m, char* buf, size_t cap, size_t* needed) {
  if (!m) return null_arg("model");
  return copy_out(snlt::model_to_json(m->m), buf, cap, needed);
}

double snlt_model_psi(const snlt_model* m, double theta) {
  if (!m) return std::nan("");
  double v = std::nan("");
  guard([&] { v = m->m.psi(theta); });
  return v;
}

void snlt_model_free(snlt_model* m) { delete m; }

snlt_status snlt_scale_create(const snlt_model* m, double q, int nodes, snlt_scale** out) {
  if (!m || !out) return null_arg("model/out");
  return guard([&] {
    snlt::ScaleMethod method = snlt::ClosedForm{};
    if (nodes != 0) method = snlt::NumericInversion{nodes};
    snlt::ScaleContext ctx(m->m, q, method);
    std::string fam = snlt::to_string(ctx.family());
    *out = new snlt_scale{std::move(ctx), std::move(fam)};
  });
}

snlt_status snlt_scale_eval(const snlt_scale* s, double x, double* w, double* z, double* dwdq) {
  if (!s) return null_arg("scale");
  return guard([&] {
    if (w) *w = s->ctx.w(x);
    if (z) *z = s->ctx.z(x);
    if (dwdq) *dwdq = s->ctx.dwdq(x);
  });
}

snlt_status snlt_scale_log_w(const snlt_scale* s, double x, double* out) {
  if (!s || !out) return null_arg("scale/out");
  return guard([&] { *out = s->ctx.log_w(x); });
}

double snlt_scale_phi(const snlt_scale* s) { return s ? s->ctx.phi().phi : std::nan(""); }

const char* snlt_scale_family(const snlt_scale* s) { return s ? s->family.c_str() : ""; }

void snlt_scale_free(snlt_scale* s) { delete s; }

snlt_params* snlt_params_create(void) { return new (std::nothrow) snlt_params{}; }

snlt_status snlt_params_set(snlt_params* p, const char* key, const char* value) {
  if (!p || !key || !value) return null_arg("params/key/value");
  return guard([&] { p->p.set(key, value); });
}

snlt_status snlt_params_parse(snlt_params* p, const char* assignment) {
  if (!p || !assignment) return null_arg("params/assignment");
  return guard([&] { p->p.set(std::string(assignment)); });
}

void snlt_params_free(snlt_params* p) { delete p; }

size_t snlt_law_count(void) { return snlt::law_list().size(); }

snlt_status snlt_law_info(size_t index, const char** id, const char** keys, const char** summary) {
  const auto& laws = snlt::law_list();
  if (index >= laws.size()) {
    g_last_error = "law index out of range";
    return SNLT_E_DOMAIN;
  }
  if (id) *id = laws[index].id.c_str();
  if (keys) *keys = laws[index].keys.c_str();
  if (summary) *summary = laws[index].summary.c_str();
  return SNLT_OK;
}

snlt_status snlt_law_eval(const char* id, const snlt_model* m, const snlt_params* p, snlt_result** out) {
  if (!id || !m || !out) return null_arg("id/model/out");
  return guard([&] {
    const snlt::Params empty;
    *out = new snlt_result{snlt::evaluate_law(id, m->m, p ? p->p : empty)};
  });
}

snlt_status snlt_mc_verify(const char* id, const snlt_model* m, const snlt_params* p, snlt_result** out) {
  if (!id || !m || !out) return null_arg("id/model/out");
  return guard([&] {
    const snlt::Params empty;
    *out = new snlt_result{snlt::mc_verify(id, m->m, p ? p->p : empty)};
  });
}

size_t snlt_mc_law_count(void) { return snlt::mc_law_ids().size(); }

const char* snlt_mc_law_id(size_t index) {
  static const std::vector<std::string> ids = snlt::mc_law_ids();
  return index < ids.size() ? ids[index].c_str() : nullptr;
}

size_t snlt_result_columns(const snlt_result* r) { return r ? r->t.columns.size() : 0; }

const char* snlt_result_column_name(const snlt_result* r, size_t col) {
  return r && col < r->t.columns.size() ? r->t.columns[col].c_str() : nullptr;
}

size_t snlt_result_rows(const snlt_result* r) { return r ? r->t.rows.size() : 0; }

const char* snlt_result_row_label(const snlt_result* r, size_t row) {
  return r && row < r->t.row_labels.size() ? r->t.row_labels[row].c_str() : nullptr;
}

double snlt_result_value(const snlt_result* r, size_t row, size_t col) {
  if (!r || row >= r->t.rows.size() || col >= r->t.columns.size()) return std::nan("");
  return r->t.rows[row][col];
}

size_t snlt_result_note_count(const snlt_result* r) { return r ? r->t.notes.size() : 0; }

const char* snlt_result_note(const snlt_result* r, size_t i) {
  return r && i < r->t.notes.size() ? r->t.notes[i].c_str() : nullptr;
}

void snlt_result_free(snlt_result* r) { delete r; }

snlt_status snlt_omega_solve(const snlt_model* m, double q0, const char* omega, double c, double b, double h,
                             const double* points, size_t npoints, snlt_grid** out) {
  if (!m || !omega || !out || (npoints && !points)) return null_arg("model/omega/points/out");
  return guard([&] {
    const std::vector<double> pts(points, points + npoints);
    *out = new snlt_grid{snlt::solve_omega(snlt::ScaleContext(m->m, q0), snlt::WeightFunction::parse(omega), c, b, h, pts)};
  });
}

size_t snlt_grid_size(const snlt_grid* g) { return g ? g->g.mesh().size() : 0; }

double snlt_grid_node(const snlt_grid* g, size_t i) {
  return g && i < g->g.mesh().size() ? g->g.mesh()[i] : std::nan("");
}

snlt_status snlt_grid_w(const snlt_grid* g, double x, double y, double* out) {
  if (!g || !out) return null_arg("grid/out");
  return guard([&] { *out = g->g.w(x, y); });
}

snlt_status snlt_grid_z(const snlt_grid* g, double x, double* out) {
  if (!g || !out) return null_arg("grid/out");
  return guard([&] { *out = g->g.z(x); });
}

snlt_status snlt_grid_csv(const snlt_grid* g, char* buf, size_t cap, size_t* needed) {
  if (!g) return null_arg("grid");
  std::string s;
  const snlt_status st = guard([&] { s = g->g.to_csv(); });
  if (st != SNLT_OK) return st;
  return copy_out(s, buf, cap, needed);
}

size_t snlt_grid_warning_count(const snlt_grid* g) { return g ? g->g.warnings().size() : 0; }

const char* snlt_grid_warning(const snlt_grid* g, size_t i) {
  return g && i < g->g.warnings().size() ? g->g.warnings()[i].c_str() : nullptr;
}

void snlt_grid_free(snlt_grid* g) { delete g; }

snlt_status snlt_conformance_run(int quick, unsigned threads, snlt_result** out) {
  if (!out) return null_arg("out");
  return guard([&] {
    snlt::ConformanceOptions opt;
    opt.quick = quick != 0;
    opt.threads = threads;
    auto t = std::make_unique<snlt_result>();
    t->t.columns = {"value", "bound", "passed", "criterion"};
    for (const auto& cr : snlt::run_conformance(opt)) {
      const double k = cr.number;
      for (const auto& g : cr.gates) {
        t->t.add_row(std::to_string(cr.number) + ": " + g.name, {g.value, g.bound, g.passed() ? 1.0 : 0.0, k});
      }
      t->t.add_row(std::to_string(cr.number) + ": runtime seconds",
                   {cr.seconds, cr.time_limit, cr.seconds <= cr.time_limit ? 1.0 : 0.0, k});
      if (!cr.error.empty()) {
        t->t.add_row(std::to_string(cr.number) + ": error", {std::nan(""), 0.0, 0.0, k});
        t->t.notes.push_back(std::to_string(cr.number) + ": " + cr.error);
      }
      t->t.notes.push_back("criterion " + std::to_string(cr.number) + " " + cr.title + ": " +
                           (cr.passed() ? "PASS" : "FAIL"));
    }
    *out = t.release();
  });
}

}  // extern "C"
