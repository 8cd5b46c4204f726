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
// snlt command-line front end. Links only the C API.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snlt/snlt.h"

namespace {

constexpr int kComputeError = 1;
constexpr int kSpecError = 2;
constexpr int kConformanceFailure = 3;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(snlt_status st) {
  const std::string msg = std::string(snlt_status_name(st)) + ": " + snlt_last_error();
  throw Failure{st == SNLT_E_PARSE ? kSpecError : kComputeError, msg};
}

void check(snlt_status st) {
  if (st != SNLT_OK) fail(st);
}

struct Common {
  std::string model_path;
  std::string out_path;
  std::string format = "csv";
  std::vector<std::string> assignments;
};

struct ModelHandle {
  snlt_model* m = nullptr;
  ~ModelHandle() { snlt_model_free(m); }
};

struct ParamsHandle {
  snlt_params* p = snlt_params_create();
  ~ParamsHandle() { snlt_params_free(p); }
};

struct ResultHandle {
  snlt_result* r = nullptr;
  ~ResultHandle() { snlt_result_free(r); }
};

void load_model(const Common& c, ModelHandle& out) {
  if (c.model_path.empty()) {
    check(snlt_model_create(1.0, 0.0, 0.0, 0.0, &out.m));
    return;
  }
  std::ifstream in(c.model_path);
  if (!in) throw Failure{kSpecError, "cannot read model file '" + c.model_path + "'"};
  std::stringstream ss;
  ss << in.rdbuf();
  check(snlt_model_from_json(ss.str().c_str(), &out.m));
}

/// Splits key=value pairs and keeps their order for the input columns.
std::vector<std::pair<std::string, std::string>> split_assignments(const std::vector<std::string>& a) {
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& s : a) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{kSpecError, "expected key=value, got '" + s + "'"};
    kv.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return kv;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

/// Table rows prefixed by the input key/value columns.
std::string render(const snlt_result* r, const std::vector<std::pair<std::string, std::string>>& inputs,
                   const std::string& format) {
  const size_t nc = snlt_result_columns(r);
  const size_t nr = snlt_result_rows(r);
  std::ostringstream os;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inputs) j["inputs"][k] = v;
    j["rows"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < nr; ++i) {
      nlohmann::ordered_json row;
      row["label"] = snlt_result_row_label(r, i);
      for (size_t c = 0; c < nc; ++c) {
        const double v = snlt_result_value(r, i, c);
        if (std::isfinite(v)) {
          row[snlt_result_column_name(r, c)] = v;
        } else {
          row[snlt_result_column_name(r, c)] = fmt(v);
        }
      }
      j["rows"].push_back(row);
    }
    j["notes"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < snlt_result_note_count(r); ++i) j["notes"].push_back(snlt_result_note(r, i));
    os << j.dump(2) << "\n";
    return os.str();
  }
  for (const auto& [k, v] : inputs) os << csv_field(k) << ",";
  os << "row";
  for (size_t c = 0; c < nc; ++c) os << "," << snlt_result_column_name(r, c);
  os << "\n";
  for (size_t i = 0; i < nr; ++i) {
    for (const auto& [k, v] : inputs) os << csv_field(v) << ",";
    os << csv_field(snlt_result_row_label(r, i));
    for (size_t c = 0; c < nc; ++c) os << "," << fmt(snlt_result_value(r, i, c));
    os << "\n";
  }
  return os.str();
}

void print_notes(const snlt_result* r) {
  for (size_t i = 0; i < snlt_result_note_count(r); ++i) std::cerr << "note: " << snlt_result_note(r, i) << "\n";
}

void emit(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out_path, std::ios::binary);
  if (!out) throw Failure{kComputeError, "cannot write '" + c.out_path + "'"};
  out << text;
}

void fill_params(const std::vector<std::pair<std::string, std::string>>& kv, ParamsHandle& p) {
  for (const auto& [k, v] : kv) check(snlt_params_set(p.p, k.c_str(), v.c_str()));
}

double number(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key, double fallback,
              bool required = false) {
  for (const auto& [k, v] : kv) {
    if (k != key) continue;
    try {
      size_t used = 0;
      const double d = std::stod(v, &used);
      if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw Failure{kSpecError, "parameter '" + key + "' is not a number"};
  }
  if (required) throw Failure{kSpecError, "missing parameter '" + key + "'"};
  return fallback;
}

void only_keys(const std::vector<std::pair<std::string, std::string>>& kv, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Failure{kSpecError, "unknown parameter '" + k + "'"};
  }
}

int run_scale(const Common& c) {
  const auto kv = split_assignments(c.assignments);
  only_keys(kv, {"q", "nodes", "x", "x0", "x1", "n"});
  ModelHandle m;
  load_model(c, m);
  snlt_scale* s = nullptr;
  check(snlt_scale_create(m.m, number(kv, "q", 0.0), static_cast<int>(number(kv, "nodes", 0.0)), &s));
  std::unique_ptr<snlt_scale, decltype(&snlt_scale_free)> guard(s, snlt_scale_free);
  std::vector<double> xs;
  const bool single = std::any_of(kv.begin(), kv.end(), [](const auto& e) { return e.first == "x"; });
  if (single) {
    xs.push_back(number(kv, "x", 0.0));
  } else {
    const double x0 = number(kv, "x0", 0.0), x1 = number(kv, "x1", 2.0);
    const int n = static_cast<int>(number(kv, "n", 21.0));
    if (n < 2) throw Failure{kSpecError, "n must be at least 2"};
    for (int i = 0; i < n; ++i) xs.push_back(x0 + (x1 - x0) * i / (n - 1));
  }
  std::ostringstream os;
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  if (c.format == "csv") os << "x,W,Z,dWdq\n";
  for (double x : xs) {
    double w = 0, z = 0, d = 0;
    check(snlt_scale_eval(s, x, &w, &z, &d));
    if (c.format == "csv") {
      os << fmt(x) << "," << fmt(w) << "," << fmt(z) << "," << fmt(d) << "\n";
    } else {
      j.push_back({{"x", x}, {"W", w}, {"Z", z}, {"dWdq", d}});
    }
  }
  if (c.format == "json") {
    nlohmann::ordered_json top;
    top["family"] = snlt_scale_family(s);
    top["phi"] = snlt_scale_phi(s);
    top["rows"] = j;
    os << top.dump(2) << "\n";
  }
  emit(c, os.str());
  return 0;
}

int run_omega(const Common& c) {
  const auto kv = split_assignments(c.assignments);
  only_keys(kv, {"q", "omega", "c", "b", "h", "points"});
  ModelHandle m;
  load_model(c, m);
  std::string omega = "const:0";
  std::vector<double> points;
  for (const auto& [k, v] : kv) {
    if (k == "omega") omega = v;
    if (k == "points") {
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) points.push_back(number({{"points", item}}, "points", 0.0));
    }
  }
  snlt_grid* g = nullptr;
  check(snlt_omega_solve(m.m, number(kv, "q", 0.0), omega.c_str(), number(kv, "c", 0.0, true),
                         number(kv, "b", 0.0, true), number(kv, "h", 1e-2), points.data(), points.size(), &g));
  std::unique_ptr<snlt_grid, decltype(&snlt_grid_free)> guard(g, snlt_grid_free);
  for (size_t i = 0; i < snlt_grid_warning_count(g); ++i) std::cerr << "warning: " << snlt_grid_warning(g, i) << "\n";
  size_t need = 0;
  check(snlt_grid_csv(g, nullptr, 0, &need));
  std::string buf(need, '\0');
  check(snlt_grid_csv(g, buf.data(), buf.size(), &need));
  buf.resize(need - 1);
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["mesh"] = nlohmann::ordered_json::array();
    j["Z"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < snlt_grid_size(g); ++i) {
      const double x = snlt_grid_node(g, i);
      double z = 0;
      check(snlt_grid_z(g, x, &z));
      j["mesh"].push_back(x);
      j["Z"].push_back(z);
    }
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, buf);
  }
  return 0;
}

int run_table(const Common& c, const std::string& id, bool mc) {
  const auto kv = split_assignments(c.assignments);
  ModelHandle m;
  load_model(c, m);
  ParamsHandle p;
  fill_params(kv, p);
  ResultHandle r;
  check(mc ? snlt_mc_verify(id.c_str(), m.m, p.p, &r.r) : snlt_law_eval(id.c_str(), m.m, p.p, &r.r));
  print_notes(r.r);
  emit(c, render(r.r, kv, c.format));
  return 0;
}

int run_list(const Common& c) {
  std::ostringstream os;
  os << "id,keys,summary\n";
  for (size_t i = 0; i < snlt_law_count(); ++i) {
    const char *id = nullptr, *keys = nullptr, *summary = nullptr;
    check(snlt_law_info(i, &id, &keys, &summary));
    os << id << "," << csv_field(keys) << "," << csv_field(summary) << "\n";
  }
  emit(c, os.str());
  return 0;
}

int run_conformance(const Common& c, bool quick, unsigned threads) {
  ResultHandle r;
  check(snlt_conformance_run(quick ? 1 : 0, threads, &r.r));
  print_notes(r.r);
  emit(c, render(r.r, {}, c.format));
  for (size_t i = 0; i < snlt_result_rows(r.r); ++i) {
    if (snlt_result_value(r.r, i, 2) != 1.0) return kConformanceFailure;
  }
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool model, bool positional) {
  if (model) sub->add_option("--model", c.model_path, "Model file (JSON keys sigma, gamma, jump_kind, jump_rate, jump_mean)");
  sub->add_option("--out", c.out_path, "Write output here instead of stdout");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (positional) sub->add_option("params", c.assignments, "key=value overrides");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale functions and local-time laws of spectrally negative Levy processes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", snlt_version());

  Common c;
  std::string id;
  bool list = false, quick = false;
  unsigned threads = 0;

  auto* scale = app.add_subcommand("scale", "Tabulate W, Z and dW/dq.\n"
                                            "Keys: q, nodes (0 = closed form), x or x0,x1,n.\n"
                                            "CSV columns: x,W,Z,dWdq");
  add_common(scale, c, true, true);
  auto* omega = app.add_subcommand("omega", "Solve the Volterra equations for a weight function and dump the grid.\n"
                                            "Keys: q (base), omega (const:q | step:l..:h.. | delta:a,p,eps, '+'-joined),\n"
                                            "c, b, h, points=x1,x2,...\n"
                                            "CSV: '#' header, then x,y,W rows and x,Z rows");
  add_common(omega, c, true, true);
  auto* law = app.add_subcommand("law", "Evaluate a law by id; --list shows ids and keys.\n"
                                        "CSV columns: the given keys, row label, then the law's value columns");
  add_common(law, c, true, true);
  law->add_option("--id", id, "Law id");
  law->add_flag("--list", list, "List law ids");
  auto* loop = app.add_subcommand("loopsoup", "Both routes of the loop-soup functional.\n"
                                              "Keys: q, nodes, b, c, levels, weights.\n"
                                              "CSV columns: keys, row, value, log_det, log_scale, gap");
  add_common(loop, c, true, true);
  auto* mc = app.add_subcommand("mc-verify", "Compare a law with the Monte Carlo oracle.\n"
                                             "Extra keys: n_paths, dt, seed, eps, t_max, threads.\n"
                                             "CSV columns: keys, row, analytic, mc_mean, mc_stderr, z_score");
  add_common(mc, c, true, true);
  mc->add_option("--id", id, "Law id")->required();
  auto* conf = app.add_subcommand("conformance", "Run the acceptance gates.\n"
                                                 "CSV columns: row, value, bound, passed, criterion");
  add_common(conf, c, false, false);
  conf->add_flag("--quick", quick, "Fewer instances and smaller ensembles");
  conf->add_option("--threads", threads, "Monte Carlo threads (0: SNLT_THREADS or hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kSpecError;
  }

  try {
    if (*scale) return run_scale(c);
    if (*omega) return run_omega(c);
    if (*law) {
      if (list) return run_list(c);
      if (id.empty()) throw Failure{kSpecError, "law: --id or --list is required"};
      return run_table(c, id, false);
    }
    if (*loop) return run_table(c, "loop_soup_functional", false);
    if (*mc) return run_table(c, id, true);
    if (*conf) return run_conformance(c, quick, threads);
  } catch (const Failure& f) {
    std::cerr << "snlt: " << f.message << "\n";
    return f.code;
  }
  return kSpecError;
}
