// Copyright 2026 the bdqmc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bdqmc.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdqmc/digitalnet.hpp"
#include "bdqmc/harness.hpp"
#include "bdqmc/transport.hpp"
#include "bdqmc/walsh.hpp"

struct bdqmc_transport {
  bdqmc::TransportMap map;
};
struct bdqmc_dirs {
  bdqmc::DirectionNumbers dirs;
};
struct bdqmc_config {
  bdqmc::ExperimentConfig cfg;
};
struct bdqmc_results {
  std::vector<bdqmc::ResultRow> rows;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char *what) { g_last_error = what ? what : ""; }

int fail(int code, const char *what) {
  set_error(what);
  return code;
}

// Runs `fn`, translating C++ exceptions into error codes.
template <typename Fn> int guarded(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return BDQMC_OK;
  } catch (const std::invalid_argument &e) {
    return fail(BDQMC_ERR_INVALID, e.what());
  } catch (const std::domain_error &e) {
    return fail(BDQMC_ERR_INVALID, e.what());
  } catch (const std::out_of_range &e) {
    return fail(BDQMC_ERR_INVALID, e.what());
  } catch (const std::length_error &e) {
    return fail(BDQMC_ERR_CAPACITY, e.what());
  } catch (const std::exception &e) {
    return fail(BDQMC_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(BDQMC_ERR_RUNTIME, "unknown error");
  }
}

int require(bool cond, const char *what) {
  return cond ? BDQMC_OK : fail(BDQMC_ERR_INVALID, what);
}

} // namespace

extern "C" {

const char *bdqmc_last_error(void) { return g_last_error.c_str(); }

/* ---- transport maps -------------------------------------------------- */

int bdqmc_transport_create_damping(const double *theta, size_t s, double p,
                                   bdqmc_transport **out) {
  if (int rc = require(theta && out && s > 0, "null argument"))
    return rc;
  return guarded([&] {
    bdqmc::DampingParams params(std::vector<double>(theta, theta + s), p);
    *out = new bdqmc_transport{
        bdqmc::TransportMap::boundary_damping(std::move(params))};
  });
}

int bdqmc_transport_create_inversion(size_t s, bdqmc_transport **out) {
  if (int rc = require(out && s > 0, "null argument"))
    return rc;
  return guarded(
      [&] { *out = new bdqmc_transport{bdqmc::TransportMap::inversion(s)}; });
}

int bdqmc_transport_create_mobius(size_t s, bdqmc_transport **out) {
  if (int rc = require(out && s > 0, "null argument"))
    return rc;
  return guarded(
      [&] { *out = new bdqmc_transport{bdqmc::TransportMap::mobius(s)}; });
}

int bdqmc_transport_create_truncation(size_t s, double a,
                                      bdqmc_transport **out) {
  if (int rc = require(out && s > 0, "null argument"))
    return rc;
  return guarded([&] {
    *out = new bdqmc_transport{bdqmc::TransportMap::truncation(s, a)};
  });
}

void bdqmc_transport_free(bdqmc_transport *t) { delete t; }

int bdqmc_transport_map(const bdqmc_transport *t, size_t j, double u,
                        double *out) {
  if (int rc = require(t && out, "null argument"))
    return rc;
  return guarded([&] { *out = t->map.map(j, u); });
}

int bdqmc_transport_weight(const bdqmc_transport *t, size_t j, double u,
                           double *out) {
  if (int rc = require(t && out, "null argument"))
    return rc;
  return guarded([&] { *out = t->map.weight(j, u); });
}

/* ---- digital nets ---------------------------------------------------- */

int bdqmc_dirs_load(const char *path, bdqmc_dirs **out) {
  if (int rc = require(path && out, "null argument"))
    return rc;
  return guarded([&] {
    *out = new bdqmc_dirs{bdqmc::DirectionNumbers::load(path)};
  });
}

int bdqmc_dirs_default(bdqmc_dirs **out) {
  if (int rc = require(out != nullptr, "null argument"))
    return rc;
  return guarded([&] {
    *out = new bdqmc_dirs{
        bdqmc::DirectionNumbers::load(bdqmc::default_dirs_path())};
  });
}

void bdqmc_dirs_free(bdqmc_dirs *d) { delete d; }

size_t bdqmc_dirs_max_dimension(const bdqmc_dirs *d) {
  return d ? d->dirs.max_dimension() : 0;
}

int bdqmc_sobol_points(const bdqmc_dirs *d, size_t s, unsigned m,
                       double *out) {
  if (int rc = require(d && out, "null argument"))
    return rc;
  return guarded([&] {
    bdqmc::DigitalNet net(d->dirs, s, m);
    const auto pts = net.points();
    std::memcpy(out, pts.data(), pts.size() * sizeof(double));
  });
}

int bdqmc_scramble_points(const bdqmc_dirs *d, size_t s, unsigned m,
                          uint64_t seed, uint32_t replicate, double *out) {
  if (int rc = require(d && out, "null argument"))
    return rc;
  return guarded([&] {
    bdqmc::DigitalNet net(d->dirs, s, m);
    bdqmc::ScrambleRealization scr(seed, replicate, s, m);
    const auto pts = scr.scramble(net);
    std::memcpy(out, pts.data(), pts.size() * sizeof(double));
  });
}

int bdqmc_check_net(const double *points, size_t s, unsigned m, unsigned t,
                    int *ok) {
  if (int rc = require(points && ok && s > 0, "null argument"))
    return rc;
  return guarded([&] {
    const size_t n = size_t{1} << m;
    *ok = bdqmc::check_net({points, n * s}, t, m, s) ? 1 : 0;
  });
}

int bdqmc_min_t(const double *points, size_t s, unsigned m,
                unsigned *t_out) {
  if (int rc = require(points && t_out && s > 0, "null argument"))
    return rc;
  return guarded([&] {
    const size_t n = size_t{1} << m;
    *t_out = bdqmc::min_t({points, n * s}, m, s);
  });
}

/* ---- experiments ------------------------------------------------------ */

int bdqmc_config_create(bdqmc_config **out) {
  if (int rc = require(out != nullptr, "null argument"))
    return rc;
  return guarded([&] { *out = new bdqmc_config{}; });
}

int bdqmc_config_from_json(const char *json_text, bdqmc_config **out) {
  if (int rc = require(json_text && out, "null argument"))
    return rc;
  return guarded([&] {
    *out = new bdqmc_config{bdqmc::ExperimentConfig::from_json(json_text)};
  });
}

void bdqmc_config_free(bdqmc_config *c) { delete c; }

int bdqmc_config_set_int(bdqmc_config *c, const char *field, long long v) {
  if (int rc = require(c && field, "null argument"))
    return rc;
  return guarded([&] {
    const std::string f = field;
    auto &cfg = c->cfg;
    if (f == "option")
      cfg.option = static_cast<int>(v);
    else if (f == "s")
      cfg.s = static_cast<size_t>(v);
    else if (f == "m_lo")
      cfg.m_lo = static_cast<unsigned>(v);
    else if (f == "m_hi")
      cfg.m_hi = static_cast<unsigned>(v);
    else if (f == "replicates")
      cfg.replicates = static_cast<unsigned>(v);
    else if (f == "seed")
      cfg.seed = static_cast<uint64_t>(v);
    else if (f == "threads")
      cfg.threads = static_cast<unsigned>(v);
    else
      throw std::invalid_argument("config field '" + f +
                                  "': unknown integer field");
  });
}

int bdqmc_config_set_real(bdqmc_config *c, const char *field, double v) {
  if (int rc = require(c && field, "null argument"))
    return rc;
  return guarded([&] {
    const std::string f = field;
    auto &cfg = c->cfg;
    if (f == "M")
      cfg.M = v;
    else if (f == "theta0")
      cfg.theta0 = v;
    else if (f == "theta_exponent")
      cfg.theta_exponent = v;
    else if (f == "p")
      cfg.p = v;
    else if (f == "a_explicit")
      cfg.a_explicit = v;
    else
      throw std::invalid_argument("config field '" + f +
                                  "': unknown real field");
  });
}

int bdqmc_config_set_string(bdqmc_config *c, const char *field,
                            const char *v) {
  if (int rc = require(c && field && v, "null argument"))
    return rc;
  return guarded([&] {
    const std::string f = field;
    auto &cfg = c->cfg;
    if (f == "map_kind")
      cfg.map_kind = v;
    else if (f == "dirs_path")
      cfg.dirs_path = v;
    else if (f == "out_dir")
      cfg.out_dir = v;
    else if (f == "truncation_rule") {
      const std::string rule = v;
      if (rule == "sqrt2logn")
        cfg.truncation_rule = bdqmc::TruncationRule::Sqrt2LogN;
      else if (rule == "sqrt5logn")
        cfg.truncation_rule = bdqmc::TruncationRule::Sqrt5LogN;
      else if (rule == "explicit")
        cfg.truncation_rule = bdqmc::TruncationRule::Explicit;
      else
        throw std::invalid_argument("config field 'truncation_rule': "
                                    "unknown rule '" +
                                    rule + "'");
    } else
      throw std::invalid_argument("config field '" + f +
                                  "': unknown string field");
  });
}

int bdqmc_run_experiment(const bdqmc_config *c, const bdqmc_dirs *d,
                         bdqmc_results **out) {
  if (int rc = require(c && d && out, "null argument"))
    return rc;
  return guarded([&] {
    *out = new bdqmc_results{bdqmc::run_experiment(c->cfg, d->dirs)};
  });
}

void bdqmc_results_free(bdqmc_results *r) { delete r; }

size_t bdqmc_results_count(const bdqmc_results *r) {
  return r ? r->rows.size() : 0;
}

int bdqmc_results_row(const bdqmc_results *r, size_t i,
                      bdqmc_result_row *out) {
  if (int rc = require(r && out, "null argument"))
    return rc;
  if (int rc = require(i < r->rows.size(), "row index out of range"))
    return rc;
  const auto &row = r->rows[i];
  out->option = row.option;
  out->s = row.s;
  out->M = row.M;
  out->m = row.m;
  out->n = row.n;
  out->rmse = row.rmse;
  out->mean_estimate = row.mean_estimate;
  out->replicates = row.replicates;
  out->seed = row.seed;
  out->failures = row.failures;
  return BDQMC_OK;
}

int bdqmc_results_append(bdqmc_results *dst, const bdqmc_results *src) {
  if (int rc = require(dst && src, "null argument"))
    return rc;
  return guarded([&] {
    dst->rows.insert(dst->rows.end(), src->rows.begin(), src->rows.end());
  });
}

int bdqmc_results_write_csv(const bdqmc_results *r, const char *path) {
  if (int rc = require(r && path, "null argument"))
    return rc;
  return guarded([&] { bdqmc::emit_csv(r->rows, std::string(path)); });
}

int bdqmc_results_write_svg(const bdqmc_results *r, const char *path) {
  if (int rc = require(r && path, "null argument"))
    return rc;
  return guarded([&] { bdqmc::emit_plot(r->rows, std::string(path)); });
}

int bdqmc_results_load_csv(const char *path, bdqmc_results **out) {
  if (int rc = require(path && out, "null argument"))
    return rc;
  return guarded([&] {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error(std::string("cannot open ") + path);
    *out = new bdqmc_results{bdqmc::parse_csv(in)};
  });
}

int bdqmc_fit_slope(const bdqmc_results *r, unsigned m_lo, unsigned m_hi,
                    double *out) {
  if (int rc = require(r && out, "null argument"))
    return rc;
  return guarded([&] { *out = bdqmc::fit_slope(r->rows, m_lo, m_hi); });
}

int bdqmc_describe_option(int option, double M, size_t s, char *buf,
                          size_t buflen) {
  if (int rc = require(buf && buflen > 0, "null argument"))
    return rc;
  return guarded([&] {
    const std::string text = bdqmc::describe_option(option, M, s);
    if (text.size() + 1 > buflen)
      throw std::invalid_argument("describe_option: buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

/* ---- Walsh audit ------------------------------------------------------ */

int bdqmc_walsh_audit(const double *thetas, size_t n_thetas, double p,
                      uint32_t k_max, const char *out_csv,
                      double *max_ratio) {
  if (int rc = require(thetas || n_thetas == 0, "null argument"))
    return rc;
  return guarded([&] {
    const auto rows =
        bdqmc::audit_lemma_bound({thetas, n_thetas}, p, k_max);
    if (max_ratio) {
      double best = 0.0;
      for (const auto &row : rows)
        best = std::max(best, row.ratio);
      *max_ratio = best;
    }
    if (out_csv) {
      std::ofstream out(out_csv, std::ios::binary);
      if (!out)
        throw std::runtime_error(std::string("cannot open ") + out_csv);
      bdqmc::write_audit_csv(rows, out);
      if (!out)
        throw std::runtime_error(std::string("write failed for ") + out_csv);
    }
  });
}

} // extern "C"
