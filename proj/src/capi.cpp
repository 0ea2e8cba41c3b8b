#include "ortho/capi.h"

#include <cstring>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "ortho/constants.hpp"
#include "ortho/cusps.hpp"
#include "ortho/errors.hpp"
#include "ortho/hermitian.hpp"
#include "ortho/orbits.hpp"
#include "ortho/qforms.hpp"
#include "ortho/quat.hpp"
#include "ortho/report.hpp"

struct ortho_report {
  ortho::report::CountReport data;
  std::string csv, json;
};

namespace {

thread_local std::string g_last_error;

ortho_status fail(ortho_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
ortho_status guarded(Fn&& fn) {
  try {
    fn();
    return ORTHO_OK;
  } catch (const ortho::CapacityError& e) {
    return fail(ORTHO_ERR_CAPACITY, e.what());
  } catch (const ortho::StabilizationError& e) {
    return fail(ORTHO_ERR_CAPACITY, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ORTHO_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(ORTHO_ERR_INTERNAL, e.what());
  }
}

ortho_status finish(ortho::report::CountReport rep, ortho_report** out) {
  if (out == nullptr) return fail(ORTHO_ERR_INVALID, "null output handle");
  auto* r = new ortho_report;
  r->data = std::move(rep);
  r->csv = ortho::report::emit_csv(r->data);
  r->json = ortho::report::emit_json(r->data);
  *out = r;
  return ORTHO_OK;
}

std::map<std::string, double> parse_params(const char* params) {
  std::map<std::string, double> out;
  if (params == nullptr) return out;
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parameter must be key=value: " + item);
    out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return out;
}

}  // namespace

extern "C" {

const char* ortho_last_error(void) { return g_last_error.c_str(); }

ortho_status ortho_run_quad_count(int64_t a, int64_t b, int64_t c, double smax,
                                  int steps, int threads, ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st = guarded([&] {
    rep = ortho::qf::quad_count_report({a, b, c}, smax, steps, threads);
  });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_run_quad_verify_length(int64_t a, int64_t b, int64_t c,
                                          int samples, uint64_t seed,
                                          ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st = guarded([&] {
    rep = ortho::qf::quad_verify_length_report({a, b, c}, samples, seed);
  });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_run_quad_irrationals(int64_t a, int64_t b, int64_t c,
                                        double smax, int steps,
                                        ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st = guarded([&] {
    rep = ortho::qf::quad_irrationals_report({a, b, c}, smax, steps);
  });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_run_cusp_mertens(double smax, int steps, ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st =
      guarded([&] { rep = ortho::cusps::mertens_report(smax, steps); });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_run_cusp_bianchi(int64_t dk, double smax, int steps,
                                    ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st =
      guarded([&] { rep = ortho::cusps::bianchi_report(dk, smax, steps); });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_run_orbit_ball(const char* group, double smax, int steps,
                                  int threads, ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st = guarded([&] {
    if (group == nullptr) throw std::invalid_argument("null group name");
    rep = ortho::orbits::orbit_ball_report(ortho::orbits::ring_from_name(group),
                                           smax, steps, threads);
  });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_run_herm_count(int64_t a, int64_t b_re, int64_t b_im,
                                  int64_t c, double bound, double slack,
                                  int steps, int threads, ortho_report** out) {
  ortho::report::CountReport rep;
  const ortho_status st = guarded([&] {
    rep = ortho::herm::herm_count_report({a, {b_re, b_im}, c}, bound, slack,
                                         steps, threads);
  });
  return st == ORTHO_OK ? finish(std::move(rep), out) : st;
}

ortho_status ortho_const_eval(const char* name, const char* params,
                              double* value) {
  return guarded([&] {
    if (name == nullptr || value == nullptr)
      throw std::invalid_argument("null argument");
    *value = ortho::consts::special_constant(name, parse_params(params));
  });
}

ortho_status ortho_const_check(const char* name, const char* params,
                               double* max_rel_err, int* has_check) {
  return guarded([&] {
    if (name == nullptr || max_rel_err == nullptr || has_check == nullptr)
      throw std::invalid_argument("null argument");
    using ortho::consts::bm_mass;
    using ortho::consts::master_constant;
    using ortho::consts::skinning_mass;
    using ortho::consts::SkinningKind;
    const auto p = parse_params(params);
    const std::string n(name);
    *has_check = 0;
    *max_rel_err = 0;
    const double direct = ortho::consts::special_constant(n, p);
    auto get = [&](const char* key) {
      auto it = p.find(key);
      if (it == p.end())
        throw std::invalid_argument(std::string("missing parameter: ") + key);
      return it->second;
    };
    double via_master = 0;
    if (n == "margulis" || n == "huber") {
      const int dim = n == "huber" ? 2 : static_cast<int>(get("n"));
      // Compact genus g surface has area 4 pi (g - 1).
      const double vol =
          n == "huber" ? 4 * std::numbers::pi * (get("g") - 1) : get("vol");
      const double pt = skinning_mass(SkinningKind::point, dim, 0, 0);
      via_master = master_constant(pt, pt, dim - 1, bm_mass(dim, vol));
    } else if (n == "herrmann") {
      const int dim = static_cast<int>(get("n"));
      via_master = master_constant(
          skinning_mass(SkinningKind::point, dim, 0, 0),
          skinning_mass(SkinningKind::geodesic, dim, static_cast<int>(get("k")),
                        get("vol_c")),
          dim - 1, bm_mass(dim, get("vol")));
    } else if (n == "parpau") {
      const int dim = static_cast<int>(get("n"));
      via_master = master_constant(
          skinning_mass(SkinningKind::cusp, dim, 0, get("vol_cusp")),
          skinning_mass(SkinningKind::geodesic, dim, static_cast<int>(get("k")),
                        get("vol_c")),
          dim - 1, bm_mass(dim, get("vol")));
    } else if (n == "bigeodesic" || n == "closed_geodesic_pair") {
      const int dim = static_cast<int>(get("n"));
      const int km = n == "bigeodesic" ? static_cast<int>(get("k_minus")) : 1;
      const int kp = n == "bigeodesic" ? static_cast<int>(get("k_plus")) : 1;
      const double vm = n == "bigeodesic" ? get("vol_minus") : get("len_minus");
      const double vp = n == "bigeodesic" ? get("vol_plus") : get("len_plus");
      via_master = master_constant(
          skinning_mass(SkinningKind::geodesic, dim, km, vm),
          skinning_mass(SkinningKind::geodesic, dim, kp, vp), dim - 1,
          bm_mass(dim, get("vol")));
    } else if (n == "bicusp") {
      const int dim = static_cast<int>(get("n"));
      via_master = master_constant(
          skinning_mass(SkinningKind::cusp, dim, 0, get("vol_minus")),
          skinning_mass(SkinningKind::cusp, dim, 0, get("vol_plus")), dim - 1,
          bm_mass(dim, get("vol")));
    } else {
      return;  // no second route for this constant
    }
    *has_check = 1;
    *max_rel_err = std::abs(via_master / direct - 1);
  });
}

ortho_status ortho_const_names(const char*** names, int* count) {
  static std::vector<std::string> storage = ortho::consts::special_constant_names();
  static std::vector<const char*> ptrs = [] {
    std::vector<const char*> v;
    for (const auto& s : storage) v.push_back(s.c_str());
    return v;
  }();
  if (names == nullptr || count == nullptr)
    return fail(ORTHO_ERR_INVALID, "null argument");
  *names = ptrs.data();
  *count = static_cast<int>(ptrs.size());
  return ORTHO_OK;
}

ortho_status ortho_quat_selftest(char* summary, int summary_len) {
  return guarded([&] {
    using namespace ortho::quat;
    const auto units = hurwitz_units();
    if (units.size() != 24) throw std::runtime_error("unit count wrong");
    for (const auto& u : units) {
      if (!u.valid() || u.norm() != 1)
        throw std::runtime_error("invalid Hurwitz unit");
      for (const auto& v : units)
        if (!(u * v).valid() || (u * v).norm() != 1)
          throw std::runtime_error("units not closed under product");
    }
    std::mt19937_64 rng(20240901);
    std::uniform_int_distribution<std::int64_t> coord(-6, 6);
    auto random_hurwitz = [&] {
      const std::int64_t par = coord(rng) & 1;
      return HurwitzInt::from_halves(2 * coord(rng) + par, 2 * coord(rng) + par,
                                     2 * coord(rng) + par, 2 * coord(rng) + par);
    };
    for (int i = 0; i < 2000; ++i) {
      const HurwitzInt x = random_hurwitz(), y = random_hurwitz();
      const HurwitzInt p = x * y;
      if (!p.valid()) throw std::runtime_error("Hurwitz order not closed");
      if (p.norm() != x.norm() * y.norm())
        throw std::runtime_error("norm not multiplicative");
    }
    for (int i = 0; i < 2000; ++i) {
      const QuatMatrix m{random_hurwitz().to_quaternion(),
                         random_hurwitz().to_quaternion(),
                         random_hurwitz().to_quaternion(),
                         random_hurwitz().to_quaternion()};
      const QuatMatrix k{random_hurwitz().to_quaternion(),
                         random_hurwitz().to_quaternion(),
                         random_hurwitz().to_quaternion(),
                         random_hurwitz().to_quaternion()};
      const QuatMatrix mk{m.a * k.a + m.b * k.c, m.a * k.b + m.b * k.d,
                          m.c * k.a + m.d * k.c, m.c * k.b + m.d * k.d};
      const double lhs = dieudonne_det(mk);
      const double rhs = dieudonne_det(m) * dieudonne_det(k);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, rhs))
        throw std::runtime_error("Dieudonne determinant not multiplicative");
    }
    if (summary != nullptr && summary_len > 0) {
      std::snprintf(summary, static_cast<std::size_t>(summary_len),
                    "quat selftest: 24 units, closure and Dieudonne "
                    "multiplicativity OK (2000 samples)");
    }
  });
}

int ortho_report_num_rows(const ortho_report* r) {
  return r == nullptr ? 0 : static_cast<int>(r->data.rows.size());
}

ortho_status ortho_report_row(const ortho_report* r, int index, double* s,
                              int64_t* count, double* prediction,
                              double* ratio) {
  if (r == nullptr || index < 0 ||
      index >= static_cast<int>(r->data.rows.size()))
    return fail(ORTHO_ERR_INVALID, "row index out of range");
  const auto& row = r->data.rows[static_cast<std::size_t>(index)];
  if (s) *s = row.s;
  if (count) *count = row.count;
  if (prediction) *prediction = row.prediction;
  if (ratio) *ratio = row.ratio;
  return ORTHO_OK;
}

ortho_status ortho_report_fit(const ortho_report* r, double* constant,
                              double* drift) {
  if (r == nullptr) return fail(ORTHO_ERR_INVALID, "null report");
  if (constant) *constant = r->data.fit.constant;
  if (drift) *drift = r->data.fit.drift;
  return ORTHO_OK;
}

const char* ortho_report_param(const ortho_report* r, const char* key) {
  if (r == nullptr || key == nullptr) return nullptr;
  const auto it = r->data.params.find(key);
  return it == r->data.params.end() ? nullptr : it->second.c_str();
}

const char* ortho_report_csv(const ortho_report* r) {
  return r == nullptr ? "" : r->csv.c_str();
}

const char* ortho_report_json(const ortho_report* r) {
  return r == nullptr ? "" : r->json.c_str();
}

void ortho_report_free(ortho_report* r) { delete r; }

}  // extern "C"
