#include "ortho/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "ortho/constants.hpp"
#include "ortho/errors.hpp"

namespace ortho::herm {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
  return ((x % m) + m) % m;
}

// Form class modulo translations: b reduced into [0,|a|)^2 when a != 0;
// when a = 0 translations move only c, reduced modulo 2 gcd(|bx|, |by|).
struct FormKey {
  std::int64_t a = 0, bx = 0, by = 0, extra = 0;
  bool operator==(const FormKey& o) const {
    return a == o.a && bx == o.bx && by == o.by && extra == o.extra;
  }
};

struct FormKeyHash {
  std::size_t operator()(const FormKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.a, k.bx, k.by, k.extra}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

HermForm normalize_translation(const HermForm& f) {
  if (f.a != 0) {
    const std::int64_t m = std::llabs(f.a);
    HermForm out;
    out.a = f.a;
    out.b = {mod_pos(f.b.x, m), mod_pos(f.b.y, m)};
    // Same discriminant pins c.
    out.c = (out.b.norm() - f.discriminant()) / f.a;
    return out;
  }
  const std::int64_t g = 2 * std::gcd(std::llabs(f.b.x), std::llabs(f.b.y));
  HermForm out = f;
  if (g != 0) out.c = mod_pos(f.c, g);
  return out;
}

FormKey key_of(const HermForm& f) {
  const HermForm n = normalize_translation(f);
  if (n.a != 0) return {n.a, n.b.x, n.b.y, 0};
  return {0, n.b.x, n.b.y, n.c};
}

struct BfsResult {
  std::vector<HermForm> forms;  // translation-normalized representatives
};

// Pruned BFS over the modular orbit of f: translation moves are collapsed
// into the per-node mu sweep, the inversion z -> -1/z produces the new form
// (f(mu,1), -(a mu + b)~, a). Nodes with 0 < |a| < prune_a are not expanded
// further but the start and the a = 0 bridges always are.
BfsResult orbit_bfs(const HermForm& f0, std::int64_t alim, int threads) {
  require(f0.discriminant() > 0, "form must be indefinite");
  BfsResult res;
  std::unordered_set<FormKey, FormKeyHash> visited;
  std::vector<HermForm> frontier;
  auto admit = [&](const HermForm& f) {
    const HermForm n = normalize_translation(f);
    if (visited.insert(key_of(n)).second) {
      res.forms.push_back(n);
      frontier.push_back(n);
    }
  };
  admit(f0);
  const std::int64_t cap = std::int64_t{1} << 25;

  while (!frontier.empty()) {
    if (static_cast<std::int64_t>(res.forms.size()) > cap)
      throw CapacityError("orbit visited-set capacity exceeded");
    std::vector<HermForm> level = std::move(frontier);
    frontier.clear();
    const int nt = std::max(1, threads);
    std::vector<std::vector<HermForm>> produced(static_cast<std::size_t>(nt));
    auto expand = [&](std::size_t begin, std::size_t end,
                      std::vector<HermForm>* out) {
      for (std::size_t idx = begin; idx < end; ++idx) {
        const HermForm& f = level[idx];
        if (f.a != 0) {
          if (std::llabs(f.a) > alim) continue;  // pruned branch
          // mu sweep: need |f(mu,1)| <= alim.
          const double aa = static_cast<double>(f.a);
          const double cx = -static_cast<double>(f.b.x) / aa;
          const double cy = -static_cast<double>(f.b.y) / aa;
          const double r2 = (static_cast<double>(alim) +
                             std::abs(static_cast<double>(f.discriminant()) / aa)) /
                            std::abs(aa);
          const double r = std::sqrt(std::max(0.0, r2)) + 1.5;
          for (auto mx = static_cast<std::int64_t>(std::floor(cx - r));
               mx <= static_cast<std::int64_t>(std::ceil(cx + r)); ++mx) {
            for (auto my = static_cast<std::int64_t>(std::floor(cy - r));
                 my <= static_cast<std::int64_t>(std::ceil(cy + r)); ++my) {
              const GaussInt mu{mx, my};
              const std::int64_t c2 = f.eval_z1(mu);
              if (std::llabs(c2) > alim) continue;
              const GaussInt shifted{f.a * mx + f.b.x, f.a * my + f.b.y};
              out->push_back(HermForm{c2, -shifted.conj(), f.a});
            }
          }
        } else {
          // a = 0: translations step c along 2 gcd(bx, by) Z; inversion gives
          // (c2, -b~, 0).
          const std::int64_t g = 2 * std::gcd(std::llabs(f.b.x), std::llabs(f.b.y));
          if (g == 0) continue;
          for (std::int64_t c2 = mod_pos(f.c, g) - (alim / g + 1) * g; c2 <= alim;
               c2 += g) {
            if (std::llabs(c2) > alim) continue;
            out->push_back(HermForm{c2, -f.b.conj(), 0});
          }
        }
      }
    };
    if (nt == 1 || level.size() < 64) {
      expand(0, level.size(), &produced[0]);
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < nt; ++i) {
        const std::size_t begin = level.size() * static_cast<std::size_t>(i) /
                                  static_cast<std::size_t>(nt);
        const std::size_t end = level.size() * static_cast<std::size_t>(i + 1) /
                                static_cast<std::size_t>(nt);
        pool.emplace_back(expand, begin, end, &produced[static_cast<std::size_t>(i)]);
      }
      for (auto& t : pool) t.join();
    }
    for (const auto& batch : produced)
      for (const HermForm& f : batch) admit(f);
  }
  return res;
}

OrbitCircle folded_circle_key(const HermForm& f) {
  OrbitCircle c = circle_of(f);
  if (c.is_line) return c;
  // Unit rotation z -> -z sends the center to its negative; take the
  // lexicographically smaller residue.
  const std::int64_t den = c.center_den;
  const GaussInt neg{mod_pos(-c.center_num.x, den), mod_pos(-c.center_num.y, den)};
  if (neg.x < c.center_num.x ||
      (neg.x == c.center_num.x && neg.y < c.center_num.y))
    c.center_num = neg;
  return c;
}

}  // namespace

std::int64_t HermForm::eval_z1(const GaussInt& z) const {
  return a * z.norm() + 2 * (b.x * z.x + b.y * z.y) + c;
}

HermForm act(const HermForm& f, const GaussMat& g) {
  require(g.det() == GaussInt{1, 0}, "matrix must have determinant 1");
  // g^* M(f) g with M(f) = (a b; b~ c).
  const GaussInt a{f.a, 0}, c{f.c, 0};
  const GaussInt m00 = a * g.a + f.b * g.c;
  const GaussInt m01 = a * g.b + f.b * g.d;
  const GaussInt m10 = f.b.conj() * g.a + c * g.c;
  const GaussInt m11 = f.b.conj() * g.b + c * g.d;
  const GaussInt out_a = g.a.conj() * m00 + g.c.conj() * m10;
  const GaussInt out_b = g.a.conj() * m01 + g.c.conj() * m11;
  const GaussInt out_c = g.b.conj() * m01 + g.d.conj() * m11;
  if (out_a.y != 0 || out_c.y != 0)
    throw std::runtime_error("Hermitian action lost reality of a, c");
  return HermForm{out_a.x, out_b, out_c.x};
}

double OrbitCircle::radius() const {
  if (is_line) return std::numeric_limits<double>::infinity();
  return std::sqrt(static_cast<double>(delta)) / static_cast<double>(abs_a);
}

bool operator<(const OrbitCircle& l, const OrbitCircle& r) {
  const auto key = [](const OrbitCircle& c) {
    return std::tuple(c.is_line, c.center_num.x, c.center_num.y, c.center_den,
                      c.abs_a);
  };
  return key(l) < key(r);
}

OrbitCircle circle_of(const HermForm& f) {
  OrbitCircle c;
  c.delta = f.discriminant();
  require(c.delta > 0, "circle defined for indefinite forms only");
  if (f.a == 0) {
    c.is_line = true;
    return c;
  }
  const std::int64_t m = std::llabs(f.a);
  // center -b/a reduced into the fundamental cell [0,1)^2.
  c.center_num = {mod_pos(f.a > 0 ? -f.b.x : f.b.x, m),
                  mod_pos(f.a > 0 ? -f.b.y : f.b.y, m)};
  c.center_den = m;
  c.abs_a = m;
  return c;
}

double perp_length_herm(const HermForm& f, const GaussMat& g, double tau) {
  require(tau > 0, "tau must be positive");
  const HermForm fg = act(f, g);
  require(fg.a != 0, "image circle passes through infinity");
  return std::log(std::abs(static_cast<double>(fg.a)) /
                  (tau * std::sqrt(static_cast<double>(f.discriminant()))));
}

std::vector<OrbitCircle> orbit_circles(const HermForm& f, double r_min,
                                       double slack, int threads) {
  require(r_min > 0, "r_min must be positive");
  require(slack >= 1, "slack must be at least 1");
  const double sd = std::sqrt(static_cast<double>(f.discriminant()));
  auto run = [&](double sl) {
    const auto alim = static_cast<std::int64_t>(std::floor(sd * sl / r_min));
    const BfsResult bfs = orbit_bfs(f, alim, threads);
    std::vector<OrbitCircle> out;
    std::unordered_set<FormKey, FormKeyHash> seen;
    for (const HermForm& form : bfs.forms) {
      if (form.a == 0) continue;
      const OrbitCircle c = folded_circle_key(form);
      if (c.radius() < r_min) continue;
      const FormKey k{c.center_num.x, c.center_num.y, c.center_den, c.abs_a};
      if (seen.insert(k).second) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<OrbitCircle> once = run(slack);
  std::vector<OrbitCircle> twice = run(2 * slack);
  if (!(once == twice))
    throw StabilizationError("orbit circle set changed under doubled slack");
  return once;
}

std::vector<std::int64_t> orbit_form_counts(const HermForm& f,
                                            const std::vector<double>& bounds,
                                            double slack, int threads) {
  require(slack >= 1, "slack must be at least 1");
  double bmax = 0;
  for (double b : bounds) {
    require(b >= 1, "bounds must be at least 1");
    bmax = std::max(bmax, b);
  }
  const auto alim = static_cast<std::int64_t>(std::floor(bmax * slack));
  const BfsResult bfs = orbit_bfs(f, alim, threads);
  std::vector<std::int64_t> avalues;
  for (const HermForm& form : bfs.forms)
    if (form.a != 0) avalues.push_back(std::llabs(form.a));
  std::sort(avalues.begin(), avalues.end());
  std::vector<std::int64_t> out;
  out.reserve(bounds.size());
  for (double b : bounds) {
    const auto cutoff = static_cast<std::int64_t>(std::floor(b));
    out.push_back(static_cast<std::int64_t>(
        std::upper_bound(avalues.begin(), avalues.end(), cutoff) -
        avalues.begin()));
  }
  return out;
}

report::CountReport herm_count_report(const HermForm& f, double bound,
                                      double slack, int steps, int threads) {
  require(steps >= 2 && bound >= 16, "need bound >= 16 and steps >= 2");
  report::CountReport rep;
  rep.experiment = "herm-count";
  rep.params["a"] = std::to_string(f.a);
  rep.params["b_re"] = std::to_string(f.b.x);
  rep.params["b_im"] = std::to_string(f.b.y);
  rep.params["c"] = std::to_string(f.c);
  rep.params["slack"] = report::format_double(slack);
  const double constant = consts::special_constant(
      "hermitian_qi", {{"delta", static_cast<double>(f.discriminant())},
                       {"a", static_cast<double>(f.a)},
                       {"c", static_cast<double>(f.c)}});
  // Log-spaced grid; counts for the whole grid from one sweep, repeated at
  // doubled slack as the stabilization check.
  std::vector<double> grid;
  const double lo = std::max(8.0, bound / 128);
  for (int i = 0; i < steps; ++i)
    grid.push_back(lo * std::pow(bound / lo, static_cast<double>(i) / (steps - 1)));
  const std::vector<std::int64_t> counts = orbit_form_counts(f, grid, slack, threads);
  const std::vector<std::int64_t> counts2 =
      orbit_form_counts(f, grid, 2 * slack, threads);
  if (counts != counts2)
    throw StabilizationError("orbit form counts changed under doubled slack");
  std::vector<double> ss, cs;
  for (int i = 0; i < steps; ++i) {
    report::Row row;
    row.s = grid[static_cast<std::size_t>(i)];
    row.count = counts[static_cast<std::size_t>(i)];
    row.prediction = constant * row.s * row.s;
    row.ratio = static_cast<double>(row.count) / row.prediction;
    rep.rows.push_back(row);
    if (row.count > 0) {
      ss.push_back(row.s);
      cs.push_back(static_cast<double>(row.count));
    }
  }
  rep.params["fitted_exponent"] =
      report::format_double(ss.size() >= 2 ? report::fit_exponent(ss, cs) : 0);
  // Quadratic growth: fit against e^{2 ln s} over the positive rows.
  std::vector<report::Row> logrows;
  for (const auto& r : rep.rows)
    if (r.count > 0) {
      report::Row lr = r;
      lr.s = std::log(r.s);
      logrows.push_back(lr);
    }
  rep.fit = report::fit_constant(logrows, 2.0);
  return rep;
}

}  // namespace ortho::herm
