#include "ortho/cusps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ortho/constants.hpp"
#include "ortho/errors.hpp"

namespace ortho::cusps {

namespace {

using i128 = __int128;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Norm form coefficients: N(m + n omega) = m^2 + t m n + f n^2 with
// omega = (dk + sqrt(dk))/2 ... concretely t = 0, f = |dk|/4 for even dk and
// t = 1, f = (1 + |dk|)/4 for odd dk.
void norm_form(std::int64_t dk, std::int64_t* t, std::int64_t* f) {
  if (((dk % 2) + 2) % 2 == 0) {
    *t = 0;
    *f = -dk / 4;
  } else {
    *t = 1;
    *f = (1 - dk) / 4;
  }
}

}  // namespace

std::int64_t ImagQuadInt::norm() const {
  std::int64_t t, f;
  norm_form(dk, &t, &f);
  return m * m + t * m * n + f * n * n;
}

ImagQuadInt ImagQuadInt::operator*(const ImagQuadInt& o) const {
  // omega^2 = t*omega - f with the coefficients above... for even dk
  // omega^2 = dk/4 = -f; for odd dk omega^2 = omega + (dk-1)/4 = omega - f.
  std::int64_t t, f;
  norm_form(dk, &t, &f);
  const std::int64_t mm = m * o.m - f * n * o.n;
  const std::int64_t nn = m * o.n + n * o.m + t * n * o.n;
  return {mm, nn, dk};
}

ImagQuadInt ImagQuadInt::conj() const {
  // conj(m + n omega) = (m + t n) - n omega.
  std::int64_t t, f;
  norm_form(dk, &t, &f);
  return {m + t * n, -n, dk};
}

bool class_number_one(std::int64_t dk) {
  for (std::int64_t d : kClassNumberOne)
    if (d == dk) return true;
  return false;
}

std::vector<ImagQuadInt> units(std::int64_t dk) {
  std::vector<ImagQuadInt> us{{1, 0, dk}, {-1, 0, dk}};
  if (dk == -4) {
    us.push_back({0, 1, dk});
    us.push_back({0, -1, dk});
  } else if (dk == -3) {
    // omega = (1+sqrt(-3))/2 is a primitive sixth root of unity.
    us.push_back({0, 1, dk});
    us.push_back({0, -1, dk});
    us.push_back({-1, 1, dk});
    us.push_back({1, -1, dk});
  }
  return us;
}

ImagQuadInt canonical_associate(const ImagQuadInt& q) {
  ImagQuadInt best = q;
  bool first = true;
  for (const ImagQuadInt& u : units(q.dk)) {
    const ImagQuadInt cand = q * u;
    if (first || cand.m > best.m || (cand.m == best.m && cand.n > best.n)) {
      best = cand;
      first = false;
    }
  }
  return best;
}

bool exact_divide(const ImagQuadInt& q, const ImagQuadInt& d, ImagQuadInt* out) {
  // q / d = q * conj(d) / N(d); exact iff both coordinates divide.
  const std::int64_t nd = d.norm();
  if (nd == 0) return false;
  const ImagQuadInt num = q * d.conj();
  if (num.m % nd != 0 || num.n % nd != 0) return false;
  *out = {num.m / nd, num.n / nd, q.dk};
  return true;
}

std::int64_t phi_summatory(std::int64_t n) {
  require(n >= 1, "phi_summatory needs n >= 1");
  if (n > 200000000) throw CapacityError("phi sieve bound too large");
  std::vector<std::int64_t> phi(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i) phi[static_cast<std::size_t>(i)] = i;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (phi[static_cast<std::size_t>(p)] == p) {  // prime
      for (std::int64_t k = p; k <= n; k += p)
        phi[static_cast<std::size_t>(k)] -= phi[static_cast<std::size_t>(k)] / p;
    }
  }
  std::int64_t sum = 0;
  for (std::int64_t i = 1; i <= n; ++i) sum += phi[static_cast<std::size_t>(i)];
  return sum;
}

std::int64_t mertens_count(double s) {
  require(s >= 0, "mertens_count needs s >= 0");
  const auto n = static_cast<std::int64_t>(std::floor(std::exp(s / 2) + 1e-9));
  return n >= 1 ? phi_summatory(n) : 0;
}

// --------------------------------------------------------------- phi_k

namespace {

// Splitting of the rational prime p: +1 split, -1 inert, 0 ramified.
int splitting(std::int64_t dk, std::int64_t p) {
  return consts::kronecker_symbol(dk, p);
}

// A prime element of norm p for a split or ramified rational prime p.
ImagQuadInt prime_above(std::int64_t dk, std::int64_t p) {
  std::int64_t t, f;
  norm_form(dk, &t, &f);
  const std::int64_t bound = static_cast<std::int64_t>(
      std::ceil(std::sqrt(static_cast<double>(p) / static_cast<double>(f)))) + 1;
  for (std::int64_t n = 0; n <= bound; ++n) {
    // m^2 + t m n + f n^2 = p as a quadratic in m.
    const std::int64_t disc = t * t * n * n - 4 * (f * n * n - p);
    if (disc < 0) continue;
    const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(disc))));
    for (std::int64_t rr : {r - 1, r, r + 1}) {
      if (rr < 0 || rr * rr != disc) continue;
      for (std::int64_t sgn : {1, -1}) {
        const std::int64_t num = -t * n + sgn * rr;
        if (num % 2 != 0) continue;
        const ImagQuadInt cand{num / 2, n, dk};
        if (cand.norm() == p) return cand;
      }
    }
  }
  throw std::runtime_error("no prime element found above a split prime");
}

struct SmallestFactorSieve {
  std::vector<std::int32_t> spf;
  explicit SmallestFactorSieve(std::int64_t n) : spf(static_cast<std::size_t>(n + 1), 0) {
    for (std::int64_t i = 2; i * i <= n; ++i)
      if (spf[static_cast<std::size_t>(i)] == 0)
        for (std::int64_t j = i * i; j <= n; j += i)
          if (spf[static_cast<std::size_t>(j)] == 0)
            spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
  }
  std::int64_t smallest(std::int64_t n) const {
    const auto s = spf[static_cast<std::size_t>(n)];
    return s == 0 ? n : s;
  }
};

// phi_k with a shared prime-element cache and a norm factorization oracle.
std::int64_t phi_k_impl(const ImagQuadInt& q,
                        const std::vector<std::pair<std::int64_t, int>>& norm_factors,
                        std::map<std::int64_t, ImagQuadInt>* prime_cache) {
  std::int64_t phi = 1;
  for (const auto& [p, e] : norm_factors) {
    const int split = splitting(q.dk, p);
    if (split == -1) {
      // Inert: p | q exactly e/2 times, each prime has norm p^2.
      const int v = e / 2;
      if (v >= 1) {
        std::int64_t pw = 1;
        for (int i = 0; i < 2 * (v - 1); ++i) pw *= p;
        phi *= pw * (p * p - 1);
      }
      continue;
    }
    ImagQuadInt pi;
    auto it = prime_cache->find(p);
    if (it != prime_cache->end()) {
      pi = it->second;
      pi.dk = q.dk;
    } else {
      pi = prime_above(q.dk, p);
      prime_cache->emplace(p, pi);
    }
    if (split == 0) {
      // Ramified: (p) = pi^2, v_pi(q) = e.
      std::int64_t pw = 1;
      for (int i = 0; i < e - 1; ++i) pw *= p;
      phi *= pw * (p - 1);
      continue;
    }
    // Split: find the multiplicity of pi by exact division; conj gets the rest.
    ImagQuadInt rest = q;
    int va = 0;
    ImagQuadInt tmp;
    while (va < e && exact_divide(rest, pi, &tmp)) {
      rest = tmp;
      ++va;
    }
    const int vb = e - va;
    auto phi_pe = [&](int v) {
      if (v == 0) return static_cast<std::int64_t>(1);
      std::int64_t pw = 1;
      for (int i = 0; i < v - 1; ++i) pw *= p;
      return pw * (p - 1);
    };
    phi *= phi_pe(va) * phi_pe(vb);
  }
  return phi;
}

std::vector<std::pair<std::int64_t, int>> factor_with_sieve(
    std::int64_t n, const SmallestFactorSieve& sieve) {
  std::vector<std::pair<std::int64_t, int>> fs;
  while (n > 1) {
    const std::int64_t p = sieve.smallest(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    fs.emplace_back(p, e);
  }
  return fs;
}

}  // namespace

std::int64_t phi_k(const ImagQuadInt& q) {
  require(class_number_one(q.dk), "phi_k supports class number one fields only");
  require(!q.is_zero(), "phi_k needs q != 0");
  const std::int64_t n = q.norm();
  SmallestFactorSieve sieve(n);
  std::map<std::int64_t, ImagQuadInt> cache;
  return phi_k_impl(q, factor_with_sieve(n, sieve), &cache);
}

std::vector<std::int64_t> bianchi_cusp_counts(std::int64_t dk,
                                              const std::vector<double>& s) {
  require(class_number_one(dk), "supported discriminants: -3, -4, -7, -8, -11");
  for (double v : s) require(v >= 0, "distances must be nonnegative");
  double smax = 0;
  for (double v : s) smax = std::max(smax, v);
  const auto nmax = static_cast<std::int64_t>(std::floor(std::exp(smax) + 1e-9));
  if (nmax > 100000000) throw CapacityError("bianchi norm bound too large");

  // Accumulate sum(phi_k) per norm value over one canonical-associate sweep.
  std::vector<std::int64_t> by_norm(static_cast<std::size_t>(nmax + 1), 0);
  SmallestFactorSieve sieve(std::max<std::int64_t>(nmax, 2));
  std::map<std::int64_t, ImagQuadInt> cache;
  std::int64_t t, f;
  norm_form(dk, &t, &f);
  const auto mbound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(nmax))) + 2;
  const auto nbound = static_cast<std::int64_t>(
      std::sqrt(static_cast<double>(nmax) / static_cast<double>(f))) + 2;
  for (std::int64_t n = -nbound; n <= nbound; ++n) {
    for (std::int64_t m = -mbound - std::llabs(t * n); m <= mbound + std::llabs(t * n); ++m) {
      const ImagQuadInt q{m, n, dk};
      if (q.is_zero()) continue;
      const std::int64_t norm = q.norm();
      if (norm > nmax) continue;
      if (!(canonical_associate(q) == q)) continue;
      by_norm[static_cast<std::size_t>(norm)] +=
          phi_k_impl(q, factor_with_sieve(norm, sieve), &cache);
    }
  }
  std::vector<std::int64_t> prefix(by_norm.size(), 0);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < by_norm.size(); ++i) {
    acc += by_norm[i];
    prefix[i] = acc;
  }
  std::vector<std::int64_t> out;
  out.reserve(s.size());
  for (double v : s) {
    const auto cutoff = static_cast<std::int64_t>(std::floor(std::exp(v) + 1e-9));
    out.push_back(prefix[static_cast<std::size_t>(std::min(cutoff, nmax))]);
  }
  return out;
}

std::int64_t bianchi_cusp_count(std::int64_t dk, double s) {
  return bianchi_cusp_counts(dk, {s})[0];
}

report::CountReport mertens_report(double smax, int steps) {
  require(steps >= 1 && smax > 0, "need smax > 0 and steps >= 1");
  report::CountReport rep;
  rep.experiment = "cusp-mertens";
  const double constant = consts::special_constant("mertens", {});
  for (int i = 1; i <= steps; ++i) {
    const double s = smax * i / steps;
    report::Row row;
    row.s = s;
    row.count = mertens_count(s);
    row.prediction = constant * std::exp(s);
    row.ratio = static_cast<double>(row.count) / row.prediction;
    rep.rows.push_back(row);
  }
  rep.fit = report::fit_constant(rep.rows, 1.0);
  return rep;
}

report::CountReport bianchi_report(std::int64_t dk, double smax, int steps) {
  require(steps >= 1 && smax > 0, "need smax > 0 and steps >= 1");
  report::CountReport rep;
  rep.experiment = "cusp-bianchi";
  rep.params["dk"] = std::to_string(dk);
  const double constant = consts::special_constant(
      "cosentino_refined", {{"dk", static_cast<double>(dk)}});
  std::vector<double> grid;
  for (int i = 1; i <= steps; ++i) grid.push_back(smax * i / steps);
  const std::vector<std::int64_t> counts = bianchi_cusp_counts(dk, grid);
  for (int i = 0; i < steps; ++i) {
    report::Row row;
    row.s = grid[static_cast<std::size_t>(i)];
    row.count = counts[static_cast<std::size_t>(i)];
    row.prediction = constant * std::exp(2 * row.s);
    row.ratio = static_cast<double>(row.count) / row.prediction;
    rep.rows.push_back(row);
  }
  rep.fit = report::fit_constant(rep.rows, 2.0);
  return rep;
}

}  // namespace ortho::cusps
