#include "ortho/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ortho::consts {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double get(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  require(it != params.end(), "missing parameter: " + key);
  return it->second;
}

std::int64_t get_int(const std::map<std::string, double>& params,
                     const std::string& key) {
  const double v = get(params, key);
  const auto n = static_cast<std::int64_t>(std::llround(v));
  require(std::abs(v - static_cast<double>(n)) < 1e-9,
          "parameter must be an integer: " + key);
  return n;
}

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

double sphere_vol(int m) {
  require(m >= 0, "sphere_vol needs m >= 0");
  if (m == 0) return 2;
  if (m == 1) return 2 * kPi;
  return 2 * kPi * sphere_vol(m - 2) / (m - 1);
}

double bm_mass(int n, double vol_m) {
  require(n >= 2, "dimension must be at least 2");
  require(vol_m > 0, "volume must be positive");
  return pow2(n - 1) * sphere_vol(n - 1) * vol_m;
}

double skinning_mass(SkinningKind kind, int n, int k, double vol) {
  require(n >= 2, "dimension must be at least 2");
  switch (kind) {
    case SkinningKind::point:
      return sphere_vol(n - 1);
    case SkinningKind::cusp:
      require(vol > 0, "volume must be positive");
      return pow2(n - 1) * (n - 1) * vol;
    case SkinningKind::geodesic:
      require(1 <= k && k <= n - 1, "geodesic kind needs 1 <= k <= n-1");
      require(vol > 0, "volume must be positive");
      return sphere_vol(n - k - 1) * vol;
  }
  throw std::invalid_argument("unknown skinning kind");
}

double master_constant(double sigma_minus, double sigma_plus, double delta,
                       double bm) {
  require(sigma_minus > 0 && sigma_plus > 0 && delta > 0 && bm > 0,
          "master_constant needs positive inputs");
  return sigma_minus * sigma_plus / (delta * bm);
}

double zeta2() { return kPi * kPi / 6; }

double zeta3() {
  // Descending partial sum plus the Euler-Maclaurin tail at N.
  const int N = 100000;
  double s = 0;
  for (int n = N - 1; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * n * n);
  const double dN = N;
  s += 1 / (2 * dN * dN) + 1 / (2 * dN * dN * dN) +
       1 / (4 * dN * dN * dN * dN) - 1 / (12 * std::pow(dN, 6));
  return s;
}

int kronecker_symbol(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  while (n % 2 == 0) {
    n /= 2;
    const std::int64_t am = ((a % 8) + 8) % 8;
    if (am == 3 || am == 5) k = -k;
  }
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t nm = n % 8;
      if (nm == 3 || nm == 5) k = -k;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    a %= n;
  }
  return n == 1 ? k : 0;
}

double l_function2(std::int64_t d) {
  require(d != 0, "character modulus must be nonzero");
  const std::int64_t period = std::llabs(d);
  std::vector<int> chi(static_cast<std::size_t>(period));
  for (std::int64_t r = 0; r < period; ++r)
    chi[static_cast<std::size_t>(r)] = kronecker_symbol(d, r);
  // 2e6 terms summed downward; the alternating tail is below |d|/N^2.
  const std::int64_t N = 2000000;
  double s = 0;
  for (std::int64_t n = N; n >= 1; --n) {
    const int c = chi[static_cast<std::size_t>(n % period)];
    if (c != 0) s += c / (static_cast<double>(n) * static_cast<double>(n));
  }
  return s;
}

bool is_fundamental_discriminant(std::int64_t dk) {
  if (dk >= 0) return false;
  auto squarefree = [](std::int64_t n) {
    n = std::llabs(n);
    for (std::int64_t p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) return false;
    return true;
  };
  const std::int64_t m = ((dk % 4) + 4) % 4;
  if (m == 1) return squarefree(dk);
  if (m == 0) {
    const std::int64_t q = dk / 4;
    const std::int64_t qm = ((q % 4) + 4) % 4;
    return (qm == 2 || qm == 3) && squarefree(q);
  }
  return false;
}

double dedekind_zeta2(std::int64_t dk) {
  require(is_fundamental_discriminant(dk),
          "dk must be a negative fundamental discriminant");
  return zeta2() * l_function2(dk);
}

double humbert_volume(std::int64_t dk) {
  return std::pow(static_cast<double>(std::llabs(dk)), 1.5) *
         dedekind_zeta2(dk) / (4 * kPi * kPi);
}

int iota(std::int64_t a, std::int64_t c, std::int64_t delta) {
  auto mod = [](std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; };
  if (mod(delta, 4) == 0) return 2;
  if (mod(a, 2) == 0 && mod(c, 2) == 0) {
    if (mod(delta, 4) == 1) return 3;
    if (mod(delta, 4) == 2) return static_cast<int>(mod(delta, 8));
  }
  return 1;
}

int unit_count(std::int64_t dk) {
  if (dk == -3) return 6;
  if (dk == -4) return 4;
  return 2;
}

std::vector<std::string> special_constant_names() {
  return {"huber",          "margulis",     "herrmann",
          "parpau",         "bigeodesic",   "bicusp",
          "closed_geodesic_pair", "quadratic_form", "mertens",
          "cosentino",      "cosentino_refined", "hermitian",
          "hermitian_qi",   "hamiltonian_covolume", "hamiltonian"};
}

double special_constant(const std::string& name,
                        const std::map<std::string, double>& params) {
  if (name == "huber") {
    const double g = get(params, "g");
    require(g > 1, "huber needs genus g > 1");
    return 1 / (4 * (g - 1));
  }
  if (name == "margulis") {
    const int n = static_cast<int>(get_int(params, "n"));
    const double vol = get(params, "vol");
    return master_constant(skinning_mass(SkinningKind::point, n, 0, 0),
                           skinning_mass(SkinningKind::point, n, 0, 0), n - 1,
                           bm_mass(n, vol));
  }
  if (name == "herrmann") {
    const int n = static_cast<int>(get_int(params, "n"));
    const int k = static_cast<int>(get_int(params, "k"));
    return sphere_vol(n - k - 1) * get(params, "vol_c") /
           (pow2(n - 1) * (n - 1) * get(params, "vol"));
  }
  if (name == "parpau") {
    const int n = static_cast<int>(get_int(params, "n"));
    const int k = static_cast<int>(get_int(params, "k"));
    return sphere_vol(n - k - 1) * get(params, "vol_cusp") *
           get(params, "vol_c") / (sphere_vol(n - 1) * get(params, "vol"));
  }
  if (name == "bigeodesic") {
    const int n = static_cast<int>(get_int(params, "n"));
    const int km = static_cast<int>(get_int(params, "k_minus"));
    const int kp = static_cast<int>(get_int(params, "k_plus"));
    return sphere_vol(n - km - 1) * sphere_vol(n - kp - 1) *
           get(params, "vol_minus") * get(params, "vol_plus") /
           (pow2(n - 1) * (n - 1) * sphere_vol(n - 1) * get(params, "vol"));
  }
  if (name == "bicusp") {
    const int n = static_cast<int>(get_int(params, "n"));
    return pow2(n - 1) * (n - 1) * get(params, "vol_minus") *
           get(params, "vol_plus") / (sphere_vol(n - 1) * get(params, "vol"));
  }
  if (name == "closed_geodesic_pair") {
    const int n = static_cast<int>(get_int(params, "n"));
    return sphere_vol(n - 2) * sphere_vol(n - 2) * get(params, "len_minus") *
           get(params, "len_plus") /
           (pow2(n - 1) * (n - 1) * sphere_vol(n - 1) * get(params, "vol"));
  }
  if (name == "quadratic_form") {
    const double delta = get(params, "delta");
    require(delta > 0, "quadratic_form needs delta > 0");
    return 12 * get(params, "regulator") / (kPi * kPi * std::sqrt(delta));
  }
  if (name == "mertens") return 3 / (kPi * kPi);
  if (name == "cosentino") {
    const std::int64_t dk = get_int(params, "dk");
    require(dk != -3 && dk != -4, "cosentino excludes dk in {-3, -4}");
    return kPi / (std::sqrt(static_cast<double>(-dk)) * dedekind_zeta2(dk));
  }
  if (name == "cosentino_refined") {
    const std::int64_t dk = get_int(params, "dk");
    const double w = unit_count(dk);
    return kPi * w * w /
           (4 * std::sqrt(static_cast<double>(-dk)) * dedekind_zeta2(dk));
  }
  if (name == "hermitian") {
    const std::int64_t dk = get_int(params, "dk");
    const double delta = get(params, "delta");
    require(delta > 0, "hermitian needs delta > 0");
    return kPi * get(params, "covol") /
           (2 * static_cast<double>(-dk) * dedekind_zeta2(dk) * delta);
  }
  if (name == "hermitian_qi") {
    const std::int64_t delta = get_int(params, "delta");
    require(delta > 0, "hermitian_qi needs delta > 0");
    const std::int64_t io = params.count("iota")
                                ? get_int(params, "iota")
                                : iota(get_int(params, "a"),
                                       get_int(params, "c"), delta);
    double prod = 1;
    for (std::int64_t p : distinct_prime_factors(delta)) {
      if (p == 2) continue;
      prod *= 1 + kronecker_symbol(-1, p) / static_cast<double>(p);
    }
    return kPi * kPi * prod / (8 * static_cast<double>(io) * dedekind_zeta2(-4));
  }
  if (name == "hamiltonian_covolume") {
    const std::int64_t da = get_int(params, "da");
    require(da >= 2, "hamiltonian_covolume needs da >= 2");
    double prod = 1;
    for (std::int64_t p : distinct_prime_factors(da)) {
      prod *= static_cast<double>(p * p * p - 1) * static_cast<double>(p - 1);
    }
    return zeta3() * prod / 11520;
  }
  if (name == "hamiltonian") {
    const std::int64_t da = get_int(params, "da");
    const double delta = get(params, "delta");
    require(delta > 0, "hamiltonian needs delta > 0");
    double prod = 1;
    for (std::int64_t p : distinct_prime_factors(da)) {
      prod *= static_cast<double>(p * p * p - 1) *
              (1 - 1 / static_cast<double>(p));
    }
    return 540 * get(params, "ha") * get(params, "covol") /
           (kPi * kPi * zeta3() * delta * delta * prod);
  }
  throw std::invalid_argument("unknown constant: " + name);
}

}  // namespace ortho::consts
