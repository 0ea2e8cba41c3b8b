#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Closed-form constants and measure masses of the counting asymptotics,
// plus the zeta/L-series evaluations they need.
namespace ortho::consts {

// Vol(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2), by the exact recurrence
// Vol(S^m) = 2 pi Vol(S^{m-2}) / (m-1).
double sphere_vol(int m);

// Total mass of the Bowen-Margulis measure of a finite volume hyperbolic
// n-manifold under the spherical density: 2^{n-1} Vol(S^{n-1}) Vol(M).
double bm_mass(int n, double vol_m);

enum class SkinningKind { point, cusp, geodesic };

// Total skinning mass: point -> Vol(S^{n-1}); cusp neighbourhood of volume V
// -> 2^{n-1}(n-1)V; totally geodesic k-submanifold of volume V
// -> Vol(S^{n-k-1}) V.
double skinning_mass(SkinningKind kind, int n, int k, double vol);

// Leading coefficient of the master asymptotic, sigma- sigma+ / (delta bm).
double master_constant(double sigma_minus, double sigma_plus, double delta,
                       double bm);

// Named closed-form constants; see special_constant_names() for the table and
// each entry's parameters.
double special_constant(const std::string& name,
                        const std::map<std::string, double>& params);

std::vector<std::string> special_constant_names();

// zeta(2), zeta(3), and Dedekind zeta_K(2) for the imaginary quadratic field
// of fundamental discriminant dk via zeta(2) L(2, chi_dk).
double zeta2();
double zeta3();
double dedekind_zeta2(std::int64_t dk);

// L(2, chi_d) by the character series with a tail bound below 1e-10.
double l_function2(std::int64_t d);

// Kronecker symbol (d|n) for the field characters used here.
int kronecker_symbol(std::int64_t d, std::int64_t n);

// Covolume of the Bianchi group of discriminant dk: |dk|^{3/2} zeta_K(2) / (4 pi^2).
double humbert_volume(std::int64_t dk);

// The {1,2,3,6}-valued local factor of the Gaussian-integer Hermitian-form
// asymptotic, from (a, c, Delta) of an integral form over Q(i).
int iota(std::int64_t a, std::int64_t c, std::int64_t delta);

// Number of roots of unity in the imaginary quadratic field of discriminant dk.
int unit_count(std::int64_t dk);

bool is_fundamental_discriminant(std::int64_t dk);

}  // namespace ortho::consts
