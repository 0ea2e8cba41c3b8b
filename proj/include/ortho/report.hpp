#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Shared experiment harness: asymptotic-constant fitting, uniformity
// statistics and CSV/JSON serialization of counting runs.
namespace ortho::report {

struct Row {
  double s = 0;
  std::int64_t count = 0;
  double prediction = 0;
  double ratio = 0;  // count / prediction
};

struct Fit {
  double constant = 0;
  int window = 0;   // number of trailing rows used
  double drift = 0; // max relative deviation inside the window
};

struct CountReport {
  std::string experiment;
  std::map<std::string, std::string> params;  // sorted, deterministic
  std::vector<Row> rows;                      // sorted by s
  Fit fit;
};

// Fits N(s) ~ constant * e^{delta s} by the geometric mean of count*e^{-delta s}
// over the top third of the s-range (late-window averaging suits error terms
// of the form 1 + O(e^{-kappa s})).
Fit fit_constant(const std::vector<Row>& rows, double delta);

// Least-squares slope of ln(count) against ln(s); used where the growth is
// polynomial in the bound.
double fit_exponent(const std::vector<double>& s, const std::vector<double>& count);

// Kolmogorov-Smirnov statistic of samples in [0,1) against the uniform law.
double ks_uniform(std::vector<double> samples);

// Deterministic, locale-independent serialization.
std::string emit_csv(const CountReport& r);
std::string emit_json(const CountReport& r);

std::string format_double(double x);

}  // namespace ortho::report
