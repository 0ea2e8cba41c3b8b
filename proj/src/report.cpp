#include "ortho/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace ortho::report {

Fit fit_constant(const std::vector<Row>& rows, double delta) {
  std::vector<Row> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const Row& a, const Row& b) { return a.s < b.s; });
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const Row& a, const Row& b) { return a.s == b.s; }),
               sorted.end());
  if (sorted.empty()) throw std::invalid_argument("fit_constant: no rows");
  const std::size_t window = (sorted.size() + 2) / 3;
  double log_sum = 0;
  std::vector<double> vals;
  for (std::size_t i = sorted.size() - window; i < sorted.size(); ++i) {
    const Row& r = sorted[i];
    if (r.count <= 0)
      throw std::invalid_argument("fit_constant: nonpositive count in window");
    const double v = static_cast<double>(r.count) * std::exp(-delta * r.s);
    vals.push_back(v);
    log_sum += std::log(v);
  }
  Fit f;
  f.window = static_cast<int>(window);
  f.constant = std::exp(log_sum / static_cast<double>(window));
  for (double v : vals)
    f.drift = std::max(f.drift, std::abs(v / f.constant - 1));
  return f;
}

double fit_exponent(const std::vector<double>& s,
                    const std::vector<double>& count) {
  if (s.size() != count.size() || s.size() < 2)
    throw std::invalid_argument("fit_exponent: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = std::log(s[i]), y = std::log(count[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double ks_uniform(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ks_uniform: no samples");
  std::sort(samples.begin(), samples.end());
  double d = 0;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    d = std::max(d, (static_cast<double>(i) + 1) / n - x);
    d = std::max(d, x - static_cast<double>(i) / n);
  }
  return d;
}

std::string format_double(double x) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

std::string emit_csv(const CountReport& r) {
  std::string out = "s,count,prediction,ratio\n";
  for (const Row& row : r.rows) {
    out += format_double(row.s);
    out += ',';
    out += std::to_string(row.count);
    out += ',';
    out += format_double(row.prediction);
    out += ',';
    out += format_double(row.ratio);
    out += '\n';
  }
  return out;
}

std::string emit_json(const CountReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["rows"] = nlohmann::ordered_json::array();
  for (const Row& row : r.rows) {
    nlohmann::ordered_json jr;
    jr["s"] = row.s;
    jr["count"] = row.count;
    jr["prediction"] = row.prediction;
    jr["ratio"] = row.ratio;
    j["rows"].push_back(jr);
  }
  j["fit"] = {{"constant", r.fit.constant}, {"drift", r.fit.drift}};
  return j.dump(2) + "\n";
}

}  // namespace ortho::report
