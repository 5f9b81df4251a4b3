#include "decharge/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "decharge/csv.hpp"
#include "decharge/errors.hpp"
#include "decharge/scenario_io.hpp"
#include "decharge/station_sim.hpp"

namespace decharge {

namespace {

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// Returns false when a pivot falls below `rel_tol` times the largest
// diagonal magnitude of A.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x, double rel_tol) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i]));
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) <= rel_tol * scale) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

double DemandPredictor::predict(std::span<const double> recent) const {
  double y = intercept;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (i < recent.size()) y += coefficients[i] * recent[recent.size() - 1 - i];
  }
  return std::max(y, 0.0);
}

DemandPredictor fit_predictor(const std::vector<std::vector<double>>& history, int lags) {
  if (lags < 1) throw ValidationError("fit_predictor: lags must be >= 1");
  if (history.size() < 2) throw ValidationError("fit_predictor: need at least two days");
  const auto l = static_cast<std::size_t>(lags);
  for (const auto& day : history) {
    if (day.size() < l + 1) {
      throw ValidationError("fit_predictor: every day needs at least lags + 1 windows");
    }
  }

  // Design rows [1, n_t, n_{t-1}, ..., n_{t-lags+1}] with target n_{t+1}.
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  for (const auto& day : history) {
    for (std::size_t t = l - 1; t + 1 < day.size(); ++t) {
      std::vector<double> row{1.0};
      for (std::size_t i = 0; i < l; ++i) row.push_back(day[t - i]);
      rows.push_back(std::move(row));
      targets.push_back(day[t + 1]);
    }
  }

  const std::size_t p = l + 1;
  std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      xty[i] += rows[r][i] * targets[r];
      for (std::size_t j = 0; j < p; ++j) xtx[i][j] += rows[r][i] * rows[r][j];
    }
  }

  DemandPredictor model;
  model.lags = lags;
  model.samples = rows.size();
  std::vector<double> beta;
  if (solve_dense(xtx, xty, beta, 1e-10)) {
    model.intercept = beta[0];
    model.coefficients.assign(beta.begin() + 1, beta.end());
  } else {
    double mean = 0.0;
    for (double y : targets) mean += y;
    model.intercept = mean / static_cast<double>(targets.size());
    model.coefficients.assign(l, 0.0);
    model.fallback_to_mean = true;
  }

  double ss = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double y = model.intercept;
    for (std::size_t i = 0; i < l; ++i) y += model.coefficients[i] * rows[r][i + 1];
    ss += (targets[r] - y) * (targets[r] - y);
  }
  model.residual_rms = std::sqrt(ss / static_cast<double>(rows.size()));
  return model;
}

double demand_growth(double current_count, double predicted_next) {
  if (!(current_count > 0.0)) return 0.0;
  return std::clamp(predicted_next / current_count - 1.0, 0.0, 1.0);
}

double recommend_beta(int available_slots, int window_count, double growth, double gamma) {
  if (window_count < 1) throw std::invalid_argument("recommend_beta: window count must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("recommend_beta: gamma must be > 0");
  const double raw = gamma * static_cast<double>(available_slots) /
                     (static_cast<double>(window_count) * (1.0 + growth));
  return std::clamp(raw, 0.0, 1.0);
}

double recommend_beta(const ChargingRequest& request, std::span<const ChargingStation> stations,
                      int window_count, double growth, double gamma) {
  return recommend_beta(available_slots_in_range(stations, request), window_count, growth, gamma);
}

void write_predictor(std::ostream& out, const DemandPredictor& p) {
  out << "# decharge demand predictor v1\n";
  out << "lags = " << p.lags << '\n';
  out << "intercept = " << format_number(p.intercept) << '\n';
  out << "coefficients = ";
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
    if (i) out << ';';
    out << format_number(p.coefficients[i]);
  }
  out << '\n';
  out << "residual_rms = " << format_number(p.residual_rms) << '\n';
  out << "fallback = " << (p.fallback_to_mean ? 1 : 0) << '\n';
  out << "samples = " << p.samples << '\n';
}

DemandPredictor read_predictor(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = csv::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    kv[std::string(csv::trim(text.substr(0, eq)))] = std::string(csv::trim(text.substr(eq + 1)));
  }
  auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(std::string("predictor: missing key '") + key + "'");
    return it->second;
  };
  DemandPredictor p;
  p.lags = static_cast<int>(csv::to_int(need("lags"), 0, "lags"));
  p.intercept = csv::to_double(need("intercept"), 0, "intercept");
  std::string_view coefs = need("coefficients");
  while (!coefs.empty()) {
    const auto sep = coefs.find(';');
    p.coefficients.push_back(csv::to_double(coefs.substr(0, sep), 0, "coefficients"));
    if (sep == std::string_view::npos) break;
    coefs.remove_prefix(sep + 1);
  }
  if (p.lags < 1 || p.coefficients.size() != static_cast<std::size_t>(p.lags)) {
    throw ValidationError("predictor: coefficient count must equal lags");
  }
  if (kv.count("residual_rms")) p.residual_rms = csv::to_double(kv["residual_rms"], 0, "residual_rms");
  if (kv.count("fallback")) p.fallback_to_mean = kv["fallback"] == "1";
  if (kv.count("samples")) p.samples = static_cast<std::size_t>(csv::to_int(kv["samples"], 0, "samples"));
  return p;
}

}  // namespace decharge
