#include "qce/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qce {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": length mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive and finite");
}

// Exponents -beta*E_n shifted so the largest is 0, plus ln of their exp-sum.
struct ShiftedExponents {
  std::vector<double> shifted;
  double shift;    // max_n(-beta E_n)
  double log_sum;  // ln sum_n exp(shifted_n) >= 0
};

ShiftedExponents shifted_exponents(std::span<const double> levels, double beta) {
  if (levels.empty()) throw std::invalid_argument("empty level table");
  require_beta(beta);
  ShiftedExponents out;
  out.shifted.resize(levels.size());
  out.shift = -beta * levels[0];
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (!std::isfinite(levels[n])) throw std::invalid_argument("non-finite energy level");
    out.shift = std::max(out.shift, -beta * levels[n]);
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    out.shifted[n] = -beta * levels[n] - out.shift;
    sum += std::exp(out.shifted[n]);
  }
  out.log_sum = std::log(sum);
  return out;
}

}  // namespace

PopulationVector::PopulationVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("PopulationVector: empty");
  double sum = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("PopulationVector: entries must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("PopulationVector: entries sum to " + std::to_string(sum) + ", not 1");
  }
}

double log_partition(std::span<const double> levels, double beta) {
  const auto s = shifted_exponents(levels, beta);
  return s.shift + s.log_sum;
}

PopulationVector boltzmann_populations(std::span<const double> levels, double beta) {
  const auto s = shifted_exponents(levels, beta);
  std::vector<double> p(levels.size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::exp(s.shifted[n] - s.log_sum);
  return PopulationVector(std::move(p));
}

double mean_energy(std::span<const double> levels, const PopulationVector& populations) {
  return weighted_mean(populations, levels);
}

double gibbs_entropy(const PopulationVector& populations) {
  double s = 0.0;
  for (double p : populations.values()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double weighted_mean(const PopulationVector& populations, std::span<const double> observable) {
  require_same_size(populations.size(), observable.size(), "weighted_mean");
  double m = 0.0;
  for (std::size_t n = 0; n < observable.size(); ++n) m += populations[n] * observable[n];
  return m;
}

double inner_product(const PopulationVector& populations, std::span<const double> o1, std::span<const double> o2) {
  require_same_size(populations.size(), o1.size(), "inner_product");
  require_same_size(populations.size(), o2.size(), "inner_product");
  const double m1 = weighted_mean(populations, o1);
  const double m2 = weighted_mean(populations, o2);
  double c = 0.0;
  for (std::size_t n = 0; n < o1.size(); ++n) c += populations[n] * (o1[n] - m1) * (o2[n] - m2);
  return c;
}

double projected_variance(const PopulationVector& populations, std::span<const double> f, std::span<const double> g) {
  require_same_size(populations.size(), f.size(), "projected_variance");
  require_same_size(populations.size(), g.size(), "projected_variance");
  const double ff = inner_product(populations, f, f);
  if (!(ff > 0.0)) throw std::invalid_argument("projected_variance: <f|f> vanishes");
  if (f.size() < 3) return 0.0;  // two support points: g is always affine in f

  // pivot on the most populated level and the level that best resolves f
  // against it; ties resolved towards the lower index
  std::size_t i0 = 0;
  for (std::size_t n = 1; n < f.size(); ++n) {
    if (populations[n] > populations[i0]) i0 = n;
  }
  std::size_t i1 = i0;
  double best = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double weight = populations[n] * (f[n] - f[i0]) * (f[n] - f[i0]);
    if (n != i0 && weight > best) {
      best = weight;
      i1 = n;
    }
  }

  std::vector<double> residual(g.begin(), g.end());
  if (i1 != i0) {
    const double slope = (g[i1] - g[i0]) / (f[i1] - f[i0]);
    for (std::size_t n = 0; n < residual.size(); ++n) residual[n] = (g[n] - g[i0]) - slope * (f[n] - f[i0]);
    residual[i0] = 0.0;
    residual[i1] = 0.0;
  }
  // one regression step removes what the pivot slope left along f
  const double refine = inner_product(populations, f, residual) / ff;
  for (std::size_t n = 0; n < residual.size(); ++n) residual[n] -= refine * (f[n] - f[i0]);
  const double hh = inner_product(populations, residual, residual);
  const double fh = inner_product(populations, f, residual);
  return std::max(0.0, hh - fh * fh / ff);
}

namespace {

// (1 + u) ln(1 + u) - u, by its series sum_{k>=2} (-u)^k / (k (k - 1)) near 0.
double excess_log(double u) {
  if (std::abs(u) >= 0.25) return (1.0 + u) * std::log1p(u) - u;
  double power = u * u;
  double sum = 0.0;
  for (int k = 2; k < 64; ++k) {
    const double term = power / (k * (k - 1.0));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    power *= -u;
  }
  return sum;
}

}  // namespace

double total_entropy_production(const PopulationVector& pre, const PopulationVector& eq) {
  require_same_size(pre.size(), eq.size(), "total_entropy_production");
  // q * (r ln r - r + 1) with r = p / q. The sums of the -p + q parts cancel by
  // normalization, and each summand is >= 0.
  double total = 0.0;
  for (std::size_t n = 0; n < pre.size(); ++n) {
    const double p = pre[n];
    const double q = eq[n];
    if (p == 0.0) {
      total += q;
    } else if (q == 0.0) {
      return std::numeric_limits<double>::infinity();
    } else {
      total += q * excess_log((p - q) / q);
    }
  }
  return total;
}

double entropy_production_quadratic(std::span<const double> delta_p, const PopulationVector& eq) {
  require_same_size(delta_p.size(), eq.size(), "entropy_production_quadratic");
  double sum = 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n < delta_p.size(); ++n) {
    if (eq[n] == 0.0) throw std::invalid_argument("entropy_production_quadratic: zero equilibrium population");
    sum += delta_p[n];
    total += delta_p[n] * delta_p[n] / eq[n];
  }
  if (std::abs(sum) > 1e-12) throw std::invalid_argument("entropy_production_quadratic: deviations must sum to 0");
  return 0.5 * total;
}

ThermalState equilibrium_state(std::vector<double> levels, double lambda, double beta) {
  const auto s = shifted_exponents(levels, beta);
  std::vector<double> p(levels.size());
  double entropy = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    p[n] = std::exp(s.shifted[n] - s.log_sum);
    // -ln p_n = -shifted_n + log_sum, both parts >= 0
    entropy += p[n] * (s.log_sum - s.shifted[n]);
  }
  PopulationVector populations(std::move(p));
  const double energy = mean_energy(levels, populations);
  return ThermalState{lambda, beta, std::move(levels), std::move(populations), s.shift + s.log_sum, energy, entropy};
}

}  // namespace qce
