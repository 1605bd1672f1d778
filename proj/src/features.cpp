#include "rfsgd/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rfsgd/parallel.hpp"
#include "rfsgd/rng.hpp"

namespace rfsgd {

FeatureSet::FeatureSet(int dim, int pair_count, std::vector<double> frequencies)
    : dim_(dim),
      pair_count_(pair_count),
      inv_sqrt_p_(1.0 / std::sqrt(static_cast<double>(pair_count))),
      frequencies_(std::move(frequencies)) {}

FeatureSet FeatureSet::sample(const GaussianKernel& kernel, int feature_count,
                              std::uint64_t seed) {
  if (feature_count <= 0 || feature_count % 2 != 0) {
    throw std::invalid_argument("FeatureSet::sample: feature count must be even and positive");
  }
  const int p = feature_count / 2;
  std::vector<double> freqs(static_cast<std::size_t>(p) * kernel.dim);
  auto rng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / kernel.sigma);
  for (double& f : freqs) f = normal(rng);
  return FeatureSet(kernel.dim, p, std::move(freqs));
}

FeatureSet FeatureSet::from_frequencies(int dim, std::vector<double> frequencies) {
  if (dim <= 0) throw std::invalid_argument("FeatureSet::from_frequencies: dim must be positive");
  if (frequencies.empty() || frequencies.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("FeatureSet::from_frequencies: frequency array not a multiple of dim");
  }
  const int p = static_cast<int>(frequencies.size() / static_cast<std::size_t>(dim));
  return FeatureSet(dim, p, std::move(frequencies));
}

void FeatureSet::feature_map(std::span<const double> x, std::span<double> out) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("feature_map: point dimension mismatch");
  }
  if (out.size() != static_cast<std::size_t>(feature_count())) {
    throw std::invalid_argument("feature_map: output span has wrong length");
  }
  const double* w = frequencies_.data();
  for (int i = 0; i < pair_count_; ++i) {
    double a = 0.0;
    for (int j = 0; j < dim_; ++j) a += w[i * dim_ + j] * x[j];
    out[2 * i] = std::cos(a) * inv_sqrt_p_;
    out[2 * i + 1] = std::sin(a) * inv_sqrt_p_;
  }
}

std::vector<double> FeatureSet::feature_map(std::span<const double> x) const {
  std::vector<double> out(static_cast<std::size_t>(feature_count()));
  feature_map(x, out);
  return out;
}

double FeatureSet::kernel_approx(std::span<const double> x,
                                 std::span<const double> y) const {
  if (x.size() != static_cast<std::size_t>(dim_) || y.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("kernel_approx: point dimension mismatch");
  }
  const double* w = frequencies_.data();
  double sum = 0.0;
  for (int i = 0; i < pair_count_; ++i) {
    double a = 0.0;
    for (int j = 0; j < dim_; ++j) a += w[i * dim_ + j] * (x[j] - y[j]);
    sum += std::cos(a);
  }
  return sum / static_cast<double>(pair_count_);
}

void FeatureSet::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("FeatureSet::save_csv: cannot open " + path);
  out << pair_count_ << "," << dim_ << "\n";
  char buf[32];
  for (int i = 0; i < pair_count_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", frequencies_[i * dim_ + j]);
      out << buf << (j + 1 == dim_ ? '\n' : ',');
    }
  }
  if (!out) throw std::runtime_error("FeatureSet::save_csv: write failed for " + path);
}

FeatureSet FeatureSet::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("FeatureSet::load_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("FeatureSet::load_csv: empty file " + path);
  int p = 0;
  int d = 0;
  if (std::sscanf(line.c_str(), "%d,%d", &p, &d) != 2 || p <= 0 || d <= 0) {
    throw std::runtime_error("FeatureSet::load_csv: malformed header in " + path);
  }
  std::vector<double> freqs;
  freqs.reserve(static_cast<std::size_t>(p) * d);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) freqs.push_back(std::stod(cell));
  }
  if (freqs.size() != static_cast<std::size_t>(p) * d) {
    throw std::runtime_error("FeatureSet::load_csv: frequency count does not match header in " + path);
  }
  return FeatureSet(d, p, std::move(freqs));
}

namespace {

template <class Loop>
void feature_matrix_impl(Loop&& loop, const FeatureSet& fs,
                         std::span<const double> points, long n,
                         std::span<double> out) {
  const int d = fs.dim();
  const int m = fs.feature_count();
  if (points.size() != static_cast<std::size_t>(n) * d) {
    throw std::invalid_argument("feature_matrix: point array has wrong length");
  }
  if (out.size() != static_cast<std::size_t>(n) * m) {
    throw std::invalid_argument("feature_matrix: output array has wrong length");
  }
  loop(n, [&](std::ptrdiff_t i) {
    fs.feature_map(points.subspan(static_cast<std::size_t>(i) * d, d),
                   out.subspan(static_cast<std::size_t>(i) * m, m));
  });
}

}  // namespace

void feature_matrix(const FeatureSet& fs, std::span<const double> points, long n,
                    std::span<double> out) {
  feature_matrix_impl([](std::ptrdiff_t k, auto&& body) { parallel_for(k, body); },
                      fs, points, n, out);
}

void feature_matrix_serial(const FeatureSet& fs, std::span<const double> points,
                           long n, std::span<double> out) {
  feature_matrix_impl([](std::ptrdiff_t k, auto&& body) { serial_for(k, body); },
                      fs, points, n, out);
}

}  // namespace rfsgd
