#include "spraylab/sampling.hpp"

#include <cmath>

namespace spraylab {

Mat random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  // Composing with an independent reflection keeps the distribution Haar.
  if (std::bernoulli_distribution(0.5)(rng)) q.row(0) *= -1.0;
  return q;
}

Mat random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_orthogonal(n, rng);
}

namespace {

Vec random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

double angle_between(const Vec& a, const Vec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = std::clamp(std::abs(a.dot(b)) / (na * nb), 0.0, 1.0);
  return std::acos(c);
}

}  // namespace

std::vector<PointPair> sample_pairs(const SamplePlan& plan,
                                    const std::function<bool(const PointPair&)>& accept) {
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(plan.y_scale_lo, plan.y_scale_hi);
  std::vector<PointPair> out;
  out.reserve(plan.count);
  const long max_attempts = 10000L * std::max(plan.count, 1) + 100000L;
  long attempts = 0;
  while (static_cast<int>(out.size()) < plan.count) {
    if (++attempts > max_attempts) {
      throw Error(ErrorCode::DomainExit, "could not draw enough sample pairs inside the domain");
    }
    Vec x(plan.dim);
    for (int i = 0; i < plan.dim; ++i) x(i) = cube(rng);
    if (x.squaredNorm() >= 1.0) continue;
    x *= plan.radius;
    Vec y = random_unit(plan.dim, rng) * scale(rng);
    if (angle_between(x, y) < plan.min_angle) continue;
    PointPair pair{x, y};
    if (accept && !accept(pair)) continue;
    out.push_back(std::move(pair));
  }
  return out;
}

Vec random_orthogonal_direction(const Vec& y, std::mt19937_64& rng) {
  const Vec yh = y.normalized();
  for (;;) {
    Vec u = random_unit(static_cast<int>(y.size()), rng);
    u -= u.dot(yh) * yh;
    if (u.norm() > 1e-3) return u.normalized();
  }
}

}  // namespace spraylab
